// End-to-end acceptance checks for the mixed-datatype GEMM engine. Each
// criterion prints one PASS/FAIL line; the process exits nonzero if any
// fails. argv[1] names the CLI binary used by the benchmark smoke check.
#include "mdgemm/bench.hpp"
#include "mdgemm/case_label.hpp"
#include "mdgemm/dispatch.hpp"
#include "mdgemm/matrix.hpp"
#include "mdgemm/oracle.hpp"
#include "mdgemm/rng.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

using namespace mdgemm;

namespace {

struct CheckFailed {
    std::string msg;
};

void require(bool ok, const std::string& msg) {
    if (!ok)
        throw CheckFailed{msg};
}

const Scalar kOne = Scalar::real_value(1.0);
const Scalar kZero = Scalar::real_value(0.0);

// Deterministic little generator for shape/flag draws (operand values use
// the library Rng).
struct Draw {
    std::uint64_t s;
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    std::int64_t in(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next() %
                                              static_cast<std::uint64_t>(hi - lo + 1));
    }
    bool coin() { return (next() >> 33) & 1u; }
};

double oracle_violation(Scalar alpha, MatrixView a, MatrixView b, Scalar beta,
                        MatrixView c_before, MatrixView c_after, Precision comp,
                        std::int64_t k) {
    const CaseId id =
        classify_case(c_before.dtype.domain, a.dtype.domain, b.dtype.domain);
    Matrix want = oracle_gemm(alpha, a, b, beta, c_before, id, comp);
    ErrorBoundParams bp{k, eps_of(comp), eps_of(c_before.dtype.precision),
                        magnitude_matrix(alpha, a, b, beta, c_before, id)};
    Matrix tol = tolerance(bp);
    return max_violation(c_after, want.view(), tol.view());
}

bool all_finite(const MatrixView& v) {
    for (std::int64_t j = 0; j < v.n; ++j)
        for (std::int64_t i = 0; i < v.m; ++i) {
            const std::complex<double> x = load_elem(v, i, j);
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
                return false;
        }
    return true;
}

// ---- criterion bodies ----------------------------------------------------

void case_table_and_flops() {
    using enum Domain;
    require(classify_case(Real, Real, Real) == CaseId::C0, "rrr");
    require(classify_case(Real, Complex, Real) == CaseId::C1a, "rcr");
    require(classify_case(Real, Real, Complex) == CaseId::C1b, "rrc");
    require(classify_case(Complex, Real, Real) == CaseId::C1c, "crr");
    require(classify_case(Real, Complex, Complex) == CaseId::C2ab, "rcc");
    require(classify_case(Complex, Complex, Real) == CaseId::C2ac, "ccr");
    require(classify_case(Complex, Real, Complex) == CaseId::C2bc, "crc");
    require(classify_case(Complex, Complex, Complex) == CaseId::C3, "ccc");

    const std::int64_t m = 9, n = 11, k = 13;
    const std::uint64_t mnk = 9ull * 11 * 13;
    for (CaseId id : {CaseId::C0, CaseId::C1a, CaseId::C1b, CaseId::C1c})
        require(flops_of_case(id, m, n, k) == 2 * mnk, "2mnk cases");
    for (CaseId id : {CaseId::C2ab, CaseId::C2ac, CaseId::C2bc})
        require(flops_of_case(id, m, n, k) == 4 * mnk, "4mnk cases");
    require(flops_of_case(CaseId::C3, m, n, k) == 8 * mnk, "8mnk case");
}

void full_label_sweep() {
    for (const CaseLabel& label : CaseLabel::all()) {
        for (std::int64_t s : {7, 16, 17, 64}) {
            Rng root = Rng(42).split(label.str()).split(std::to_string(s));
            Matrix a = Matrix::make(label.a, s, s);
            Matrix b = Matrix::make(label.b, s, s);
            Matrix c = Matrix::make(label.c, s, s);
            fill_uniform(a.view(), root.split("a"));
            fill_uniform(b.view(), root.split("b"));
            fill_uniform(c.view(), root.split("c"));

            Matrix got = c;
            gemm(kOne, a.view(), b.view(), kOne,
                 got.view().with_comp_prec(label.comp));
            const double v =
                oracle_violation(kOne, a.view(), b.view(), kOne, c.view(),
                                 got.view(), label.comp, s);
            require(v <= 1.0, label.str() + " at size " + std::to_string(s) +
                                  ": violation " + std::to_string(v));
        }
    }
}

void storage_trans_sampling() {
    const std::vector<CaseLabel> labels = CaseLabel::all();
    const StorageKind kinds[] = {StorageKind::ColumnStored,
                                 StorageKind::RowStored,
                                 StorageKind::GeneralStored};
    Draw draw{0x9e3779b97f4a7c15ull};
    for (int t = 0; t < 20; ++t) {
        const CaseLabel label = labels[static_cast<std::size_t>(draw.in(0, 127))];
        std::int64_t m = draw.in(5, 33), n = draw.in(5, 33), k = draw.in(5, 33);
        while (m == n && n == k)
            n = draw.in(5, 33);
        const bool trans_a = draw.coin(), trans_b = draw.coin();
        const bool conj_a = label.a.domain == Domain::Complex && draw.coin();
        const bool conj_b = label.b.domain == Domain::Complex && draw.coin();
        const StorageKind ka = kinds[draw.in(0, 2)];
        const StorageKind kb = kinds[draw.in(0, 2)];
        const StorageKind kc = kinds[draw.in(0, 2)];
        const Scalar alpha = Scalar::real_value(draw.coin() ? 1.0 : 0.7);
        const double betas[] = {0.0, 1.0, 0.5};
        const Scalar beta = Scalar::real_value(betas[draw.in(0, 2)]);

        Rng root = Rng(4242).split(std::to_string(t));
        Matrix a_store = trans_a ? Matrix::make(label.a, k, m, ka)
                                 : Matrix::make(label.a, m, k, ka);
        Matrix b_store = trans_b ? Matrix::make(label.b, n, k, kb)
                                 : Matrix::make(label.b, k, n, kb);
        Matrix c = Matrix::make(label.c, m, n, kc);
        fill_uniform(a_store.view(), root.split("a"));
        fill_uniform(b_store.view(), root.split("b"));
        fill_uniform(c.view(), root.split("c"));

        MatrixView av = trans_a ? induced_transpose(a_store.view()) : a_store.view();
        MatrixView bv = trans_b ? induced_transpose(b_store.view()) : b_store.view();
        av = av.with_conj(conj_a);
        bv = bv.with_conj(conj_b);

        Matrix got = c;
        gemm(alpha, av, bv, beta, got.view().with_comp_prec(label.comp));
        const double v = oracle_violation(alpha, av, bv, beta, c.view(),
                                          got.view(), label.comp, k);
        require(v <= 1.0, "draw " + std::to_string(t) + " (" + label.str() +
                              "): violation " + std::to_string(v));
    }
}

void flop_accounting() {
    const std::int64_t s = 24; // multiple of every register tile in play
    for (const char* name : {"dddd", "dzdd", "ddzd", "zddd", "dzzd", "zzdd",
                             "zdzd", "zzzd"}) {
        const CaseLabel label = CaseLabel::parse(name);
        Rng root = Rng(7).split(name);
        Matrix a = Matrix::make(label.a, s, s);
        Matrix b = Matrix::make(label.b, s, s);
        Matrix c = Matrix::make(label.c, s, s);
        fill_uniform(a.view(), root.split("a"));
        fill_uniform(b.view(), root.split("b"));
        fill_uniform(c.view(), root.split("c"));

        FlopCounter fc;
        gemm(kOne, a.view(), b.view(), kOne, c.view(), Config::defaults(), &fc);
        const std::uint64_t want = flops_of_case(label.case_id(), s, s, s);
        require(fc.value() == want,
                std::string(name) + ": counted " + std::to_string(fc.value()) +
                    ", model says " + std::to_string(want));
    }
}

void poison_imaginary(const MatrixView& complex_view) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    MatrixView im = real_projection(complex_view, Part::Im);
    for (std::int64_t j = 0; j < im.n; ++j)
        for (std::int64_t i = 0; i < im.m; ++i)
            store_elem(im, i, j, {nan, 0.0});
}

void non_read_guarantees() {
    const std::int64_t s = 16;
    Rng root(11);

    // imaginary half of A is never read when only Re(A) participates
    {
        Matrix a = Matrix::make(dt_z, s, s);
        Matrix b = Matrix::make(dt_d, s, s);
        Matrix c = Matrix::make(dt_d, s, s);
        fill_uniform(a.view(), root.split("1a-a"));
        fill_uniform(b.view(), root.split("1a-b"));
        fill_uniform(c.view(), root.split("1a-c"));
        poison_imaginary(a.view());
        gemm(kOne, a.view(), b.view(), Scalar::real_value(0.5), c.view());
        require(all_finite(c.view()), "poisoned Im(A) leaked into the output");
    }
    // likewise Im(B)
    {
        Matrix a = Matrix::make(dt_d, s, s);
        Matrix b = Matrix::make(dt_z, s, s);
        Matrix c = Matrix::make(dt_d, s, s);
        fill_uniform(a.view(), root.split("1b-a"));
        fill_uniform(b.view(), root.split("1b-b"));
        fill_uniform(c.view(), root.split("1b-c"));
        poison_imaginary(b.view());
        gemm(kOne, a.view(), b.view(), Scalar::real_value(0.5), c.view());
        require(all_finite(c.view()), "poisoned Im(B) leaked into the output");
    }
    // a real-by-real update into complex C leaves Im(C) bitwise alone, with
    // and without the intermediate output buffer in play
    for (bool engage : {false, true}) {
        Config cfg;
        std::int64_t k = s;
        if (engage) {
            cfg.set("gemm.kc", "16");
            cfg.set("ctemp.enable", "on");
            k = 48; // several inner blocks over the strided real image
        }
        Matrix a = Matrix::make(dt_d, s, k);
        Matrix b = Matrix::make(dt_d, k, s);
        Matrix c = Matrix::make(dt_z, s, s);
        fill_uniform(a.view(), root.split("1c-a"));
        fill_uniform(b.view(), root.split("1c-b"));
        fill_uniform(c.view(), root.split("1c-c"));
        poison_imaginary(c.view());
        Matrix before = c;
        gemm(kOne, a.view(), b.view(), Scalar::real_value(0.7), c.view(), cfg);
        require(bitwise_equal(real_projection(c.view(), Part::Im),
                              real_projection(before.view(), Part::Im)),
                engage ? "Im(C) changed with the intermediate buffer engaged"
                       : "Im(C) changed");
        require(all_finite(real_projection(c.view(), Part::Re)),
                "Re(C) update lost finiteness");
    }
    // beta = 0 never reads C
    for (const char* name : {"dddd", "zzzd", "sssd"}) {
        const CaseLabel label = CaseLabel::parse(name);
        Matrix a = Matrix::make(label.a, s, s);
        Matrix b = Matrix::make(label.b, s, s);
        Matrix c = Matrix::make(label.c, s, s);
        fill_uniform(a.view(), root.split("b0-a"));
        fill_uniform(b.view(), root.split("b0-b"));
        c.fill_bytes(std::byte{0xff}); // all-ones payloads are NaNs
        gemm(kOne, a.view(), b.view(), kZero,
             c.view().with_comp_prec(label.comp));
        require(all_finite(c.view()),
                std::string(name) + ": beta = 0 read the poisoned C");
    }
}

void paired_kernel_equivalence() {
    const std::int64_t s = 17;
    for (const char* pref : {"column", "row"}) {
        Config cfg;
        cfg.set("ukr.preference", pref);
        for (Datatype dc : {dt_c, dt_z})
            for (Datatype da : {dt_c, dt_z})
                for (Datatype db : {dt_c, dt_z})
                    for (Precision comp : {Precision::Single, Precision::Double}) {
                        const CaseLabel label{dc, da, db, comp};
                        Rng root = Rng(21).split(label.str()).split(pref);
                        Matrix a = Matrix::make(da, s, s);
                        Matrix b = Matrix::make(db, s, s);
                        Matrix c = Matrix::make(dc, s, s);
                        fill_uniform(a.view(), root.split("a"));
                        fill_uniform(b.view(), root.split("b"));
                        fill_uniform(c.view(), root.split("c"));

                        Matrix got = c;
                        gemm(kOne, a.view(), b.view(), kOne,
                             got.view().with_comp_prec(comp), cfg);
                        const double v = oracle_violation(
                            kOne, a.view(), b.view(), kOne, c.view(),
                            got.view(), comp, s);
                        require(v <= 1.0, label.str() + " under " + pref +
                                              " preference: violation " +
                                              std::to_string(v));
                    }
    }
}

void determinism() {
    const std::int64_t s = 17;
    const Scalar alpha = Scalar::real_value(0.7);
    const Scalar beta = Scalar::real_value(0.7);
    struct Setting {
        const char* mc;
        const char* nc;
        const char* kc;
    } settings[] = {{"64", "512", "128"}, {"32", "128", "16"}};

    for (const char* name : {"dddd", "dzdd", "ddzd", "zddd", "dzzd", "zzdd",
                             "zdzd", "zzzd", "sssd", "zzzs", "zcsd", "cdcs"}) {
        const CaseLabel label = CaseLabel::parse(name);
        Rng root = Rng(31).split(name);
        Matrix a = Matrix::make(label.a, s, s);
        Matrix b = Matrix::make(label.b, s, s);
        Matrix c = Matrix::make(label.c, s, s);
        fill_uniform(a.view(), root.split("a"));
        fill_uniform(b.view(), root.split("b"));
        fill_uniform(c.view(), root.split("c"));

        Matrix reference;
        bool first = true;
        for (const Setting& st : settings)
            for (const char* threads : {"1", "2", "4"}) {
                Config cfg;
                cfg.set("gemm.mc", st.mc);
                cfg.set("gemm.nc", st.nc);
                cfg.set("gemm.kc", st.kc);
                cfg.set("gemm.threads", threads);
                cfg.set("ctemp.enable", "on");
                Matrix got = c;
                gemm(alpha, a.view(), b.view(), beta,
                     got.view().with_comp_prec(label.comp), cfg);
                if (first) {
                    reference = got;
                    first = false;
                } else {
                    require(bitwise_equal(got.view(), reference.view()),
                            std::string(name) + ": bits changed at mc=" +
                                st.mc + " kc=" + st.kc + " threads=" + threads);
                }
            }
    }
}

void intermediate_output_consistency() {
    // every trigger class: precision gap, unreachable real image (general
    // storage), multi-block strided image
    const std::int64_t m = 32, n = 32, k = 96;
    Config base;
    base.set("gemm.kc", "32");
    for (const CaseLabel& label : CaseLabel::all()) {
        Rng root = Rng(51).split(label.str());
        Matrix a = Matrix::make(label.a, m, k);
        Matrix b = Matrix::make(label.b, k, n);
        Matrix c = Matrix::make(label.c, m, n, StorageKind::GeneralStored);
        fill_uniform(a.view(), root.split("a"));
        fill_uniform(b.view(), root.split("b"));
        fill_uniform(c.view(), root.split("c"));

        for (const char* mode : {"on", "off"}) {
            Config cfg = base;
            cfg.set("ctemp.enable", mode);
            Matrix got = c;
            gemm(kOne, a.view(), b.view(), Scalar::real_value(0.5),
                 got.view().with_comp_prec(label.comp), cfg);
            const double v = oracle_violation(kOne, a.view(), b.view(),
                                              Scalar::real_value(0.5), c.view(),
                                              got.view(), label.comp, k);
            require(v <= 1.0, label.str() + " with buffer " + mode +
                                  ": violation " + std::to_string(v));
        }
    }

    // directional accuracy: accumulating across inner blocks in computation
    // precision rather than through the narrow output wins most of the time
    const CaseLabel label = CaseLabel::parse("sssd");
    int wins = 0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
        Rng root = Rng(61).split(std::to_string(t));
        Matrix a = Matrix::make(label.a, m, k);
        Matrix b = Matrix::make(label.b, k, n);
        Matrix c = Matrix::make(label.c, m, n);
        fill_uniform(a.view(), root.split("a"));
        fill_uniform(b.view(), root.split("b"));
        fill_uniform(c.view(), root.split("c"));
        Matrix want = oracle_gemm(kOne, a.view(), b.view(), kOne, c.view(),
                                  label.case_id(), label.comp);

        double err[2] = {0.0, 0.0};
        int slot = 0;
        for (const char* mode : {"on", "off"}) {
            Config cfg = base;
            cfg.set("ctemp.enable", mode);
            Matrix got = c;
            gemm(kOne, a.view(), b.view(), kOne,
                 got.view().with_comp_prec(label.comp), cfg);
            double e = 0.0;
            for (std::int64_t j = 0; j < n; ++j)
                for (std::int64_t i = 0; i < m; ++i)
                    e = std::max(e, std::abs(load_elem(got.view(), i, j) -
                                             load_elem(want.view(), i, j)));
            err[slot++] = e;
        }
        if (err[0] <= err[1])
            ++wins;
    }
    require(wins >= 60, "buffered accumulation won only " +
                            std::to_string(wins) + " of 100 trials");
}

void scalar_policy() {
    const std::int64_t s = 8;
    const Scalar imag_alpha = Scalar::complex_value(0.5, 0.5);

    // the six domain combinations that cannot honor an imaginary alpha
    const char* restricted[] = {"dzdd", "ddzd", "zddd", "dzzd", "zzdd", "zdzd"};
    for (const char* name : restricted) {
        const CaseLabel label = CaseLabel::parse(name);
        Matrix a = Matrix::make(label.a, s, s);
        Matrix b = Matrix::make(label.b, s, s);
        Matrix c = Matrix::make(label.c, s, s);
        Rng root = Rng(71).split(name);
        fill_uniform(a.view(), root.split("a"));
        fill_uniform(b.view(), root.split("b"));
        fill_uniform(c.view(), root.split("c"));
        bool threw = false;
        try {
            gemm(imag_alpha, a.view(), b.view(), kOne, c.view());
        } catch (const ScalarPolicyError& e) {
            threw = true;
            require(std::string(e.what()).find(to_string(label.case_id())) !=
                        std::string::npos,
                    std::string(name) + ": error does not name its case");
        }
        require(threw, std::string(name) + ": imaginary alpha was accepted");
    }

    // cases whose update touches only real data treat a complex beta as its
    // real projection, bit for bit
    for (const char* name : {"dddd", "dzdd", "ddzd", "zddd", "dzzd"}) {
        const CaseLabel label = CaseLabel::parse(name);
        Rng root = Rng(72).split(name);
        Matrix a = Matrix::make(label.a, s, s);
        Matrix b = Matrix::make(label.b, s, s);
        Matrix c = Matrix::make(label.c, s, s);
        fill_uniform(a.view(), root.split("a"));
        fill_uniform(b.view(), root.split("b"));
        fill_uniform(c.view(), root.split("c"));

        Matrix r1 = c, r2 = c;
        gemm(kOne, a.view(), b.view(), Scalar::complex_value(0.3, 0.4),
             r1.view());
        gemm(kOne, a.view(), b.view(), Scalar::real_value(0.3), r2.view());
        require(bitwise_equal(r1.view(), r2.view()),
                std::string(name) + ": complex beta differs from its projection");
    }

    // fully complex updates honor the complex beta
    for (const char* name : {"zzdd", "zdzd", "zzzd"}) {
        const CaseLabel label = CaseLabel::parse(name);
        Rng root = Rng(73).split(name);
        Matrix a = Matrix::make(label.a, s, s);
        Matrix b = Matrix::make(label.b, s, s);
        Matrix c = Matrix::make(label.c, s, s);
        fill_uniform(a.view(), root.split("a"));
        fill_uniform(b.view(), root.split("b"));
        fill_uniform(c.view(), root.split("c"));

        const Scalar beta = Scalar::complex_value(0.3, 0.4);
        Matrix got = c;
        gemm(kOne, a.view(), b.view(), beta, got.view());
        const double v = oracle_violation(kOne, a.view(), b.view(), beta,
                                          c.view(), got.view(), label.comp, s);
        require(v <= 1.0, std::string(name) + ": complex beta violation " +
                              std::to_string(v));
    }
}

void bench_smoke(const std::string& cli) {
    require(!cli.empty(), "path to the CLI binary was not provided");
    const std::string cmd = "\"" + cli +
                            "\" bench --case zcsd --min 40 --max 200 --step 40 "
                            "--trials 3";
    FILE* pipe = popen(cmd.c_str(), "r");
    require(pipe != nullptr, "could not launch the CLI");
    std::string output;
    char buf[512];
    while (std::size_t got = fread(buf, 1, sizeof buf, pipe))
        output.append(buf, got);
    const int status = pclose(pipe);
    require(status == 0, "CLI exited with status " + std::to_string(status));

    std::istringstream in(output);
    std::string line;
    require(std::getline(in, line) && line == csv_header(),
            "missing or malformed CSV header: '" + line + "'");
    int rows = 0;
    for (std::int64_t size = 40; std::getline(in, line); size += 40) {
        if (line.empty())
            continue;
        std::istringstream fields(line);
        std::string f[7];
        for (int i = 0; i < 7; ++i)
            require(static_cast<bool>(std::getline(fields, f[i], ',')),
                    "row " + std::to_string(rows) + " has too few fields");
        std::string extra;
        require(!std::getline(fields, extra, ','),
                "row " + std::to_string(rows) + " has extra fields");
        require(f[0] == "zcsd", "unexpected case column: " + f[0]);
        require(std::stoll(f[1]) == size && std::stoll(f[2]) == size &&
                    std::stoll(f[3]) == size,
                "unexpected sizes in row " + std::to_string(rows));
        require(std::stoi(f[4]) == 3, "unexpected trial count");
        const double secs = std::stod(f[5]);
        const double gflops = std::stod(f[6]);
        require(secs > 0.0, "non-positive best time");
        const double expect =
            4.0 * static_cast<double>(size) * size * size / secs / 1e9;
        require(std::abs(gflops - expect) <= 1e-3 * expect,
                "gflops column disagrees with 4mnk / time");
        ++rows;
    }
    require(rows == 5, "expected 5 data rows, got " + std::to_string(rows));
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    int failures = 0;

    auto run = [&](int num, const char* name, const std::function<void()>& body) {
        std::string detail;
        bool ok = true;
        try {
            body();
        } catch (const CheckFailed& f) {
            ok = false;
            detail = f.msg;
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("unexpected exception: ") + e.what();
        }
        std::printf("criterion %2d: %s  %s%s%s\n", num, ok ? "PASS" : "FAIL",
                    name, detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok)
            ++failures;
    };

    run(1, "case classification and flop model", case_table_and_flops);
    run(2, "full 128-label reference sweep", full_label_sweep);
    run(3, "random storage/transpose/conjugation draws", storage_trans_sampling);
    run(4, "exact flop accounting on aligned shapes", flop_accounting);
    run(5, "never-read data stays untouched", non_read_guarantees);
    run(6, "paired-format kernel matches the reference both ways",
        paired_kernel_equivalence);
    run(7, "bitwise determinism across threads and blockings", determinism);
    run(8, "intermediate output: consistency and accuracy win",
        intermediate_output_consistency);
    run(9, "scalar domain policy", scalar_policy);
    run(10, "benchmark CLI smoke", [&] { bench_smoke(cli); });

    if (failures) {
        std::printf("%d of 10 criteria failed\n", failures);
        return 1;
    }
    std::printf("all 10 criteria passed\n");
    return 0;
}
