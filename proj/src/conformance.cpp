#include "mdgemm/conformance.hpp"

#include "mdgemm/dispatch.hpp"
#include "mdgemm/matrix.hpp"
#include "mdgemm/oracle.hpp"
#include "mdgemm/rng.hpp"

#include <cmath>
#include <sstream>

namespace mdgemm {

namespace {

struct Variant {
    const char* name = "base";
    StorageKind c_store = StorageKind::ColumnStored;
    bool trans_a = false;
    bool trans_b = false;
    bool conj_a = false;
    bool conj_b = false;
    Scalar alpha = Scalar::real_value(1.0);
    Scalar beta = Scalar::real_value(1.0);
    bool expect_alpha_reject = false;
};

std::string scalar_str(const Scalar& s) {
    std::ostringstream os;
    os << s.re;
    if (s.dtype.domain == Domain::Complex)
        os << (s.im < 0 ? "" : "+") << s.im << "i";
    return os.str();
}

const char* storage_str(StorageKind k) {
    switch (k) {
    case StorageKind::ColumnStored:
        return "column";
    case StorageKind::RowStored:
        return "row";
    default:
        return "general";
    }
}

void run_one(const CaseLabel& label, std::int64_t m, std::int64_t n,
             std::int64_t k, const Variant& v, const Rng& root,
             const Config& cfg, ConformanceReport& rep) {
    Rng rng = root.split(label.str()).split(v.name)
                  .split(static_cast<std::uint64_t>(m * 1000003 + n * 1009 + k));

    Matrix am = Matrix::make(label.a, v.trans_a ? k : m, v.trans_a ? m : k);
    Matrix bm = Matrix::make(label.b, v.trans_b ? n : k, v.trans_b ? k : n);
    Matrix cm = Matrix::make(label.c, m, n, v.c_store);
    fill_uniform(am.view(), rng.split("a"));
    fill_uniform(bm.view(), rng.split("b"));
    fill_uniform(cm.view(), rng.split("c"));

    MatrixView va = v.trans_a ? induced_transpose(am.view()) : am.view();
    MatrixView vb = v.trans_b ? induced_transpose(bm.view()) : bm.view();
    if (v.conj_a && label.a.domain == Domain::Complex)
        va = va.with_conj(true);
    if (v.conj_b && label.b.domain == Domain::Complex)
        vb = vb.with_conj(true);

    const CaseId id = label.case_id();
    auto detail = [&](const char* what) {
        std::ostringstream os;
        os << what << ": m=" << m << " n=" << n << " k=" << k
           << " storage=" << storage_str(v.c_store) << " variant=" << v.name
           << " alpha=" << scalar_str(v.alpha) << " beta=" << scalar_str(v.beta);
        return os.str();
    };

    ++rep.checks;

    if (v.expect_alpha_reject) {
        bool oracle_threw = false, impl_threw = false;
        try {
            oracle_gemm(v.alpha, va, vb, v.beta,
                        cm.view().with_comp_prec(label.comp), id, label.comp);
        } catch (const ScalarPolicyError&) {
            oracle_threw = true;
        }
        Matrix cwork = cm;
        try {
            gemm(v.alpha, va, vb, v.beta, cwork.view().with_comp_prec(label.comp),
                 cfg);
        } catch (const ScalarPolicyError&) {
            impl_threw = true;
        }
        if (!oracle_threw || !impl_threw)
            rep.failures.push_back(
                {label.str(), detail("expected scalar rejection missing"), 0.0});
        return;
    }

    Matrix ref;
    try {
        ref = oracle_gemm(v.alpha, va, vb, v.beta,
                          cm.view().with_comp_prec(label.comp), id, label.comp);
    } catch (const Error& e) {
        rep.failures.push_back(
            {label.str(), detail("reference raised") + ": " + e.what(), 0.0});
        return;
    }

    Matrix cwork = cm;
    try {
        gemm(v.alpha, va, vb, v.beta, cwork.view().with_comp_prec(label.comp), cfg);
    } catch (const Error& e) {
        rep.failures.push_back(
            {label.str(), detail("implementation raised") + ": " + e.what(), 0.0});
        return;
    }

    ErrorBoundParams bp;
    bp.k = k;
    bp.eps_comp = eps_of(label.comp);
    bp.eps_out = eps_of(label.c.precision);
    bp.magnitude = magnitude_matrix(v.alpha, va, vb, v.beta, cm.view(), id);
    Matrix tol = tolerance(bp);

    double viol = max_violation(cwork.view(), ref.view(), tol.view());
    if (!(viol <= 1.0))
        rep.failures.push_back({label.str(), detail("error bound exceeded"), viol});
}

} // namespace

ConformanceReport run_conformance(const ConformanceOptions& opt) {
    ConformanceReport rep;
    const std::vector<CaseLabel> labels =
        opt.labels.empty() ? CaseLabel::all() : opt.labels;
    const Rng root(opt.seed);

    for (const CaseLabel& label : labels) {
        for (std::int64_t s : opt.sizes)
            run_one(label, s, s, s, Variant{}, root, opt.config, rep);
        run_one(label, 13, 7, 19, Variant{.name = "rectangular"}, root,
                opt.config, rep);

        if (opt.storage_sweep) {
            const std::int64_t s = 17;
            run_one(label, s, s, s,
                    Variant{.name = "c_row", .c_store = StorageKind::RowStored},
                    root, opt.config, rep);
            run_one(label, s, s, s,
                    Variant{.name = "c_general",
                            .c_store = StorageKind::GeneralStored},
                    root, opt.config, rep);
            run_one(label, s, s, s, Variant{.name = "a_transposed", .trans_a = true},
                    root, opt.config, rep);
            run_one(label, s, s, s, Variant{.name = "b_transposed", .trans_b = true},
                    root, opt.config, rep);
            if (label.a.domain == Domain::Complex)
                run_one(label, s, s, s,
                        Variant{.name = "a_conjugated", .conj_a = true}, root,
                        opt.config, rep);
            if (label.b.domain == Domain::Complex)
                run_one(label, s, s, s,
                        Variant{.name = "b_conjugated", .conj_b = true}, root,
                        opt.config, rep);
            run_one(label, s, s, s,
                    Variant{.name = "row_transposed",
                            .c_store = StorageKind::RowStored,
                            .trans_a = true,
                            .trans_b = true},
                    root, opt.config, rep);
            run_one(label, s, s, s,
                    Variant{.name = "general_mixed",
                            .c_store = StorageKind::GeneralStored,
                            .trans_a = true,
                            .conj_a = true,
                            .conj_b = true},
                    root, opt.config, rep);
        }

        if (opt.scalar_sweep) {
            const std::int64_t s = 16;
            const Scalar alphas[] = {
                Scalar::real_value(0.0), Scalar::real_value(1.0),
                Scalar::real_value(-1.0), Scalar::real_value(0.7)};
            const Scalar betas[] = {
                Scalar::real_value(0.0), Scalar::real_value(1.0),
                Scalar::real_value(0.3), Scalar::complex_value(0.3, 0.4)};
            for (const Scalar& al : alphas)
                for (const Scalar& be : betas)
                    run_one(label, s, s, s,
                            Variant{.name = "scalars", .alpha = al, .beta = be},
                            root, opt.config, rep);

            // A complex alpha is honored by the all-real case (as its real
            // part) and the all-complex case, and must be rejected with a
            // scalar policy error everywhere else.
            const CaseId id = label.case_id();
            const bool rejects = id != CaseId::C0 && id != CaseId::C3;
            run_one(label, s, s, s,
                    Variant{.name = "complex_alpha",
                            .alpha = Scalar::complex_value(0.5, 0.5),
                            .expect_alpha_reject = rejects},
                    root, opt.config, rep);
        }
    }
    return rep;
}

} // namespace mdgemm
