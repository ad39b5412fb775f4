#include "mdgemm/bench.hpp"

#include "mdgemm/dispatch.hpp"
#include "mdgemm/matrix.hpp"
#include "mdgemm/rng.hpp"

#include <chrono>
#include <limits>
#include <sstream>

namespace mdgemm {

BenchResult run_bench(const CaseLabel& label, std::int64_t m, std::int64_t n,
                      std::int64_t k, int trials, const Config& cfg,
                      std::uint64_t seed) {
    using clock = std::chrono::steady_clock;

    Rng rng = Rng(seed).split(label.str()).split("bench");
    Matrix am = Matrix::make(label.a, m, k);
    Matrix bm = Matrix::make(label.b, k, n);
    Matrix cm = Matrix::make(label.c, m, n);
    fill_uniform(am.view(), rng.split("a"));
    fill_uniform(bm.view(), rng.split("b"));
    fill_uniform(cm.view(), rng.split("c"));

    const Scalar one = Scalar::real_value(1.0);
    Matrix cwork = cm;
    const MatrixView vc = cwork.view().with_comp_prec(label.comp);

    gemm(one, am.view(), bm.view(), one, vc, cfg); // warmup

    double best = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        copy_into(cwork.view(), cm.view());
        const auto t0 = clock::now();
        gemm(one, am.view(), bm.view(), one, vc, cfg);
        const auto t1 = clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }

    BenchResult r;
    r.label = label;
    r.m = m;
    r.n = n;
    r.k = k;
    r.trials = trials;
    r.best_seconds = best;
    r.gflops = static_cast<double>(flops_of_case(label.case_id(), m, n, k)) /
               best / 1e9;
    return r;
}

std::string csv_header() { return "case,m,n,k,trials,best_seconds,gflops"; }

std::string csv_line(const BenchResult& r) {
    std::ostringstream os;
    os << r.label.str() << ',' << r.m << ',' << r.n << ',' << r.k << ','
       << r.trials << ',';
    os.precision(9);
    os << r.best_seconds << ',';
    os.precision(4);
    os << r.gflops;
    return os.str();
}

} // namespace mdgemm
