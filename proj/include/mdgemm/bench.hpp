#pragma once

#include "mdgemm/case_label.hpp"
#include "mdgemm/config.hpp"

#include <cstdint>
#include <string>

namespace mdgemm {

struct BenchResult {
    CaseLabel label;
    std::int64_t m = 0, n = 0, k = 0;
    int trials = 0;
    double best_seconds = 0.0;
    double gflops = 0.0;
};

// Times C := A B + C on freshly drawn operands: one untimed warmup, then
// `trials` timed runs keeping the best wall time (C is restored between
// runs, outside the timed region). gflops uses the operation's useful flop
// count, which depends on the domain combination, not on how the kernels
// get there.
BenchResult run_bench(const CaseLabel& label, std::int64_t m, std::int64_t n,
                      std::int64_t k, int trials, const Config& cfg,
                      std::uint64_t seed);

// Exactly "case,m,n,k,trials,best_seconds,gflops".
std::string csv_header();
std::string csv_line(const BenchResult& r);

} // namespace mdgemm
