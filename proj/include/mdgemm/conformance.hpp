#pragma once

#include "mdgemm/case_label.hpp"
#include "mdgemm/config.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mdgemm {

// Conformance harness: runs labels against the reference implementation and
// checks every output element against the per-element error bound.
struct ConformanceOptions {
    std::vector<CaseLabel> labels;              // empty = all 128
    std::vector<std::int64_t> sizes{7, 16, 17, 64};
    std::uint64_t seed = 42;
    Config config = Config::defaults();
    bool storage_sweep = true;   // row/general-stored C, transposed and conjugated operands
    bool scalar_sweep = true;    // alpha/beta grid, including the rejection checks
};

struct ConformanceFailure {
    std::string label;
    std::string detail;
    double violation = 0.0;      // max |impl - ref| / tol over the output
};

struct ConformanceReport {
    std::int64_t checks = 0;
    std::vector<ConformanceFailure> failures;
    bool ok() const { return failures.empty(); }
};

ConformanceReport run_conformance(const ConformanceOptions& opt);

} // namespace mdgemm
