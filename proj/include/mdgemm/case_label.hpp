#pragma once

#include "mdgemm/dtypes.hpp"

#include <string>
#include <vector>

namespace mdgemm {

// Four-letter operation label: the storage datatypes of C, A, B (one of
// s, d, c, z) followed by the computation precision (s or d). "zcsd" is a
// complex-double C with complex-single A and real-single B, computed in
// double. 4 * 4 * 4 * 2 = 128 labels exist.
struct CaseLabel {
    Datatype c = dt_d;
    Datatype a = dt_d;
    Datatype b = dt_d;
    Precision comp = Precision::Double;

    CaseId case_id() const;
    std::string str() const;

    static CaseLabel parse(const std::string& s);

    // All 128 labels: C, A, B each over s/d/c/z (outer to inner), computation
    // precision s then d innermost.
    static std::vector<CaseLabel> all();
};

} // namespace mdgemm
