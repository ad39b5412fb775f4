#pragma once

#include "mdgemm/config.hpp"
#include "mdgemm/packing.hpp"

#include <optional>

namespace mdgemm {

// Mixed-domain case from the domains of (C, A, B).
CaseId classify_case(Domain c, Domain a, Domain b);

// Computation precision of an operation: read off the output operand, where
// it defaults to the storage precision unless the caller overrode it.
Precision resolve_comp_precision(const MatrixView& c);

// Useful floating-point operations of one invocation, by case:
// 2mnk for the cases that reduce to one real product, 4mnk when one operand
// contributes both components, 8mnk for fully complex.
std::uint64_t flops_of_case(CaseId case_id, std::int64_t m, std::int64_t n,
                            std::int64_t k);

// Resolves alpha and beta for a case: alpha is typecast to the computation
// precision (projected to real for case 0, rejected with ScalarPolicyError
// when a nonzero imaginary part reaches a case that cannot honor it), beta
// is typecast to C's storage precision and projected to real for the cases
// whose update touches only real data.
std::pair<Scalar, Scalar> apply_scalar_policy(Scalar alpha, Scalar beta,
                                              CaseId case_id, Precision comp_prec,
                                              Precision c_storage_prec);

enum class UkrPath : std::uint8_t { Direct, Temp, OneMColumn, OneMRow };
enum class MacroMode : std::uint8_t { Standard, AccumulateTypecast };

// Intermediate output buffer: the effective real image of C held in
// computation precision, stored along the microkernel's preferred
// orientation. The buffer starts zeroed; AccumulateBack finishes with
// C := beta * C + typecast(buffer), CopyBack (chosen when beta == 0, so C is
// never read) with C := typecast(buffer).
struct CTempDescriptor {
    std::int64_t rows = 0;   // real-image dims
    std::int64_t cols = 0;
    Precision precision = Precision::Double;
    enum class Mode : std::uint8_t { CopyBack, AccumulateBack } mode = Mode::AccumulateBack;
};

// Fully resolved execution recipe. `a`/`b`/`c` are the effective operand
// views after operation transposition and real projections; `c` keeps its
// complex element type for the paths that pair real accumulator rows or
// columns back into complex elements. m/n/k are the dimensions of the real
// computation actually run (so case 3 in the column variant shows 2m, n, 2k).
struct ExecutionPlan {
    CaseId case_id = CaseId::C0;
    bool logical_transpose = false;
    Precision comp_prec = Precision::Double;
    std::int64_t m = 0, n = 0, k = 0;

    MatrixView a, b, c;
    PackFormat format_a = PackFormat::Standard;
    PackFormat format_b = PackFormat::Standard;
    bool conj_a = false;
    bool conj_b = false;
    Datatype target_dtype_a = dt_d;
    Datatype target_dtype_b = dt_d;
    std::int64_t reg_block_a = 0;  // panel dim handed to pack_block, packed-logical units
    std::int64_t reg_block_b = 0;

    Scalar alpha{};       // resolved; folded into packing of one operand
    Scalar beta{};        // resolved; applied on the first k-block or at write-back
    Scalar pack_scale_a{1.0, 0.0, dt_d};
    Scalar pack_scale_b{1.0, 0.0, dt_d};

    MacroMode macro_mode = MacroMode::Standard;
    UkrPath ukr_path = UkrPath::Direct;
    PairAxis pair_axis = PairAxis::None;
    std::optional<CTempDescriptor> ctemp;

    BlockingParams params{};
    UkrDescriptor ukr{};
};

// Builds the execution recipe without running it. C's dimensions pair with
// A (m x k) and B (k x n); conjugation comes in on the view flags.
ExecutionPlan plan(Scalar alpha, const MatrixView& a, const MatrixView& b,
                   Scalar beta, const MatrixView& c, const Config& cfg);

// C := alpha * op(A, B) + beta * C for any of the 128 storage/computation
// datatype combinations. Errors if C's buffer overlaps A's or B's.
void gemm(Scalar alpha, const MatrixView& a, const MatrixView& b, Scalar beta,
          const MatrixView& c, const Config& cfg = Config::defaults(),
          FlopCounter* fc = nullptr);

} // namespace mdgemm
