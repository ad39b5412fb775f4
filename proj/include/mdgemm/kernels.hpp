#pragma once

#include "mdgemm/dtypes.hpp"

#include <cstdint>

namespace mdgemm {

// Register-tile IO orientation a microkernel is cheapest at. The generic
// kernels here accept any strides; the declared preference still drives plan
// decisions (operation transposition, paired-format variant) exactly as it
// would for a kernel with a hard-wired layout.
enum class Preference : std::uint8_t { Column, Row };

// How two real rows/columns of an accumulated tile pair up into one complex
// element of the output.
enum class PairAxis : std::uint8_t { None, Rows, Cols };

enum class OneMVariant : std::uint8_t { Column, Row };

struct UkrDescriptor {
    Precision precision = Precision::Double;
    int mr = 4;
    int nr = 4;
    Preference preference = Preference::Column;
};

// Microkernel register tiles are stack-resident; keep dimensions bounded.
inline constexpr int kMaxUkrDim = 32;

class FlopCounter {
public:
    void add(std::uint64_t n) { flops_ += n; }
    void merge(const FlopCounter& other) { flops_ += other.flops_; }
    void reset() { flops_ = 0; }
    std::uint64_t value() const { return flops_; }

private:
    std::uint64_t flops_ = 0;
};

// One microtile's worth of packed operands: `a` holds an mr x k slice stored
// column-major (mr elements per rank-1 step), `b` a k x nr slice stored
// row-major (nr elements per step), both in the kernel's precision.
struct MicroPanelPair {
    const std::byte* a = nullptr;
    const std::byte* b = nullptr;
    std::int64_t k = 0;
};

// c := beta * c + sum_l a(:, l) * b(l, :), accumulated rank-1 at a time in
// ascending l in an mr x nr tile of `d.precision` accumulators. The
// accumulators are seeded with beta * c, so splitting k across calls with
// beta = 1 continues the exact same rounding sequence as one long call.
// beta = 0 seeds zeros and never reads c. Advances fc by 2 * mr * nr * k,
// plus mr * nr when beta is neither 0 nor 1.
//
// valid_m/valid_n restrict loads and stores to the top-left region (pass the
// defaults for a full tile); the flop count is unaffected.
void gemm_ukr(const UkrDescriptor& d, const MicroPanelPair& panels, double beta,
              void* c, std::int64_t rs, std::int64_t cs, FlopCounter& fc,
              std::int64_t valid_m = -1, std::int64_t valid_n = -1);

// Shared output-combine step: c(i, j) := beta (*) c(i, j) + typecast(t),
// where t is an accumulated value in computation precision and the
// arithmetic on storage values rounds to c's storage precision per
// component. beta = 0 overwrites without reading. Every output path (virtual
// microkernels, intermediate-C write-back) funnels through this so their
// results agree bitwise where their accumulation sequences agree.
void accumulate_element(const MatrixView& c, std::int64_t i, std::int64_t j,
                        Scalar beta, std::complex<double> t);

// Runs gemm_ukr with beta = 0 into a stack tile in computation precision and
// the preferred orientation, then combines the tile into c through
// accumulate_element. `c` is the logical output tile: a real view when pair
// is None, otherwise a complex view whose elements pair up two real rows
// (Rows) or columns (Cols) of the accumulated tile. Handles any strides, any
// storage precision, and complex beta.
void virtual_ukr_temp(const UkrDescriptor& d, const MicroPanelPair& panels,
                      Scalar beta, const MatrixView& c, PairAxis pair,
                      FlopCounter& fc);

// Complex microtile update on top of a real microkernel fed expanded-format
// (OneE/OneR) packed panels. When c's flattened real image is reachable (unit stride along the
// variant's axis), beta is real, and storage precision matches the kernel,
// the real kernel runs directly on the flattened view; otherwise the update
// routes through virtual_ukr_temp. `panels` carries the doubled inner
// dimension (2k real steps for k complex elements).
void virtual_ukr_onem(const UkrDescriptor& d, const MicroPanelPair& panels,
                    Scalar beta, const MatrixView& c, OneMVariant variant,
                    FlopCounter& fc);

} // namespace mdgemm
