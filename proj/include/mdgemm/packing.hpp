#pragma once

#include "mdgemm/dtypes.hpp"

#include <complex>
#include <span>
#include <vector>

namespace mdgemm {

// How a complex operand is expanded into the packed buffer.
//
//   Standard: elements are copied (typecast/conjugated/scaled) untouched.
//             A complex block packed this way doubles its panel dimension
//             when reinterpreted as real storage, which is exactly the
//             "treat the complex operand as a real matrix with interleaved
//             components" trick used when only C and one operand are complex.
//   OneE:     each complex element becomes a 2x2 real block. On the left
//             operand the block is [[re, -im], [im, re]]; on the right the
//             transposed convention [[re, im], [-im, re]] holds.
//   OneR:     each complex element becomes a real pair. On the left the pair
//             lies along the row (m x 2k), on the right along the column
//             (2k x n, re above im).
enum class PackFormat : std::uint8_t { Standard, OneE, OneR };

enum class Side : std::uint8_t { Left, Right };

// A packed operand block: zero-padded register panels over one dimension,
// contiguous along the other. The packed logical matrix is the operand after
// format expansion (so a 3x2 complex left operand packed OneE is logically a
// real 6x4 matrix). For Left blocks panels tile rows and run column-major
// within a panel; for Right blocks panels tile columns and run row-major.
class PackedBlock {
public:
    PackedBlock() = default;
    PackedBlock(const PackedBlock&) = delete;
    PackedBlock& operator=(const PackedBlock&) = delete;
    PackedBlock(PackedBlock&&) = default;
    PackedBlock& operator=(PackedBlock&&) = default;

    std::span<const std::byte> buf() const { return buf_; }
    Datatype dtype() const { return dtype_; }
    PackFormat format() const { return format_; }
    Side side() const { return side_; }

    // Panel geometry in packed-logical units (complex elements for a
    // Standard-packed complex operand, real elements otherwise).
    std::int64_t panel_dim() const { return panel_dim_; }
    std::int64_t panels() const { return panels_; }
    std::int64_t panel_len() const { return panel_len_; }

    std::int64_t logical_rows() const { return logical_rows_; }
    std::int64_t logical_cols() const { return logical_cols_; }
    std::int64_t padded_rows() const {
        return side_ == Side::Left ? panels_ * panel_dim_ : logical_rows_;
    }
    std::int64_t padded_cols() const {
        return side_ == Side::Right ? panels_ * panel_dim_ : logical_cols_;
    }

    // Element (i, j) of the zero-padded packed logical matrix.
    std::complex<double> packed_element(std::int64_t i, std::int64_t j) const;

    // Geometry of the buffer when consumed as real register panels by the
    // microkernel: a Standard-packed complex block doubles its panel
    // dimension, every other block is already real.
    std::int64_t kernel_panel_dim() const {
        return panel_dim_ * (dtype_.domain == Domain::Complex ? 2 : 1);
    }
    std::int64_t kernel_panel_len() const { return panel_len_; }
    Precision kernel_precision() const { return dtype_.precision; }

    const std::byte* panel_ptr(std::int64_t p) const {
        return buf_.data() + static_cast<std::size_t>(p) * panel_bytes();
    }

    std::size_t panel_bytes() const {
        return static_cast<std::size_t>(panel_dim_ * panel_len_) * dtype_size(dtype_);
    }

private:
    friend PackedBlock pack_block_panels(std::span<std::byte>, const MatrixView&,
                                         Side, PackFormat, bool, Scalar, Datatype,
                                         std::int64_t, std::int64_t, std::int64_t);
    friend PackedBlock pack_block(const MatrixView&, Side, PackFormat, bool,
                                  Scalar, Datatype, std::int64_t);

    std::span<std::byte> buf_;
    std::vector<std::byte> owned_;
    Datatype dtype_ = dt_d;
    PackFormat format_ = PackFormat::Standard;
    Side side_ = Side::Left;
    std::int64_t panel_dim_ = 0;
    std::int64_t panels_ = 0;
    std::int64_t panel_len_ = 0;
    std::int64_t logical_rows_ = 0;
    std::int64_t logical_cols_ = 0;
};

// Bytes needed to pack `src` under the given side/format/target/reg_block.
std::size_t packed_bytes(const MatrixView& src, Side side, PackFormat format,
                         Datatype target, std::int64_t reg_block);

// Packs src into register panels. Each source element is loaded once, then
// conjugated (if requested), typecast to the target precision, scaled, and
// scattered into its format position(s). Rows/columns beyond the source are
// zero-filled up to the panel boundary. `target` gives the datatype the
// operand is being brought to; for OneE/OneR the buffer itself holds real
// elements of target's precision. `reg_block` is the panel dimension in
// packed-logical units. A complex scale is only meaningful for the formats
// that expand complex elements, and is rejected for Standard packing.
PackedBlock pack_block(const MatrixView& src, Side side, PackFormat format,
                       bool conj, Scalar scale, Datatype target,
                       std::int64_t reg_block);

// Same, writing into caller-provided storage (e.g. a per-call arena) instead
// of allocating. The returned block references `storage`.
PackedBlock pack_block_into(std::span<std::byte> storage, const MatrixView& src,
                            Side side, PackFormat format, bool conj,
                            Scalar scale, Datatype target, std::int64_t reg_block);

// Same as pack_block_into but fills only panels [panel_begin, panel_end),
// leaving the other panels' bytes untouched. Threads can split one block's
// packing by each taking a disjoint range over shared storage; the returned
// metadata is identical for every range. panel_end is clamped to the panel
// count, so an overshooting range is fine.
PackedBlock pack_block_panels(std::span<std::byte> storage, const MatrixView& src,
                              Side side, PackFormat format, bool conj,
                              Scalar scale, Datatype target, std::int64_t reg_block,
                              std::int64_t panel_begin, std::int64_t panel_end);

} // namespace mdgemm
