#pragma once

#include "mdgemm/dtypes.hpp"

#include <cstring>
#include <vector>

namespace mdgemm {

// Owning matrix: contiguous storage tagged with a datatype plus the strides
// of the chosen layout. General storage deliberately leaves gaps between
// addressed elements so tests can detect out-of-window writes.
class Matrix {
public:
    Matrix() = default;

    static Matrix make(Datatype dtype, std::int64_t m, std::int64_t n,
                       StorageKind kind = StorageKind::ColumnStored) {
        Matrix out;
        out.dtype_ = dtype;
        out.m_ = m;
        out.n_ = n;
        switch (kind) {
        case StorageKind::ColumnStored:
            out.rs_ = 1;
            out.cs_ = m > 0 ? m : 1;
            break;
        case StorageKind::RowStored:
            out.cs_ = 1;
            out.rs_ = n > 0 ? n : 1;
            break;
        case StorageKind::GeneralStored:
            out.rs_ = 2;
            out.cs_ = 2 * (m > 0 ? m : 1) + 3;
            break;
        }
        std::int64_t span = 0;
        if (m > 0 && n > 0)
            span = (m - 1) * out.rs_ + (n - 1) * out.cs_ + 1;
        out.data_.assign(static_cast<std::size_t>(span) * dtype_size(dtype),
                         std::byte{0});
        return out;
    }

    MatrixView view() const {
        auto v = MatrixView::make(const_cast<std::byte*>(data_.data()), m_, n_,
                                  rs_, cs_, dtype_);
        return v;
    }

    Datatype dtype() const { return dtype_; }
    std::int64_t rows() const { return m_; }
    std::int64_t cols() const { return n_; }
    std::byte* data() { return data_.data(); }
    const std::byte* data() const { return data_.data(); }
    std::size_t size_bytes() const { return data_.size(); }

    // Fills every byte of the backing storage, including inter-element gaps.
    void fill_bytes(std::byte b) { std::fill(data_.begin(), data_.end(), b); }

    static Matrix copy_of(const MatrixView& src) {
        Matrix out = make(src.dtype, src.m, src.n, StorageKind::ColumnStored);
        MatrixView dst = out.view();
        for (std::int64_t j = 0; j < src.n; ++j)
            for (std::int64_t i = 0; i < src.m; ++i)
                std::memcpy(dst.elem_ptr(i, j), src.elem_ptr(i, j), dtype_size(src.dtype));
        return out;
    }

private:
    Datatype dtype_ = dt_d;
    std::int64_t m_ = 0, n_ = 0, rs_ = 0, cs_ = 0;
    std::vector<std::byte> data_;
};

// Copies logical elements from src into dst (same dims, any dtypes match).
inline void copy_into(const MatrixView& dst, const MatrixView& src) {
    if (dst.m != src.m || dst.n != src.n || dst.dtype != src.dtype)
        throw Error("copy_into: shape or datatype mismatch");
    for (std::int64_t j = 0; j < src.n; ++j)
        for (std::int64_t i = 0; i < src.m; ++i)
            std::memcpy(dst.elem_ptr(i, j), src.elem_ptr(i, j), dtype_size(src.dtype));
}

inline bool bitwise_equal(const MatrixView& a, const MatrixView& b) {
    if (a.m != b.m || a.n != b.n || a.dtype != b.dtype)
        return false;
    for (std::int64_t j = 0; j < a.n; ++j)
        for (std::int64_t i = 0; i < a.m; ++i)
            if (std::memcmp(a.elem_ptr(i, j), b.elem_ptr(i, j), dtype_size(a.dtype)) != 0)
                return false;
    return true;
}

} // namespace mdgemm
