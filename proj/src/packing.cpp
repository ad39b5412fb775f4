#include "mdgemm/packing.hpp"

#include <algorithm>
#include <limits>

namespace mdgemm {

namespace {

double round_prec(double v, Precision p) {
    return p == Precision::Single ? static_cast<double>(static_cast<float>(v)) : v;
}

std::complex<double> round_prec(std::complex<double> v, Precision p) {
    return {round_prec(v.real(), p), round_prec(v.imag(), p)};
}

struct Geometry {
    Datatype block_dtype;
    std::int64_t rows = 0;     // packed logical dims, pre-padding
    std::int64_t cols = 0;
    std::int64_t panel_dim = 0;
    std::int64_t panels = 0;
    std::int64_t panel_len = 0;
};

Geometry resolve_geometry(const MatrixView& src, Side side, PackFormat format,
                          Datatype target, std::int64_t reg_block) {
    if (reg_block < 1)
        throw Error("pack_block: reg_block must be at least 1");
    Geometry g;
    switch (format) {
    case PackFormat::Standard:
        if (target.domain != src.dtype.domain)
            throw Error("pack_block: Standard packing cannot change the domain");
        g.block_dtype = target;
        g.rows = src.m;
        g.cols = src.n;
        break;
    case PackFormat::OneE:
        if (src.dtype.domain != Domain::Complex)
            throw Error("pack_block: OneE requires a complex source");
        if (reg_block % 2 != 0)
            throw Error("pack_block: OneE requires an even reg_block");
        g.block_dtype = Datatype{Domain::Real, target.precision};
        g.rows = 2 * src.m;
        g.cols = 2 * src.n;
        break;
    case PackFormat::OneR:
        if (src.dtype.domain != Domain::Complex)
            throw Error("pack_block: OneR requires a complex source");
        g.block_dtype = Datatype{Domain::Real, target.precision};
        if (side == Side::Left) {
            g.rows = src.m;
            g.cols = 2 * src.n;
        } else {
            g.rows = 2 * src.m;
            g.cols = src.n;
        }
        break;
    }
    g.panel_dim = reg_block;
    std::int64_t panel_extent = side == Side::Left ? g.rows : g.cols;
    g.panels = (panel_extent + reg_block - 1) / reg_block;
    g.panel_len = side == Side::Left ? g.cols : g.rows;
    return g;
}

// Typed store into the packed buffer at a flat element index.
struct ElementWriter {
    std::byte* data;
    Datatype dtype;

    void put(std::int64_t idx, std::complex<double> v) const {
        if (dtype == dt_s) {
            reinterpret_cast<float*>(data)[idx] = static_cast<float>(v.real());
        } else if (dtype == dt_d) {
            reinterpret_cast<double*>(data)[idx] = v.real();
        } else if (dtype == dt_c) {
            float* q = reinterpret_cast<float*>(data) + 2 * idx;
            q[0] = static_cast<float>(v.real());
            q[1] = static_cast<float>(v.imag());
        } else {
            double* q = reinterpret_cast<double*>(data) + 2 * idx;
            q[0] = v.real();
            q[1] = v.imag();
        }
    }
};

std::complex<double> read_packed(const std::byte* data, Datatype dtype,
                                 std::int64_t idx) {
    if (dtype == dt_s)
        return {static_cast<double>(reinterpret_cast<const float*>(data)[idx]), 0.0};
    if (dtype == dt_d)
        return {reinterpret_cast<const double*>(data)[idx], 0.0};
    if (dtype == dt_c) {
        const float* q = reinterpret_cast<const float*>(data) + 2 * idx;
        return {static_cast<double>(q[0]), static_cast<double>(q[1])};
    }
    const double* q = reinterpret_cast<const double*>(data) + 2 * idx;
    return {q[0], q[1]};
}

} // namespace

std::size_t packed_bytes(const MatrixView& src, Side side, PackFormat format,
                         Datatype target, std::int64_t reg_block) {
    Geometry g = resolve_geometry(src, side, format, target, reg_block);
    return static_cast<std::size_t>(g.panels * g.panel_dim * g.panel_len) *
           dtype_size(g.block_dtype);
}

PackedBlock pack_block_panels(std::span<std::byte> storage, const MatrixView& src,
                              Side side, PackFormat format, bool conj,
                              Scalar scale, Datatype target, std::int64_t reg_block,
                              std::int64_t panel_begin, std::int64_t panel_end) {
    if (scale.im != 0.0 && format == PackFormat::Standard)
        throw Error("pack_block: complex scale requires OneE or OneR format");
    Geometry g = resolve_geometry(src, side, format, target, reg_block);
    if (panel_begin < 0)
        throw Error("pack_block: negative panel_begin");
    panel_end = std::min(panel_end, g.panels);
    std::size_t need = static_cast<std::size_t>(g.panels * g.panel_dim * g.panel_len) *
                       dtype_size(g.block_dtype);
    if (storage.size() < need)
        throw Error("pack_block: storage too small for packed block");

    PackedBlock blk;
    blk.buf_ = storage.first(need);
    blk.dtype_ = g.block_dtype;
    blk.format_ = format;
    blk.side_ = side;
    blk.panel_dim_ = g.panel_dim;
    blk.panels_ = g.panels;
    blk.panel_len_ = g.panel_len;
    blk.logical_rows_ = g.rows;
    blk.logical_cols_ = g.cols;

    const bool do_conj = src.conj != conj;
    const Precision tp = target.precision;
    const std::complex<double> sc = scale.value();
    const bool unit_scale = scale.is_one();
    MatrixView raw = src.with_conj(false);

    auto process = [&](std::int64_t i, std::int64_t j) {
        std::complex<double> v = load_elem(raw, i, j);
        if (do_conj)
            v = std::conj(v);
        v = round_prec(v, tp);
        if (!unit_scale)
            v = round_prec(v * sc, tp);
        return v;
    };

    ElementWriter w{storage.data(), g.block_dtype};
    const std::int64_t PD = g.panel_dim, L = g.panel_len;
    auto off_left = [&](std::int64_t p, std::int64_t row_in_panel, std::int64_t col) {
        return p * PD * L + col * PD + row_in_panel;
    };
    auto off_right = [&](std::int64_t p, std::int64_t col_in_panel, std::int64_t row) {
        return p * PD * L + row * PD + col_in_panel;
    };
    const std::complex<double> zero{0.0, 0.0};

    for (std::int64_t p = panel_begin; p < panel_end; ++p) {
        switch (format) {
        case PackFormat::Standard:
            if (side == Side::Left) {
                for (std::int64_t l = 0; l < L; ++l)
                    for (std::int64_t wi = 0; wi < PD; ++wi) {
                        std::int64_t i = p * PD + wi;
                        w.put(off_left(p, wi, l), i < src.m ? process(i, l) : zero);
                    }
            } else {
                for (std::int64_t l = 0; l < L; ++l)
                    for (std::int64_t wj = 0; wj < PD; ++wj) {
                        std::int64_t j = p * PD + wj;
                        w.put(off_right(p, wj, l), j < src.n ? process(l, j) : zero);
                    }
            }
            break;
        case PackFormat::OneE:
            if (side == Side::Left) {
                const std::int64_t pdc = PD / 2;
                for (std::int64_t lc = 0; lc < src.n; ++lc)
                    for (std::int64_t wc = 0; wc < pdc; ++wc) {
                        std::int64_t ic = p * pdc + wc;
                        std::complex<double> v = ic < src.m ? process(ic, lc) : zero;
                        w.put(off_left(p, 2 * wc, 2 * lc), {v.real(), 0.0});
                        w.put(off_left(p, 2 * wc, 2 * lc + 1), {-v.imag(), 0.0});
                        w.put(off_left(p, 2 * wc + 1, 2 * lc), {v.imag(), 0.0});
                        w.put(off_left(p, 2 * wc + 1, 2 * lc + 1), {v.real(), 0.0});
                    }
            } else {
                const std::int64_t pdc = PD / 2;
                for (std::int64_t lc = 0; lc < src.m; ++lc)
                    for (std::int64_t wc = 0; wc < pdc; ++wc) {
                        std::int64_t jc = p * pdc + wc;
                        std::complex<double> v = jc < src.n ? process(lc, jc) : zero;
                        w.put(off_right(p, 2 * wc, 2 * lc), {v.real(), 0.0});
                        w.put(off_right(p, 2 * wc + 1, 2 * lc), {v.imag(), 0.0});
                        w.put(off_right(p, 2 * wc, 2 * lc + 1), {-v.imag(), 0.0});
                        w.put(off_right(p, 2 * wc + 1, 2 * lc + 1), {v.real(), 0.0});
                    }
            }
            break;
        case PackFormat::OneR:
            if (side == Side::Left) {
                for (std::int64_t lc = 0; lc < src.n; ++lc)
                    for (std::int64_t wi = 0; wi < PD; ++wi) {
                        std::int64_t i = p * PD + wi;
                        std::complex<double> v = i < src.m ? process(i, lc) : zero;
                        w.put(off_left(p, wi, 2 * lc), {v.real(), 0.0});
                        w.put(off_left(p, wi, 2 * lc + 1), {v.imag(), 0.0});
                    }
            } else {
                for (std::int64_t lc = 0; lc < src.m; ++lc)
                    for (std::int64_t wj = 0; wj < PD; ++wj) {
                        std::int64_t j = p * PD + wj;
                        std::complex<double> v = j < src.n ? process(lc, j) : zero;
                        w.put(off_right(p, wj, 2 * lc), {v.real(), 0.0});
                        w.put(off_right(p, wj, 2 * lc + 1), {v.imag(), 0.0});
                    }
            }
            break;
        }
    }
    return blk;
}

PackedBlock pack_block_into(std::span<std::byte> storage, const MatrixView& src,
                            Side side, PackFormat format, bool conj,
                            Scalar scale, Datatype target, std::int64_t reg_block) {
    return pack_block_panels(storage, src, side, format, conj, scale, target,
                             reg_block, 0, std::numeric_limits<std::int64_t>::max());
}

PackedBlock pack_block(const MatrixView& src, Side side, PackFormat format,
                       bool conj, Scalar scale, Datatype target,
                       std::int64_t reg_block) {
    std::size_t need = packed_bytes(src, side, format, target, reg_block);
    std::vector<std::byte> owned(need);
    PackedBlock blk = pack_block_into(std::span<std::byte>(owned.data(), owned.size()),
                                      src, side, format, conj, scale, target, reg_block);
    blk.owned_ = std::move(owned);
    blk.buf_ = std::span<std::byte>(blk.owned_.data(), need);
    return blk;
}

std::complex<double> PackedBlock::packed_element(std::int64_t i, std::int64_t j) const {
    if (i < 0 || j < 0 || i >= padded_rows() || j >= padded_cols())
        throw Error("packed_element: index out of range");
    std::int64_t off;
    if (side_ == Side::Left)
        off = (i / panel_dim_) * panel_dim_ * panel_len_ + j * panel_dim_ + i % panel_dim_;
    else
        off = (j / panel_dim_) * panel_dim_ * panel_len_ + i * panel_dim_ + j % panel_dim_;
    return read_packed(buf_.data(), dtype_, off);
}

} // namespace mdgemm
