#include "mdgemm/dtypes.hpp"

#include <algorithm>
#include <utility>

namespace mdgemm {

char dtype_letter(Datatype t) {
    if (t.domain == Domain::Real)
        return t.precision == Precision::Single ? 's' : 'd';
    return t.precision == Precision::Single ? 'c' : 'z';
}

Datatype dtype_from_letter(char ch) {
    switch (ch) {
    case 's': return dt_s;
    case 'd': return dt_d;
    case 'c': return dt_c;
    case 'z': return dt_z;
    default: throw Error(std::string("unknown datatype letter '") + ch + "'");
    }
}

char precision_letter(Precision p) {
    return p == Precision::Single ? 's' : 'd';
}

Precision precision_from_letter(char ch) {
    switch (ch) {
    case 's': return Precision::Single;
    case 'd': return Precision::Double;
    default: throw Error(std::string("unknown precision letter '") + ch + "'");
    }
}

std::string to_string(Datatype t) { return std::string(1, dtype_letter(t)); }

const char* to_string(CaseId c) {
    switch (c) {
    case CaseId::C0: return "0";
    case CaseId::C1a: return "1a";
    case CaseId::C1b: return "1b";
    case CaseId::C1c: return "1c";
    case CaseId::C2ab: return "2ab";
    case CaseId::C2ac: return "2ac";
    case CaseId::C2bc: return "2bc";
    case CaseId::C3: return "3";
    }
    return "?";
}

namespace {

double round_to(double v, Precision p) {
    return p == Precision::Single ? static_cast<double>(static_cast<float>(v)) : v;
}

} // namespace

Scalar Scalar::real_value(double v, Precision p) {
    return Scalar{round_to(v, p), 0.0, Datatype{Domain::Real, p}};
}

Scalar Scalar::complex_value(double r, double i, Precision p) {
    return Scalar{round_to(r, p), round_to(i, p), Datatype{Domain::Complex, p}};
}

Scalar typecast_scalar(Scalar s, Datatype target) {
    if (target.domain == Domain::Real && s.im != 0.0)
        throw Error("typecast_scalar: nonzero imaginary part cannot convert to a real datatype");
    Scalar out;
    out.re = round_to(s.re, target.precision);
    out.im = target.domain == Domain::Complex ? round_to(s.im, target.precision) : 0.0;
    out.dtype = target;
    return out;
}

Scalar project_scalar(Scalar s, Precision p) {
    return Scalar{round_to(s.re, p), 0.0, Datatype{Domain::Real, p}};
}

MatrixView MatrixView::make(void* base, std::int64_t m, std::int64_t n,
                            std::int64_t rs, std::int64_t cs, Datatype dtype) {
    if (m < 0 || n < 0)
        throw Error("MatrixView: negative dimensions");
    if (rs <= 0 || cs <= 0)
        throw Error("MatrixView: strides must be positive");
    if (m > 1 && n > 1) {
        // Conservative distinctness check: the larger stride must clear the
        // span of the smaller-strided index. Exotic but valid layouts that
        // fail this are rejected rather than risking aliased elements.
        std::int64_t lo_stride = rs, lo_dim = m, hi_stride = cs;
        if (cs < rs) {
            lo_stride = cs;
            lo_dim = n;
            hi_stride = rs;
        }
        if (hi_stride < lo_stride * lo_dim)
            throw Error("MatrixView: strides alias elements");
    }
    MatrixView v;
    v.base = static_cast<std::byte*>(base);
    v.m = m;
    v.n = n;
    v.rs = rs;
    v.cs = cs;
    v.dtype = dtype;
    v.comp_prec = dtype.precision;
    v.target_dtype = dtype;
    return v;
}

MatrixView induced_transpose(MatrixView v) {
    std::swap(v.m, v.n);
    std::swap(v.rs, v.cs);
    return v;
}

MatrixView real_projection(MatrixView v, Part part) {
    if (v.dtype.domain != Domain::Complex)
        throw Error("real_projection: view is not complex");
    MatrixView out = v;
    out.dtype = Datatype{Domain::Real, v.dtype.precision};
    out.base = v.base + (part == Part::Im ? real_size(v.dtype.precision) : 0);
    out.rs = 2 * v.rs;
    out.cs = 2 * v.cs;
    out.conj = false;
    return out;
}

bool can_flatten(const MatrixView& v, FlattenAxis axis) {
    if (v.dtype.domain != Domain::Complex)
        return false;
    return axis == FlattenAxis::Rows ? v.rs == 1 : v.cs == 1;
}

MatrixView real_flatten(MatrixView v, FlattenAxis axis) {
    if (v.dtype.domain != Domain::Complex)
        throw Error("real_flatten: view is not complex");
    if (!can_flatten(v, axis))
        throw Error("real_flatten: unit stride required along the flattened axis");
    MatrixView out = v;
    out.dtype = Datatype{Domain::Real, v.dtype.precision};
    out.conj = false;
    if (axis == FlattenAxis::Rows) {
        out.m = 2 * v.m;
        out.rs = 1;
        out.cs = 2 * v.cs;
    } else {
        out.n = 2 * v.n;
        out.cs = 1;
        out.rs = 2 * v.rs;
    }
    return out;
}

MatrixView slice(MatrixView v, std::int64_t i0, std::int64_t j0,
                 std::int64_t mm, std::int64_t nn) {
    if (i0 < 0 || j0 < 0 || mm < 0 || nn < 0 || i0 + mm > v.m || j0 + nn > v.n)
        throw Error("slice: window out of range");
    MatrixView out = v;
    out.base = v.elem_ptr(i0, j0);
    out.m = mm;
    out.n = nn;
    return out;
}

StorageKind storage_kind(const MatrixView& v) {
    if (v.rs == 1 && v.cs >= std::max<std::int64_t>(v.m, 1))
        return StorageKind::ColumnStored;
    if (v.cs == 1 && v.rs >= std::max<std::int64_t>(v.n, 1))
        return StorageKind::RowStored;
    return StorageKind::GeneralStored;
}

std::complex<double> load_elem(const MatrixView& v, std::int64_t i, std::int64_t j) {
    const std::byte* p = v.elem_ptr(i, j);
    std::complex<double> out;
    if (v.dtype == dt_s) {
        out = {static_cast<double>(*reinterpret_cast<const float*>(p)), 0.0};
    } else if (v.dtype == dt_d) {
        out = {*reinterpret_cast<const double*>(p), 0.0};
    } else if (v.dtype == dt_c) {
        const float* q = reinterpret_cast<const float*>(p);
        out = {static_cast<double>(q[0]), static_cast<double>(q[1])};
    } else {
        const double* q = reinterpret_cast<const double*>(p);
        out = {q[0], q[1]};
    }
    if (v.conj)
        out = std::conj(out);
    return out;
}

void store_elem(const MatrixView& v, std::int64_t i, std::int64_t j,
                std::complex<double> value) {
    std::byte* p = v.elem_ptr(i, j);
    if (v.dtype.domain == Domain::Real && value.imag() != 0.0)
        throw Error("store_elem: nonzero imaginary part written to a real view");
    if (v.dtype == dt_s) {
        *reinterpret_cast<float*>(p) = static_cast<float>(value.real());
    } else if (v.dtype == dt_d) {
        *reinterpret_cast<double*>(p) = value.real();
    } else if (v.dtype == dt_c) {
        float* q = reinterpret_cast<float*>(p);
        q[0] = static_cast<float>(value.real());
        q[1] = static_cast<float>(value.imag());
    } else {
        double* q = reinterpret_cast<double*>(p);
        q[0] = value.real();
        q[1] = value.imag();
    }
}

std::pair<const std::byte*, const std::byte*> byte_range(const MatrixView& v) {
    if (v.m == 0 || v.n == 0)
        return {v.base, v.base};
    const std::byte* hi = v.elem_ptr(v.m - 1, v.n - 1) + dtype_size(v.dtype);
    return {v.base, hi};
}

bool ranges_overlap(const MatrixView& a, const MatrixView& b) {
    auto [alo, ahi] = byte_range(a);
    auto [blo, bhi] = byte_range(b);
    return alo < bhi && blo < ahi;
}

} // namespace mdgemm
