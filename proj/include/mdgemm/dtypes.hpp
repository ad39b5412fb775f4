#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mdgemm {

// Errors thrown on precondition violations. ScalarPolicyError is separate so
// callers can tell "this alpha is not representable for this case" apart from
// plain misuse of the API.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ScalarPolicyError : Error {
    explicit ScalarPolicyError(const std::string& msg) : Error(msg) {}
};

enum class Domain : std::uint8_t { Real, Complex };
enum class Precision : std::uint8_t { Single, Double };

constexpr double eps_of(Precision p) {
    // Unit roundoff of the significand: 2^-24 single, 2^-53 double.
    return p == Precision::Single ? 0x1p-24 : 0x1p-53;
}

constexpr std::size_t real_size(Precision p) {
    return p == Precision::Single ? sizeof(float) : sizeof(double);
}

struct Datatype {
    Domain domain = Domain::Real;
    Precision precision = Precision::Double;

    friend constexpr bool operator==(Datatype a, Datatype b) {
        return a.domain == b.domain && a.precision == b.precision;
    }
    friend constexpr bool operator!=(Datatype a, Datatype b) { return !(a == b); }
};

inline constexpr Datatype dt_s{Domain::Real, Precision::Single};
inline constexpr Datatype dt_d{Domain::Real, Precision::Double};
inline constexpr Datatype dt_c{Domain::Complex, Precision::Single};
inline constexpr Datatype dt_z{Domain::Complex, Precision::Double};

constexpr std::size_t dtype_size(Datatype t) {
    return real_size(t.precision) * (t.domain == Domain::Complex ? 2 : 1);
}

// One-letter names: s, d, c, z.
char dtype_letter(Datatype t);
Datatype dtype_from_letter(char ch);

char precision_letter(Precision p);
Precision precision_from_letter(char ch);

std::string to_string(Datatype t);

// Mixed-domain case of a GEMM operation, keyed by the domains of (C, A, B).
enum class CaseId : std::uint8_t { C0, C1a, C1b, C1c, C2ab, C2ac, C2bc, C3 };

const char* to_string(CaseId c);

// A scalar with an attached datatype. Values are held as doubles; a Single
// datatype means the payload is exactly representable in float (typecast
// rounds on conversion). Real domain implies im == 0.
struct Scalar {
    double re = 0.0;
    double im = 0.0;
    Datatype dtype = dt_d;

    bool is_real() const { return dtype.domain == Domain::Real; }
    bool is_zero() const { return re == 0.0 && im == 0.0; }
    bool is_one() const { return re == 1.0 && im == 0.0; }

    std::complex<double> value() const { return {re, im}; }

    static Scalar real_value(double v, Precision p = Precision::Double);
    static Scalar complex_value(double r, double i, Precision p = Precision::Double);
};

// Converts a scalar to another datatype, rounding the payload to the target
// precision. Complex -> real requires im == 0 (use explicit projection
// elsewhere when discarding the imaginary part is intended).
Scalar typecast_scalar(Scalar s, Datatype target);

// Projection of a scalar onto the real domain: keeps re, drops im.
Scalar project_scalar(Scalar s, Precision p);

enum class Part : std::uint8_t { Re, Im };
enum class FlattenAxis : std::uint8_t { Rows, Cols };
enum class StorageKind : std::uint8_t { ColumnStored, RowStored, GeneralStored };

// Non-owning strided matrix view. Strides are in elements of `dtype` and must
// be positive; the (rs, cs) pair must address each (i, j) pair distinctly,
// which is validated conservatively at construction. comp_prec is consulted
// only on the output operand of a GEMM call; target_dtype is informational
// metadata filled in by the planner.
struct MatrixView {
    std::byte* base = nullptr;
    std::int64_t m = 0;
    std::int64_t n = 0;
    std::int64_t rs = 0;
    std::int64_t cs = 0;
    Datatype dtype = dt_d;
    bool conj = false;
    Precision comp_prec = Precision::Double;
    Datatype target_dtype = dt_d;

    static MatrixView make(void* base, std::int64_t m, std::int64_t n,
                           std::int64_t rs, std::int64_t cs, Datatype dtype);

    std::byte* elem_ptr(std::int64_t i, std::int64_t j) const {
        return base + static_cast<std::size_t>(i * rs + j * cs) * dtype_size(dtype);
    }

    MatrixView with_conj(bool c) const {
        MatrixView v = *this;
        v.conj = c;
        return v;
    }

    MatrixView with_comp_prec(Precision p) const {
        MatrixView v = *this;
        v.comp_prec = p;
        return v;
    }
};

// Swaps the roles of rows and columns without moving data.
MatrixView induced_transpose(MatrixView v);

// Real or imaginary part of a complex view as a real view with doubled
// strides. Errors on real input.
MatrixView real_projection(MatrixView v, Part part);

// Whether the complex view can be reinterpreted as a real matrix with the
// real/imaginary components forming extra rows (needs rs == 1) or extra
// columns (needs cs == 1).
bool can_flatten(const MatrixView& v, FlattenAxis axis);

// Reinterprets a complex m x n view as real 2m x n (Rows) or m x 2n (Cols).
// Errors when the required unit stride is absent or the input is real.
MatrixView real_flatten(MatrixView v, FlattenAxis axis);

// Sub-view covering rows [i0, i0+mm) and columns [j0, j0+nn).
MatrixView slice(MatrixView v, std::int64_t i0, std::int64_t j0,
                 std::int64_t mm, std::int64_t nn);

StorageKind storage_kind(const MatrixView& v);

// Reads element (i, j) widened to complex<double>, honoring the conj flag.
std::complex<double> load_elem(const MatrixView& v, std::int64_t i, std::int64_t j);

// Stores a complex<double> value into element (i, j), rounding to the view's
// datatype. Writing a nonzero imaginary part to a real view is an error.
void store_elem(const MatrixView& v, std::int64_t i, std::int64_t j,
                std::complex<double> value);

// Byte range [lo, hi) spanned by the addressable elements of the view.
// Conservative aliasing test: two views conflict if their ranges overlap.
std::pair<const std::byte*, const std::byte*> byte_range(const MatrixView& v);
bool ranges_overlap(const MatrixView& a, const MatrixView& b);

} // namespace mdgemm
