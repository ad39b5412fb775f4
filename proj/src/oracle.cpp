#include "mdgemm/oracle.hpp"

#include <cmath>
#include <cstring>
#include <limits>

namespace mdgemm {

namespace {

bool beta_projects(CaseId c) {
    // Cases whose update touches only real data: a complex beta cannot
    // contribute through its imaginary part, so it is projected.
    switch (c) {
    case CaseId::C0:
    case CaseId::C1a:
    case CaseId::C1b:
    case CaseId::C1c:
    case CaseId::C2ab:
        return true;
    default:
        return false;
    }
}

bool alpha_must_be_real(CaseId c) {
    return c != CaseId::C0 && c != CaseId::C3;
}

void check_domains(CaseId case_id, const MatrixView& c, const MatrixView& a,
                   const MatrixView& b) {
    auto dom = [](const MatrixView& v) { return v.dtype.domain; };
    Domain C = dom(c), A = dom(a), B = dom(b);
    auto expect = [&](Domain ec, Domain ea, Domain eb) {
        return C == ec && A == ea && B == eb;
    };
    bool ok = false;
    const Domain R = Domain::Real, X = Domain::Complex;
    switch (case_id) {
    case CaseId::C0: ok = expect(R, R, R); break;
    case CaseId::C1a: ok = expect(R, X, R); break;
    case CaseId::C1b: ok = expect(R, R, X); break;
    case CaseId::C1c: ok = expect(X, R, R); break;
    case CaseId::C2ab: ok = expect(R, X, X); break;
    case CaseId::C2ac: ok = expect(X, X, R); break;
    case CaseId::C2bc: ok = expect(X, R, X); break;
    case CaseId::C3: ok = expect(X, X, X); break;
    }
    if (!ok)
        throw Error("oracle_gemm: operand domains do not match the requested case");
}

struct ResolvedScalars {
    std::complex<double> alpha;
    std::complex<double> beta;
};

ResolvedScalars resolve_scalars(Scalar alpha, Scalar beta, CaseId case_id,
                                Precision comp_prec, Precision c_prec) {
    if (alpha_must_be_real(case_id) && alpha.im != 0.0)
        throw ScalarPolicyError(std::string("case ") + to_string(case_id) +
                                " does not support alpha with a nonzero imaginary part");
    ResolvedScalars out;
    Scalar a = case_id == CaseId::C0 ? project_scalar(alpha, comp_prec)
                                     : typecast_scalar(alpha, Datatype{alpha.dtype.domain, comp_prec});
    Scalar b = beta_projects(case_id)
                   ? project_scalar(beta, c_prec)
                   : typecast_scalar(beta, Datatype{beta.dtype.domain, c_prec});
    out.alpha = a.value();
    out.beta = b.value();
    return out;
}

// Reads element (i, l) of the multiplicand the way the case consumes it:
// cases 1a/1b see only the real part of their complex operand.
std::complex<double> read_a(const MatrixView& a, CaseId c, std::int64_t i, std::int64_t l) {
    std::complex<double> v = load_elem(a, i, l);
    if (c == CaseId::C1a)
        return {v.real(), 0.0};
    return v;
}

std::complex<double> read_b(const MatrixView& b, CaseId c, std::int64_t l, std::int64_t j) {
    std::complex<double> v = load_elem(b, l, j);
    if (c == CaseId::C1b)
        return {v.real(), 0.0};
    return v;
}

} // namespace

Matrix oracle_gemm(Scalar alpha, MatrixView a, MatrixView b, Scalar beta,
                   MatrixView c_in, CaseId case_id, Precision comp_prec) {
    check_domains(case_id, c_in, a, b);
    if (a.m != c_in.m || b.n != c_in.n || a.n != b.m)
        throw Error("oracle_gemm: dimension mismatch");
    ResolvedScalars s = resolve_scalars(alpha, beta, case_id, comp_prec,
                                        c_in.dtype.precision);

    const std::int64_t m = c_in.m, n = c_in.n, k = a.n;
    Matrix out = Matrix::make(c_in.dtype, m, n, StorageKind::ColumnStored);
    MatrixView ov = out.view();
    const bool beta_zero = beta.is_zero();
    const std::size_t half = real_size(c_in.dtype.precision);

    for (std::int64_t j = 0; j < n; ++j) {
        for (std::int64_t i = 0; i < m; ++i) {
            std::complex<double> sum{0.0, 0.0};
            for (std::int64_t l = 0; l < k; ++l)
                sum += read_a(a, case_id, i, l) * read_b(b, case_id, l, j);

            switch (case_id) {
            case CaseId::C2ab:
                sum = {sum.real(), 0.0};
                break;
            case CaseId::C1c: {
                // Case 0 on the real part of C; imaginary half is copied
                // through bitwise, whatever its payload.
                double prev = beta_zero
                                  ? 0.0
                                  : load_elem(real_projection(c_in, Part::Re), i, j).real();
                double re = s.alpha.real() * sum.real() + s.beta.real() * prev;
                store_elem(real_projection(ov, Part::Re), i, j, {re, 0.0});
                std::memcpy(ov.elem_ptr(i, j) + half, c_in.elem_ptr(i, j) + half, half);
                continue;
            }
            default:
                break;
            }

            std::complex<double> prev =
                beta_zero ? std::complex<double>{0.0, 0.0} : load_elem(c_in, i, j);
            std::complex<double> t = s.alpha * sum + s.beta * prev;
            if (c_in.dtype.domain == Domain::Real)
                t = {t.real(), 0.0};
            store_elem(ov, i, j, t);
        }
    }
    return out;
}

Matrix magnitude_matrix(Scalar alpha, MatrixView a, MatrixView b, Scalar beta,
                        MatrixView c_in, CaseId case_id) {
    check_domains(case_id, c_in, a, b);
    ResolvedScalars s = resolve_scalars(alpha, beta, case_id,
                                        Precision::Double, Precision::Double);
    const std::int64_t m = c_in.m, n = c_in.n, k = a.n;
    const bool beta_zero = beta.is_zero();
    Matrix out = Matrix::make(dt_d, m, n, StorageKind::ColumnStored);
    MatrixView ov = out.view();
    for (std::int64_t j = 0; j < n; ++j)
        for (std::int64_t i = 0; i < m; ++i) {
            double acc = 0.0;
            for (std::int64_t l = 0; l < k; ++l)
                acc += std::abs(read_a(a, case_id, i, l)) * std::abs(read_b(b, case_id, l, j));
            double cterm = 0.0;
            if (!beta_zero) {
                std::complex<double> prev =
                    case_id == CaseId::C1c
                        ? std::complex<double>{load_elem(real_projection(c_in, Part::Re), i, j).real(), 0.0}
                        : load_elem(c_in, i, j);
                cterm = std::abs(s.beta * prev);
            }
            store_elem(ov, i, j, {std::abs(s.alpha) * acc + cterm, 0.0});
        }
    return out;
}

Matrix tolerance(const ErrorBoundParams& params) {
    MatrixView mag = params.magnitude.view();
    Matrix out = Matrix::make(dt_d, mag.m, mag.n, StorageKind::ColumnStored);
    MatrixView ov = out.view();
    const double factor = 8.0 * static_cast<double>(params.k + 2) * params.eps_comp +
                          4.0 * params.eps_out;
    for (std::int64_t j = 0; j < mag.n; ++j)
        for (std::int64_t i = 0; i < mag.m; ++i)
            store_elem(ov, i, j, {factor * load_elem(mag, i, j).real(), 0.0});
    return out;
}

double max_violation(const MatrixView& c_impl, const MatrixView& c_ref,
                     const MatrixView& tol) {
    if (c_impl.m != c_ref.m || c_impl.n != c_ref.n || c_impl.dtype != c_ref.dtype)
        throw Error("max_violation: shape or datatype mismatch");
    if (tol.m != c_impl.m || tol.n != c_impl.n)
        throw Error("max_violation: tolerance shape mismatch");
    double worst = 0.0;
    const double inf = std::numeric_limits<double>::infinity();
    for (std::int64_t j = 0; j < c_impl.n; ++j)
        for (std::int64_t i = 0; i < c_impl.m; ++i) {
            double diff = std::abs(load_elem(c_impl, i, j) - load_elem(c_ref, i, j));
            double t = load_elem(tol, i, j).real();
            double v;
            if (std::isnan(diff) || std::isnan(t))
                v = inf;
            else if (diff == 0.0)
                v = 0.0;
            else if (t == 0.0)
                v = inf;
            else
                v = diff / t;
            if (v > worst)
                worst = v;
        }
    return worst;
}

} // namespace mdgemm
