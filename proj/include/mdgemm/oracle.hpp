#pragma once

#include "mdgemm/dtypes.hpp"
#include "mdgemm/matrix.hpp"

namespace mdgemm {

// Brute-force reference for C := alpha * op(A, B) + beta * C under the given
// mixed-domain case. Accumulates in double (complex<double> when the case
// calls for complex arithmetic) regardless of comp_prec, applies the scalar
// rules for the case (imaginary alpha rejected where unsupported, beta
// projected to real where the case updates only real data), and rounds once
// into C's storage datatype. beta == 0 never reads c_in; case 1c copies the
// imaginary half of C through bitwise.
//
// The result is a fresh column-stored matrix in c_in's datatype.
Matrix oracle_gemm(Scalar alpha, MatrixView a, MatrixView b, Scalar beta,
                   MatrixView c_in, CaseId case_id, Precision comp_prec);

// Per-element magnitude estimate |alpha| * (|A| |B|)_ij + |beta * C_ij| used
// to scale error tolerances. Reads the same operand parts the reference
// computation reads (e.g. only Re(A) for case 1a, nothing of C when
// beta == 0), so poisoned never-read regions cannot contaminate the bound.
Matrix magnitude_matrix(Scalar alpha, MatrixView a, MatrixView b, Scalar beta,
                        MatrixView c_in, CaseId case_id);

struct ErrorBoundParams {
    std::int64_t k = 0;      // inner dimension of the operation
    double eps_comp = 0.0;   // unit roundoff of the computation precision
    double eps_out = 0.0;    // unit roundoff of C's storage precision
    Matrix magnitude;        // m x n double matrix from magnitude_matrix
};

// tol_ij = 8 * (k + 2) * eps_comp * magnitude_ij + 4 * eps_out * magnitude_ij
Matrix tolerance(const ErrorBoundParams& params);

// max over elements of |c_impl - c_ref| / tol, with 0/0 counted as 0 and any
// NaN (in the difference or the tolerance) as +infinity. A run conforms when
// this is <= 1.
double max_violation(const MatrixView& c_impl, const MatrixView& c_ref,
                     const MatrixView& tol);

} // namespace mdgemm
