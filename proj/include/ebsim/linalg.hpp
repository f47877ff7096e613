// linalg.hpp -- dense complex matrix helpers: construction, tensor products,
// partial trace / partial transpose over named factors, Hermitian eigenvalues.
#pragma once

#include <ebsim/types.hpp>

namespace ebsim::linalg {

// Comparisons of algebraic identities (products, traces, reconstructions).
inline constexpr double ALGEBRAIC_TOL = 1e-10;
// Hermiticity admission for the eigensolver.
inline constexpr double HERMITICITY_TOL = 1e-12;
// Off-diagonal Frobenius norm at which the eigensolver declares convergence.
inline constexpr double EIGEN_TOL = 1e-12;

// ------------------ construction ------------------

Matrix identity(Index n);
Vector basis_ket(Index dim, Index i);
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

// ------------------ diagnostics ------------------

double max_abs_diff(const Matrix& a, const Matrix& b);
bool is_hermitian(const Matrix& m, double tol = HERMITICITY_TOL);

// ------------------ tensor algebra ------------------

// Kronecker product; the left operand owns the slower-varying index.
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

// Trace out every factor not listed in keep; kept factors stay in their
// original relative order. keep must be non-empty, sorted, duplicate-free.
Matrix partial_trace(const Matrix& rho, const FactorShape& shape,
                     const std::vector<Index>& keep);

// Reduced density operator of a pure state on the kept factors; equal to
// partial_trace(psi psi^dag, ...) without forming the global outer product.
Matrix partial_trace_pure(const Vector& psi, const FactorShape& shape,
                          const std::vector<Index>& keep);

// Transpose a single factor in place, leaving the others untouched.
Matrix partial_transpose(const Matrix& rho, const FactorShape& shape, Index factor);

// ------------------ Hermitian eigenvalues ------------------

// Cyclic Jacobi rotations on a Hermitian matrix; ascending eigenvalues.
// Sweeps until the off-diagonal Frobenius norm drops below EIGEN_TOL,
// erroring out after 100 sweeps without convergence.
RealVector hermitian_eigenvalues(const Matrix& h);

} // namespace ebsim::linalg
