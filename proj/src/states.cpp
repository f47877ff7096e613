// states.cpp
#include <ebsim/states.hpp>

#include <cmath>

namespace ebsim::states {

DensityOperator DensityOperator::checked(Matrix m, FactorShape s) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("DensityOperator: matrix must be square");
    if (m.rows() != s.total_dim())
        throw std::invalid_argument("DensityOperator: factor shape does not match matrix dimension");
    if (!linalg::is_hermitian(m))
        throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
    if (std::abs(m.trace() - Complex(1.0, 0.0)) > DENSITY_TRACE_TOL)
        throw std::invalid_argument("DensityOperator: trace is not one");
    const RealVector evals = linalg::hermitian_eigenvalues(m);
    if (evals(0) < -DENSITY_POSITIVITY_TOL)
        throw std::invalid_argument("DensityOperator: negative eigenvalue beyond tolerance");
    return DensityOperator{std::move(m), std::move(s)};
}

DensityOperator DensityOperator::from_pure(const Vector& psi, FactorShape s) {
    if (psi.size() != s.total_dim())
        throw std::invalid_argument("DensityOperator: factor shape does not match vector dimension");
    if (std::abs(psi.norm() - 1.0) > STATE_NORM_TOL)
        throw std::invalid_argument("DensityOperator: state vector is not normalized");
    return DensityOperator{psi * psi.adjoint(), std::move(s)};
}

EntangledInput EntangledInput::from_alpha_sq(double alpha_sq) {
    if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0))
        throw std::invalid_argument("EntangledInput: alpha_sq must lie in [0, 1]");
    return EntangledInput{alpha_sq, std::sqrt(alpha_sq), std::sqrt(1.0 - alpha_sq)};
}

Vector entangled_input_state(double alpha_sq) {
    const EntangledInput in = EntangledInput::from_alpha_sq(alpha_sq);
    Vector psi = Vector::Zero(4);
    psi(0) = Complex(in.alpha, 0.0);
    psi(3) = Complex(in.beta, 0.0);
    return psi;
}

BlochVector bloch_vector(const Matrix& rho) {
    if (rho.rows() != 2 || rho.cols() != 2)
        throw std::invalid_argument("bloch_vector: 2x2 matrix required");
    return BlochVector{(rho * linalg::pauli_x()).trace().real(),
                       (rho * linalg::pauli_y()).trace().real(),
                       (rho * linalg::pauli_z()).trace().real()};
}

Matrix density_from_bloch(const BlochVector& r) {
    return 0.5 * (linalg::identity(2) + r.x * linalg::pauli_x() + r.y * linalg::pauli_y() +
                  r.z * linalg::pauli_z());
}

double fidelity_pure(const Vector& psi, const Matrix& rho) {
    if (rho.rows() != rho.cols() || psi.size() != rho.rows())
        throw std::invalid_argument("fidelity_pure: dimension mismatch");
    return (psi.adjoint() * rho * psi)(0, 0).real();
}

DensityOperator scaled_state(const Vector& psi, double s) {
    if (psi.size() != 4)
        throw std::invalid_argument("scaled_state: two-qubit pure state required");
    if (!(s >= -1.0 / 3.0 - 1e-12 && s <= 1.0 + 1e-12))
        throw std::invalid_argument("scaled_state: s outside [-1/3, 1]");
    const Matrix m = s * (psi * psi.adjoint()) + (1.0 - s) / 4.0 * linalg::identity(4);
    return DensityOperator::checked(m, FactorShape{2, 2});
}

ScaledForm fit_scaled_form(const DensityOperator& rho, const Vector& psi) {
    if (rho.matrix.rows() != 4 || psi.size() != 4)
        throw std::invalid_argument("fit_scaled_form: two-qubit state and reference required");
    const Matrix projector = psi * psi.adjoint();
    const double s = ((rho.matrix * projector).trace().real() - 0.25) / 0.75;
    const Matrix fitted = s * projector + (1.0 - s) / 4.0 * linalg::identity(4);
    return ScaledForm{s, (rho.matrix - fitted).norm()};
}

} // namespace ebsim::states
