// states.hpp -- density operators over factor shapes, the two-qubit input
// family alpha|00> + beta|11>, Bloch extraction, fidelity, and projection
// onto the scaled (depolarized-pure) family s P + (1-s)/4 I.
#pragma once

#include <ebsim/linalg.hpp>
#include <ebsim/types.hpp>

namespace ebsim::states {

inline constexpr double DENSITY_TRACE_TOL = 1e-10;
inline constexpr double DENSITY_POSITIVITY_TOL = 1e-10;
inline constexpr double STATE_NORM_TOL = 1e-10;

// Trace-one positive operator together with its tensor-factor layout.
struct DensityOperator {
    Matrix matrix;
    FactorShape shape;

    // Full validation: Hermiticity, unit trace, eigenvalue floor.
    static DensityOperator checked(Matrix m, FactorShape s);
    // Projector onto a unit vector; positivity holds by construction.
    static DensityOperator from_pure(const Vector& psi, FactorShape s);
};

// alpha = sqrt(alpha_sq), beta = sqrt(1 - alpha_sq), both non-negative.
struct EntangledInput {
    double alpha_sq;
    double alpha;
    double beta;

    static EntangledInput from_alpha_sq(double alpha_sq);
};

struct BlochVector {
    double x;
    double y;
    double z;
};

// Least-squares projection of a two-qubit state onto s P + (1-s)/4 I.
struct ScaledForm {
    double s;
    double residual;
};

// The broadcast input alpha|00> + beta|11> as a 4-vector, factors [2,2].
Vector entangled_input_state(double alpha_sq);

BlochVector bloch_vector(const Matrix& rho);

// (I + r . sigma) / 2; inverse of bloch_vector for unit-trace qubit states.
Matrix density_from_bloch(const BlochVector& r);

// <psi| rho |psi> for a pure reference state.
double fidelity_pure(const Vector& psi, const Matrix& rho);

// Member of the scaled family at mixing weight s around the projector on psi.
DensityOperator scaled_state(const Vector& psi, double s);

// Closed-form projection: s = (tr(rho P) - 1/4) / (3/4), plus the Frobenius
// distance from rho to the fitted family member.
ScaledForm fit_scaled_form(const DensityOperator& rho, const Vector& psi);

} // namespace ebsim::states
