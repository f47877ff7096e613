// separability.cpp
#include <ebsim/separability.hpp>

#include <ebsim/linalg.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ebsim::separability {

namespace la = ebsim::linalg;

PptReport ppt_verdict(const states::DensityOperator& rho, double tolerance) {
    if (rho.shape.num_factors() != 2 || rho.shape.dims[0] != 2 || rho.shape.dims[1] != 2)
        throw std::invalid_argument("ppt_verdict: state must be two qubits");
    if (!(tolerance >= 0.0))
        throw std::invalid_argument("ppt_verdict: tolerance must be non-negative");
    const Matrix pt = la::partial_transpose(rho.matrix, rho.shape, 1);
    RealVector spectrum = la::hermitian_eigenvalues(pt);
    const double min_eigenvalue = spectrum(0);
    const Verdict verdict =
        min_eigenvalue < -tolerance ? Verdict::Entangled : Verdict::Separable;
    return PptReport{min_eigenvalue, std::move(spectrum), verdict, tolerance};
}

namespace {

// Windows are 1/2 +- sqrt(radicand); the radicand arrives factored as
// (1/2 - u)(1/2 + u) to keep cancellation out of the threshold cases.
AlphaRange range_from_radicand(RangeKind kind, double radicand) {
    if (radicand < -DEGENERATE_TOL) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        return AlphaRange{kind, true, nan, nan};
    }
    if (radicand <= DEGENERATE_TOL) return AlphaRange{kind, false, 0.5, 0.5};
    const double half_width = std::sqrt(radicand);
    return AlphaRange{kind, false, 0.5 - half_width, 0.5 + half_width};
}

constexpr double DOMAIN_SLACK = 1e-12;

} // namespace

AlphaRange inseparable_alpha_range(double eta) {
    if (!(eta > 0.0 && eta <= 2.0 / 3.0 + DOMAIN_SLACK))
        throw std::invalid_argument("inseparable_alpha_range: eta must lie in (0, 2/3]");
    const double u = (1.0 - eta * eta) / (4.0 * eta * eta);
    return range_from_radicand(RangeKind::InseparableNonlocal, (0.5 - u) * (0.5 + u));
}

AlphaRange local_separable_alpha_range(double eta) {
    if (!(eta > 0.0 && eta <= 1.0 + DOMAIN_SLACK))
        throw std::invalid_argument("local_separable_alpha_range: eta must lie in (0, 1]");
    const double v = (1.0 - eta) / (2.0 * eta);
    return range_from_radicand(RangeKind::SeparableLocal, (0.5 - v) * (0.5 + v));
}

AlphaRange nonlocal_cloning_range() {
    const double half_width = std::sqrt(2.0) / 3.0;
    return AlphaRange{RangeKind::NonlocalCloning, false, 0.5 - half_width, 0.5 + half_width};
}

NonlocalScaling nonlocal_scaling(int m) {
    if (m < 1)
        throw std::invalid_argument("nonlocal_scaling: at least one copy required");
    const double s_nl = (4.0 + m) / (5.0 * m);
    const double gap = s_nl - 1.0 / 3.0;
    ScalingVerdict verdict = ScalingVerdict::Boundary;
    if (gap > SCALING_TOL) verdict = ScalingVerdict::Entangled;
    else if (gap < -SCALING_TOL) verdict = ScalingVerdict::Separable;
    return NonlocalScaling{m, s_nl, verdict, SCALING_TOL};
}

int max_entangled_copies() {
    for (int m = 1;; ++m) {
        if (nonlocal_scaling(m).verdict == ScalingVerdict::Separable) return m - 1;
    }
}

} // namespace ebsim::separability
