// Partial-transpose verdicts, closed-form alpha^2 windows, copy scaling.
#include <doctest.h>

#include <ebsim/linalg.hpp>
#include <ebsim/separability.hpp>
#include <ebsim/states.hpp>

#include "oracles.hpp"

#include <cmath>

using namespace ebsim;
using separability::AlphaRange;
using separability::inseparable_alpha_range;
using separability::local_separable_alpha_range;
using separability::max_entangled_copies;
using separability::nonlocal_cloning_range;
using separability::nonlocal_scaling;
using separability::ppt_verdict;
using separability::RangeKind;
using separability::ScalingVerdict;
using separability::Verdict;

namespace {

Vector bell_ket() {
    Vector psi = Vector::Zero(4);
    psi(0) = 1.0 / std::sqrt(2.0);
    psi(3) = 1.0 / std::sqrt(2.0);
    return psi;
}

states::DensityOperator bell_state() {
    return states::DensityOperator::from_pure(bell_ket(), FactorShape{2, 2});
}

} // namespace

TEST_CASE("ppt verdict separates Bell from product states") {
    const auto bell = ppt_verdict(bell_state());
    CHECK(bell.verdict == Verdict::Entangled);
    CHECK(bell.min_eigenvalue == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(bell.spectrum.size() == 4);
    CHECK(bell.spectrum(1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(bell.spectrum.sum() == doctest::Approx(1.0).epsilon(1e-10));

    auto gen = oracles::rng(301);
    const Matrix a = oracles::random_density(2, gen);
    const Matrix b = oracles::random_density(2, gen);
    const auto product =
        ppt_verdict(states::DensityOperator::checked(linalg::kron(a, b), FactorShape{2, 2}));
    CHECK(product.verdict == Verdict::Separable);
    CHECK(product.min_eigenvalue >= -1e-12);
    CHECK(product.spectrum.sum() == doctest::Approx(1.0).epsilon(1e-10));

    const Matrix mixed = Matrix::Identity(4, 4) / 4.0;
    const auto report = ppt_verdict(states::DensityOperator::checked(mixed, FactorShape{2, 2}));
    CHECK(report.verdict == Verdict::Separable);
    CHECK(report.min_eigenvalue == doctest::Approx(0.25).epsilon(1e-12));

    CHECK(ppt_verdict(states::DensityOperator::checked(mixed, FactorShape{2, 2}), 0.3).verdict ==
          Verdict::Separable);
    CHECK(ppt_verdict(bell_state(), 0.6).verdict == Verdict::Separable);

    const Matrix qutrit = oracles::random_density(3, gen);
    CHECK_THROWS_AS(
        ppt_verdict(states::DensityOperator::checked(linalg::kron(a, qutrit), FactorShape{2, 3})),
        std::invalid_argument);
    const Matrix three = linalg::kron(linalg::kron(a, b), a);
    CHECK_THROWS_AS(
        ppt_verdict(states::DensityOperator::checked(three, FactorShape{2, 2, 2})),
        std::invalid_argument);
    CHECK_THROWS_AS(ppt_verdict(bell_state(), -1.0), std::invalid_argument);
}

TEST_CASE("ppt verdict is stable under local basis changes") {
    auto gen = oracles::rng(302);
    const auto reference = ppt_verdict(bell_state());
    for (int rep = 0; rep < 5; ++rep) {
        const Matrix u1 = oracles::random_unitary(2, gen);
        const Matrix u2 = oracles::random_unitary(2, gen);
        const Matrix u = linalg::kron(u1, u2);
        const Matrix rotated = u * bell_state().matrix * u.adjoint();
        const auto report =
            ppt_verdict(states::DensityOperator::checked(rotated, FactorShape{2, 2}));
        CHECK(report.verdict == reference.verdict);
        for (Index i = 0; i < 4; ++i)
            CHECK(report.spectrum(i) == doctest::Approx(reference.spectrum(i)).epsilon(1e-9));
    }
}

TEST_CASE("scaled states flip separability exactly at s = 1/3") {
    for (const double s : {0.0, 0.2, 1.0 / 3.0 - 1e-6, 1.0 / 3.0, 1.0 / 3.0 + 1e-6, 0.6, 1.0}) {
        CAPTURE(s);
        const auto report = ppt_verdict(states::scaled_state(bell_ket(), s));
        CHECK(report.min_eigenvalue == doctest::Approx((1.0 - 3.0 * s) / 4.0).epsilon(1e-10));
        const bool expect_entangled = s > 1.0 / 3.0 + 1e-9;
        CHECK((report.verdict == Verdict::Entangled) == expect_entangled);
    }

    // Bisection over s locates the verdict flip at 1/3.
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-8) {
        const double mid = 0.5 * (lo + hi);
        if (ppt_verdict(states::scaled_state(bell_ket(), mid)).verdict == Verdict::Entangled)
            hi = mid;
        else
            lo = mid;
    }
    CHECK(0.5 * (lo + hi) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("nonlocal inseparability window") {
    const AlphaRange top = inseparable_alpha_range(2.0 / 3.0);
    CHECK(top.kind == RangeKind::InseparableNonlocal);
    CHECK_FALSE(top.empty);
    CHECK(top.lo == doctest::Approx(0.10968762510010013).epsilon(1e-14));
    CHECK(top.hi == doctest::Approx(0.89031237489989987).epsilon(1e-14));

    // The threshold reduction factor contracts the window to alpha^2 = 1/2.
    const AlphaRange point = inseparable_alpha_range(1.0 / std::sqrt(3.0));
    CHECK_FALSE(point.empty);
    CHECK(point.lo == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(point.hi == doctest::Approx(0.5).epsilon(1e-12));

    CHECK(inseparable_alpha_range(0.55).empty);
    CHECK(inseparable_alpha_range(0.5).empty);
    CHECK(inseparable_alpha_range(0.3).empty);

    // Window edges solve alpha beta eta^2 = (1 - eta^2) / 4.
    for (const double eta : {0.59, 0.62, 0.65, 2.0 / 3.0}) {
        CAPTURE(eta);
        const AlphaRange r = inseparable_alpha_range(eta);
        REQUIRE_FALSE(r.empty);
        CHECK(r.lo + r.hi == doctest::Approx(1.0).epsilon(1e-14));
        const double alpha_beta = std::sqrt(r.lo * r.hi);
        CHECK(alpha_beta * eta * eta ==
              doctest::Approx((1.0 - eta * eta) / 4.0).epsilon(1e-12));
    }

    // The window widens monotonically with eta.
    double previous_width = -1.0;
    for (int k = 0; k <= 16; ++k) {
        const double eta = 1.0 / std::sqrt(3.0) + k * (2.0 / 3.0 - 1.0 / std::sqrt(3.0)) / 16.0;
        const AlphaRange r = inseparable_alpha_range(eta);
        REQUIRE_FALSE(r.empty);
        const double width = r.hi - r.lo;
        CHECK(width >= previous_width);
        previous_width = width;
    }

    CHECK_THROWS_AS(inseparable_alpha_range(0.0), std::invalid_argument);
    CHECK_THROWS_AS(inseparable_alpha_range(0.7), std::invalid_argument);
    CHECK_THROWS_AS(inseparable_alpha_range(1.2), std::invalid_argument);
}

TEST_CASE("local separability window") {
    const AlphaRange top = local_separable_alpha_range(2.0 / 3.0);
    CHECK(top.kind == RangeKind::SeparableLocal);
    CHECK_FALSE(top.empty);
    CHECK(top.lo == doctest::Approx(0.06698729810778065).epsilon(1e-13));
    CHECK(top.hi == doctest::Approx(0.9330127018922193).epsilon(1e-13));

    const AlphaRange nice = local_separable_alpha_range(5.0 / 9.0);
    CHECK(nice.lo == doctest::Approx(0.2).epsilon(1e-13));
    CHECK(nice.hi == doctest::Approx(0.8).epsilon(1e-13));

    const AlphaRange full = local_separable_alpha_range(1.0);
    CHECK(full.lo == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(full.hi == doctest::Approx(1.0).epsilon(1e-15));

    const AlphaRange point = local_separable_alpha_range(0.5);
    CHECK_FALSE(point.empty);
    CHECK(point.lo == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(point.hi == doctest::Approx(0.5).epsilon(1e-12));

    CHECK(local_separable_alpha_range(0.49).empty);
    CHECK(local_separable_alpha_range(0.2).empty);

    // Window edges solve alpha beta eta = (1 - eta) / 2.
    for (const double eta : {0.52, 5.0 / 9.0, 0.6, 2.0 / 3.0}) {
        CAPTURE(eta);
        const AlphaRange r = local_separable_alpha_range(eta);
        REQUIRE_FALSE(r.empty);
        const double alpha_beta = std::sqrt(r.lo * r.hi);
        CHECK(alpha_beta * eta == doctest::Approx((1.0 - eta) / 2.0).epsilon(1e-12));
    }

    CHECK_THROWS_AS(local_separable_alpha_range(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(local_separable_alpha_range(1.5), std::invalid_argument);
}

TEST_CASE("whole-pair cloning window") {
    const AlphaRange fixed = nonlocal_cloning_range();
    CHECK(fixed.kind == RangeKind::NonlocalCloning);
    CHECK_FALSE(fixed.empty);
    CHECK(fixed.lo == doctest::Approx(0.028595479208968268).epsilon(1e-12));
    CHECK(fixed.hi == doctest::Approx(0.9714045207910317).epsilon(1e-12));

    // Strictly wider than the local-copier window at the top reduction factor.
    const AlphaRange local_copier = inseparable_alpha_range(2.0 / 3.0);
    CHECK(fixed.lo < local_copier.lo);
    CHECK(fixed.hi > local_copier.hi);
}

TEST_CASE("copy-number scaling of the nonlocal pairs") {
    const auto one = nonlocal_scaling(1);
    CHECK(one.s_nl == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(one.verdict == ScalingVerdict::Entangled);

    const auto two = nonlocal_scaling(2);
    CHECK(two.s_nl == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(two.verdict == ScalingVerdict::Entangled);

    CHECK(nonlocal_scaling(5).verdict == ScalingVerdict::Entangled);

    const auto six = nonlocal_scaling(6);
    CHECK(six.s_nl == 1.0 / 3.0);
    CHECK(six.verdict == ScalingVerdict::Boundary);

    const auto seven = nonlocal_scaling(7);
    CHECK(seven.s_nl == doctest::Approx(11.0 / 35.0).epsilon(1e-14));
    CHECK(seven.verdict == ScalingVerdict::Separable);

    for (int m = 1; m <= 10; ++m) CHECK(nonlocal_scaling(m).s_nl == (4.0 + m) / (5.0 * m));

    CHECK_THROWS_AS(nonlocal_scaling(0), std::invalid_argument);
    CHECK_THROWS_AS(nonlocal_scaling(-2), std::invalid_argument);
    CHECK(max_entangled_copies() == 6);

    // The closed-form weight agrees with a direct verdict on the scaled state.
    for (int m = 1; m <= 12; ++m) {
        CAPTURE(m);
        const auto scaling = nonlocal_scaling(m);
        const auto direct = ppt_verdict(states::scaled_state(bell_ket(), scaling.s_nl));
        CHECK((direct.verdict == Verdict::Entangled) ==
              (scaling.verdict == ScalingVerdict::Entangled));
    }
}
