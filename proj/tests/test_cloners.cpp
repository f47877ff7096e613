// Cloner construction, constraint checking, feasibility search, and
// reduction-factor measurement.
#include <doctest.h>

#include <ebsim/cloners.hpp>
#include <ebsim/linalg.hpp>
#include <ebsim/states.hpp>

#include "oracles.hpp"

#include <cmath>

using namespace ebsim;
using cloners::build_general_cloner;
using cloners::build_gisin_massar_3;
using cloners::build_simple_cloner;
using cloners::check_general_constraints;
using cloners::check_simple_constraints;
using cloners::CloneIsometry;
using cloners::GeneralSearchOptions;
using cloners::isometry_residual;
using cloners::measured_reduction_factor;
using cloners::symmetric_three_qubit;

namespace {

Matrix clone_state(const CloneIsometry& iso, const Vector& psi, Index which) {
    std::vector<Index> dims(static_cast<size_t>(iso.num_copies), 2);
    dims.push_back(iso.ancilla_dim);
    const Vector out = iso.matrix * psi;
    return linalg::partial_trace(out * out.adjoint(), FactorShape(dims), {which});
}

Vector normalized_ket(Complex c0, Complex c1) {
    Vector v(2);
    v(0) = c0;
    v(1) = c1;
    return v / v.norm();
}

} // namespace

TEST_CASE("simple cloner coefficients and domain") {
    const auto top = build_simple_cloner(2.0 / 3.0);
    CHECK(top.spec.a == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
    CHECK(top.spec.b == doctest::Approx(std::sqrt(1.0 / 6.0)).epsilon(1e-14));
    CHECK(top.spec.eta == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(isometry_residual(top.isometry) <= 1e-12);

    // At the top of the domain the tilded vectors collapse onto the untilded
    // pair: x = 1.
    const auto& overlaps = top.spec.overlaps;
    const auto bt_a = std::find_if(overlaps.begin(), overlaps.end(),
                                   [](const auto& o) { return o.name == "Bt.A"; });
    REQUIRE(bt_a != overlaps.end());
    CHECK(std::abs(bt_a->value) == doctest::Approx(1.0).epsilon(1e-7));

    const auto mid = build_simple_cloner(0.6);
    const auto mid_bt_a = std::find_if(mid.spec.overlaps.begin(), mid.spec.overlaps.end(),
                                       [](const auto& o) { return o.name == "Bt.A"; });
    REQUIRE(mid_bt_a != mid.spec.overlaps.end());
    CHECK(mid_bt_a->value.real() == doctest::Approx(0.8660254037844386).epsilon(1e-14));

    CHECK_THROWS_AS(build_simple_cloner(0.7), std::invalid_argument);
    CHECK_THROWS_AS(build_simple_cloner(0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_simple_cloner(-0.1), std::invalid_argument);
}

TEST_CASE("simple cloner satisfies its constraint system across the domain") {
    for (const double eta : {0.35, 0.40, 0.45, 0.50, 0.55, 0.60, 0.65, 2.0 / 3.0}) {
        CAPTURE(eta);
        const auto cloner = build_simple_cloner(eta);
        const auto report = check_simple_constraints(cloner.spec, cloner.ancilla);
        CHECK(report.pass);
        CHECK(report.max_residual <= 1e-12);
        CHECK(report.residuals.size() == 12);
    }
}

TEST_CASE("constraint checker flags an injected overlap violation") {
    auto cloner = build_simple_cloner(0.6);
    auto broken = cloner.ancilla;
    // Tilt B toward A: unit norm is preserved but <A|B> becomes 0.1.
    broken.b = 0.1 * linalg::basis_ket(4, 0) + std::sqrt(0.99) * linalg::basis_ket(4, 1);
    const auto report = check_simple_constraints(cloner.spec, broken);
    CHECK_FALSE(report.pass);
    CHECK(report.max_residual == doctest::Approx(0.1).epsilon(1e-12));
    for (const auto& r : report.residuals) {
        if (r.name == "overlap-A-B") CHECK(r.value == doctest::Approx(0.1).epsilon(1e-12));
    }
}

TEST_CASE("simple cloner clones symmetrically and shrinks isotropically") {
    const auto cloner = build_simple_cloner(0.6);
    const Vector psi = normalized_ket(Complex(0.6, 0.0), Complex(0.0, 0.8));
    const Matrix first = clone_state(cloner.isometry, psi, 0);
    const Matrix second = clone_state(cloner.isometry, psi, 1);
    CHECK(linalg::max_abs_diff(first, second) <= 1e-12);

    CHECK(measured_reduction_factor(cloner.isometry) == doctest::Approx(0.6).epsilon(1e-12));

    // Universal cloning fidelity (1 + eta) / 2 for any pure input.
    const auto top = build_simple_cloner(2.0 / 3.0);
    for (const Vector& input : {normalized_ket(1.0, 0.0), normalized_ket(0.6, 0.8),
                                normalized_ket(Complex(1.0, 0.0), Complex(0.0, 1.0))}) {
        const Matrix clone = clone_state(top.isometry, input, 0);
        CHECK(states::fidelity_pure(input, clone) == doctest::Approx(5.0 / 6.0).epsilon(1e-10));
    }
}

TEST_CASE("general cloner at c = 0 reuses the one-parameter realization") {
    for (const double a : {std::sqrt(2.0 / 3.0), std::sqrt(0.6)}) {
        CAPTURE(a);
        const auto result = build_general_cloner(a, 0.0);
        REQUIRE(result.cloner.has_value());
        CHECK(result.restarts_used == 0);
        const auto simple = build_simple_cloner(a * a);
        CHECK(linalg::max_abs_diff(result.cloner->isometry.matrix, simple.isometry.matrix) == 0.0);
        CHECK(check_general_constraints(result.cloner->spec, result.cloner->ancilla).pass);
    }
}

TEST_CASE("general cloner search finds a realization beyond the c = 0 slice") {
    const double a = std::sqrt(0.62);
    const double c = std::sqrt(0.02);
    const auto result = build_general_cloner(a, c);
    REQUIRE(result.cloner.has_value());
    const auto& cloner = *result.cloner;

    CHECK(cloner.spec.eta == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(cloner.spec.b == doctest::Approx(std::sqrt(0.18)).epsilon(1e-12));
    CHECK(cloner.spec.ancilla_dim == 6);

    const auto report = check_general_constraints(cloner.spec, cloner.ancilla);
    CHECK(report.pass);
    CHECK(report.max_residual <= 1e-10);

    CHECK(isometry_residual(cloner.isometry) <= 1e-10);
    CHECK(measured_reduction_factor(cloner.isometry) == doctest::Approx(0.6).epsilon(1e-9));

    const Vector psi = normalized_ket(Complex(0.8, 0.1), Complex(0.3, -0.5));
    const Matrix first = clone_state(cloner.isometry, psi, 0);
    const Matrix second = clone_state(cloner.isometry, psi, 1);
    CHECK(linalg::max_abs_diff(first, second) <= 1e-9);

    // Seeded search: an identical call reproduces the realization exactly.
    const auto again = build_general_cloner(a, c);
    REQUIRE(again.cloner.has_value());
    CHECK(linalg::max_abs_diff(again.cloner->isometry.matrix, cloner.isometry.matrix) == 0.0);
    CHECK(again.restarts_used == result.restarts_used);
}

TEST_CASE("general cloner search reports infeasibility honestly") {
    // Demanding a reduction factor above what the amplitudes allow:
    // the residual target requires an overlap sum larger than two.
    GeneralSearchOptions small_budget;
    small_budget.restarts = 3;
    small_budget.iterations = 300;
    const auto result = build_general_cloner(0.95, 0.1, small_budget);
    CHECK_FALSE(result.cloner.has_value());
    CHECK(result.best_residual > 1e-3);
    CHECK(result.restarts_used == 3);

    CHECK_THROWS_AS(build_general_cloner(0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(build_general_cloner(0.3, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(build_general_cloner(1.2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_general_cloner(0.9, -0.1), std::invalid_argument);
}

TEST_CASE("three-copy cloner has reduction factor 5/9 and fidelity 7/9") {
    const auto cloner = build_gisin_massar_3();
    CHECK(cloner.spec.eta == doctest::Approx(5.0 / 9.0).epsilon(1e-14));
    CHECK(isometry_residual(cloner.isometry) <= 1e-12);
    CHECK(measured_reduction_factor(cloner.isometry) == doctest::Approx(5.0 / 9.0).epsilon(1e-10));

    for (const Vector& input :
         {normalized_ket(1.0, 0.0), normalized_ket(Complex(0.5, 0.5), Complex(0.2, -0.3))}) {
        for (Index which : {0, 1, 2}) {
            const Matrix clone = clone_state(cloner.isometry, input, which);
            CHECK(states::fidelity_pure(input, clone) == doctest::Approx(7.0 / 9.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("symmetric three-qubit states") {
    const Vector s0 = symmetric_three_qubit(0);
    CHECK(s0(0).real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s0.norm() == doctest::Approx(1.0).epsilon(1e-15));

    const Vector s1 = symmetric_three_qubit(1);
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    for (Index idx : {1, 2, 4}) CHECK(s1(idx).real() == doctest::Approx(inv_sqrt3).epsilon(1e-15));
    for (Index idx : {0, 3, 5, 6, 7}) CHECK(std::abs(s1(idx)) == 0.0);

    const Vector s2 = symmetric_three_qubit(2);
    for (Index idx : {3, 5, 6}) CHECK(s2(idx).real() == doctest::Approx(inv_sqrt3).epsilon(1e-15));

    const Vector s3 = symmetric_three_qubit(3);
    CHECK(s3(7).real() == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(symmetric_three_qubit(4), std::invalid_argument);
    CHECK_THROWS_AS(symmetric_three_qubit(-1), std::invalid_argument);
}

TEST_CASE("reduction-factor measurement rejects non-isometries") {
    auto cloner = build_simple_cloner(0.5);
    auto mangled = cloner.isometry;
    mangled.matrix *= 1.01;
    CHECK_THROWS_AS(measured_reduction_factor(mangled), std::invalid_argument);

    auto wrong_copies = cloner.isometry;
    wrong_copies.num_copies = 4;
    CHECK_THROWS_AS(measured_reduction_factor(wrong_copies), std::invalid_argument);
}
