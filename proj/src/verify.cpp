// verify.cpp
#include <ebsim/verify.hpp>

#include <ebsim/broadcast.hpp>
#include <ebsim/cloners.hpp>
#include <ebsim/linalg.hpp>
#include <ebsim/separability.hpp>
#include <ebsim/states.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <utility>

namespace la = ebsim::linalg;

namespace ebsim::verify {

namespace {

using Outcome = std::pair<CheckStatus, std::string>;

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[192];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

template <typename Body>
CheckResult timed(std::string name, Body&& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome = body();
    const auto stop = std::chrono::steady_clock::now();
    const double millis = std::chrono::duration<double, std::milli>(stop - start).count();
    return CheckResult{std::move(name), outcome.first, std::move(outcome.second), millis};
}

std::vector<Vector> bloch_axis_states() {
    const double r = 1.0 / std::sqrt(2.0);
    const std::pair<Complex, Complex> axes[] = {
        {1.0, 0.0}, {0.0, 1.0}, {r, r}, {r, -r}, {r, Complex(0.0, r)}, {r, Complex(0.0, -r)}};
    std::vector<Vector> states;
    for (const auto& [u, v] : axes) {
        Vector psi(2);
        psi << u, v;
        states.push_back(psi);
    }
    return states;
}

Outcome check_cloner_properties() {
    double worst = 0.0;
    for (double eta : {0.58, 0.60, 0.62, 2.0 / 3.0}) {
        const auto cloner = cloners::build_simple_cloner(eta);
        if (cloners::isometry_residual(cloner.isometry) > 1e-10)
            return {CheckStatus::Fail, fmt("isometry residual exceeds 1e-10 at eta %.7g", eta)};
        const auto constraints = cloners::check_simple_constraints(cloner.spec, cloner.ancilla);
        if (!constraints.pass)
            return {CheckStatus::Fail,
                    fmt("constraint residual %.3g exceeds 1e-10 at eta %.7g",
                        constraints.max_residual, eta)};
        const double measured = cloners::measured_reduction_factor(cloner.isometry);
        if (std::abs(measured - eta) > 1e-9)
            return {CheckStatus::Fail,
                    fmt("measured reduction factor %.12g deviates from eta %.7g", measured, eta)};

        const FactorShape shape{2, 2, cloner.isometry.ancilla_dim};
        for (const auto& psi : bloch_axis_states()) {
            const Vector out = cloner.isometry.matrix * psi;
            const Matrix first = la::partial_trace_pure(out, shape, {0});
            const Matrix second = la::partial_trace_pure(out, shape, {1});
            const double asym = la::max_abs_diff(first, second);
            if (asym > 1e-10)
                return {CheckStatus::Fail, fmt("clone asymmetry %.3g at eta %.7g", asym, eta)};
            const double fidelity = states::fidelity_pure(psi, first);
            const double err = std::abs(fidelity - (1.0 + eta) / 2.0);
            worst = std::max(worst, std::max(asym, err));
            if (err > 1e-9)
                return {CheckStatus::Fail,
                        fmt("clone fidelity off by %.3g at eta %.7g", err, eta)};
        }
    }
    return {CheckStatus::Pass, fmt("4 reduction factors; worst deviation %.3g", worst)};
}

Outcome check_closed_form_equivalence(bool flip_nonlocal_coherence) {
    const auto eta_grid = broadcast::default_eta_grid();
    const auto alpha_grid = broadcast::default_alpha_grid();

    double max_diff = 0.0;
    for (double eta : eta_grid) {
        const auto cloner = cloners::build_simple_cloner(eta);
        for (double alpha_sq : alpha_grid) {
            const auto input = states::EntangledInput::from_alpha_sq(alpha_sq);
            const auto run = broadcast::run_broadcast(input, cloner.isometry, cloner.spec);
            const auto local = broadcast::closed_form_local(input, eta);
            auto nonlocal = broadcast::closed_form_nonlocal(input, eta);
            if (flip_nonlocal_coherence) {
                nonlocal.matrix(0, 3) = -nonlocal.matrix(0, 3);
                nonlocal.matrix(3, 0) = -nonlocal.matrix(3, 0);
            }
            for (const auto& pair : run.local_pairs)
                max_diff = std::max(max_diff, la::max_abs_diff(pair.matrix, local.matrix));
            for (const auto& pair : run.nonlocal_pairs)
                max_diff = std::max(max_diff, la::max_abs_diff(pair.matrix, nonlocal.matrix));
        }
    }

    const auto sweep = broadcast::sweep(eta_grid, alpha_grid);
    if (max_diff > 1e-10)
        return {CheckStatus::Fail,
                fmt("pipeline leaves the closed forms by %.3g (limit 1e-10)", max_diff)};
    if (sweep.disagreements != 0)
        return {CheckStatus::Fail,
                fmt("%.0f sweep rows disagree with the analytic windows",
                    static_cast<double>(sweep.disagreements))};
    return {CheckStatus::Pass,
            fmt("max |pipeline - closed form| %.3g over %.0f grid points; 0 sweep disagreements",
                max_diff, static_cast<double>(sweep.rows.size()))};
}

Outcome check_complementarity() {
    const auto sweep = broadcast::sweep(broadcast::default_eta_grid(), broadcast::default_alpha_grid());
    int entangled = 0;
    for (const auto& row : sweep.rows) {
        if (row.nonlocal_verdict != separability::Verdict::Entangled) continue;
        ++entangled;
        if (row.local_verdict != separability::Verdict::Separable)
            return {CheckStatus::Fail,
                    fmt("entangled nonlocal pair with inseparable local pair at eta %.7g, "
                        "alpha_sq %.7g",
                        row.eta, row.alpha_sq)};
    }
    return {CheckStatus::Pass,
            fmt("%.0f entangled grid points, all with separable local pairs",
                static_cast<double>(entangled))};
}

Outcome check_optimal_window() {
    const auto cloner = cloners::build_simple_cloner(2.0 / 3.0);
    const auto window = broadcast::numeric_alpha_range(cloner.isometry, 1e-6);
    if (window.empty) return {CheckStatus::Fail, "window is empty at the optimal cloner"};
    const double lo_ref = 0.5 - std::sqrt(39.0) / 16.0;
    const double hi_ref = 0.5 + std::sqrt(39.0) / 16.0;
    const double err = std::max(std::abs(window.lo - lo_ref), std::abs(window.hi - hi_ref));
    if (err > 1e-6)
        return {CheckStatus::Fail, fmt("window endpoints off by %.3g (limit 1e-6)", err)};
    return {CheckStatus::Pass,
            fmt("[%.9f, %.9f], endpoint error %.3g", window.lo, window.hi, err)};
}

Outcome check_threshold_scan() {
    const double threshold = 1.0 / std::sqrt(3.0);
    double last_nonempty = 0.0;
    double first_empty = 0.0;
    for (int k = 0;; ++k) {
        const double eta = 2.0 / 3.0 - k * 1e-3;
        if (eta < 0.55)
            return {CheckStatus::Fail, "no empty window found down to eta = 0.55"};
        const auto cloner = cloners::build_simple_cloner(eta);
        const auto window = broadcast::numeric_alpha_range(cloner.isometry, 1e-4);
        if (window.empty) {
            first_empty = eta;
            break;
        }
        last_nonempty = eta;
    }
    const double eta_err = std::abs(first_empty - threshold);
    const double fidelity_estimate = (1.0 + (first_empty + last_nonempty) / 2.0) / 2.0;
    const double fidelity_err = std::abs(fidelity_estimate - (1.0 + threshold) / 2.0);
    if (eta_err > 1e-3)
        return {CheckStatus::Fail,
                fmt("largest empty eta %.7g misses the threshold by %.3g", first_empty, eta_err)};
    if (fidelity_err > 5e-4)
        return {CheckStatus::Fail,
                fmt("fidelity threshold estimate %.7g off by %.3g", fidelity_estimate,
                    fidelity_err)};
    return {CheckStatus::Pass,
            fmt("largest empty eta %.7g (threshold error %.3g), fidelity error %.3g",
                first_empty, eta_err, fidelity_err)};
}

Outcome check_three_copy_pipeline() {
    const auto gm = cloners::build_gisin_massar_3();
    const double measured = cloners::measured_reduction_factor(gm.isometry);
    if (std::abs(measured - 5.0 / 9.0) > 1e-10)
        return {CheckStatus::Fail,
                fmt("measured reduction factor %.12g is not 5/9", measured)};

    double max_diff = 0.0;
    for (double alpha_sq : broadcast::default_alpha_grid()) {
        const auto input = states::EntangledInput::from_alpha_sq(alpha_sq);
        const auto run = broadcast::run_broadcast(input, gm.isometry, gm.spec);
        const auto reference = broadcast::closed_form_nonlocal_3(input);
        for (const auto& pair : run.nonlocal_pairs) {
            max_diff = std::max(max_diff, la::max_abs_diff(pair.matrix, reference.matrix));
            if (separability::ppt_verdict(pair).verdict != separability::Verdict::Separable)
                return {CheckStatus::Fail,
                        fmt("three-copy nonlocal pair entangled at alpha_sq %.7g", alpha_sq)};
        }
    }
    if (max_diff > 1e-10)
        return {CheckStatus::Fail,
                fmt("three-copy pipeline leaves the closed form by %.3g", max_diff)};

    const auto balanced = broadcast::run_broadcast(states::EntangledInput::from_alpha_sq(0.5),
                                                   gm.isometry, gm.spec);
    const auto fit = states::fit_scaled_form(balanced.nonlocal_pairs.front(),
                                             states::entangled_input_state(0.5));
    if (std::abs(fit.s - 25.0 / 81.0) > 1e-10)
        return {CheckStatus::Fail, fmt("balanced scaled-form parameter %.12g is not 25/81", fit.s)};
    return {CheckStatus::Pass,
            fmt("101 weights, max closed-form deviation %.3g, balanced s = %.9f", max_diff,
                fit.s)};
}

Outcome check_copy_scaling() {
    for (int m = 1; m <= 10; ++m) {
        const auto row = separability::nonlocal_scaling(m);
        if (row.s_nl != (4.0 + m) / (5.0 * m))
            return {CheckStatus::Fail, fmt("scaling factor wrong at m = %.0f",
                                           static_cast<double>(m))};
    }
    if (separability::nonlocal_scaling(7).verdict != separability::ScalingVerdict::Separable)
        return {CheckStatus::Fail, "seven copies should scale to a separable state"};
    const int max_copies = separability::max_entangled_copies();
    if (max_copies != 6)
        return {CheckStatus::Fail,
                fmt("max entangled copies %.0f, expected 6", static_cast<double>(max_copies))};
    const auto window = separability::nonlocal_cloning_range();
    const double err = std::max(std::abs(window.lo - (0.5 - std::sqrt(2.0) / 3.0)),
                                std::abs(window.hi - (0.5 + std::sqrt(2.0) / 3.0)));
    if (err > 1e-12)
        return {CheckStatus::Fail,
                fmt("whole-pair cloning window endpoints off by %.3g", err)};
    return {CheckStatus::Pass, "scaling exact for m = 1..10; compounding stops after 6 copies"};
}

Outcome check_general_cloner_form(std::uint64_t seed) {
    cloners::GeneralSearchOptions options;
    options.seed = seed;
    const auto result =
        cloners::build_general_cloner(std::sqrt(0.62), std::sqrt(0.02), options);
    if (!result.cloner.has_value())
        return {CheckStatus::Inconclusive,
                fmt("no realization within %.0f restarts (best residual %.3g)",
                    static_cast<double>(result.restarts_used), result.best_residual)};

    const auto& cloner = *result.cloner;
    double max_diff = 0.0;
    for (double alpha_sq : {0.3, 0.5, 0.77}) {
        const auto input = states::EntangledInput::from_alpha_sq(alpha_sq);
        const auto run = broadcast::run_broadcast(input, cloner.isometry, cloner.spec);
        const auto reference = broadcast::closed_form_nonlocal(input, cloner.spec.eta);
        for (const auto& pair : run.nonlocal_pairs)
            max_diff = std::max(max_diff, la::max_abs_diff(pair.matrix, reference.matrix));
    }
    if (max_diff > 1e-9)
        return {CheckStatus::Fail,
                fmt("nonlocal pairs leave the closed form by %.3g at eta %.7g", max_diff,
                    cloner.spec.eta)};
    return {CheckStatus::Pass,
            fmt("eta %.7g retains the two-copy nonlocal form within %.3g", cloner.spec.eta,
                max_diff)};
}

Outcome check_transpose_spectrum() {
    Vector bell = Vector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    const auto report =
        separability::ppt_verdict(states::DensityOperator::from_pure(bell, FactorShape{2, 2}));
    const double expected[4] = {-0.5, 0.5, 0.5, 0.5};
    for (Index i = 0; i < 4; ++i)
        if (std::abs(report.spectrum(i) - expected[i]) > 1e-10)
            return {CheckStatus::Fail,
                    fmt("Bell transpose eigenvalue %.12g, expected %.1f", report.spectrum(i),
                        expected[i])};

    const auto below = separability::ppt_verdict(states::scaled_state(bell, 1.0 / 3.0 - 1e-6));
    const auto above = separability::ppt_verdict(states::scaled_state(bell, 1.0 / 3.0 + 1e-6));
    if (below.verdict != separability::Verdict::Separable ||
        above.verdict != separability::Verdict::Entangled)
        return {CheckStatus::Fail, "scaled family does not flip at s = 1/3"};
    return {CheckStatus::Pass, "Bell transpose spectrum exact; scaled family flips at s = 1/3"};
}

} // namespace

std::vector<CheckResult> run_all_checks(const VerifyOptions& options) {
    std::vector<CheckResult> results;
    results.push_back(timed("cloner-properties", check_cloner_properties));
    results.push_back(timed("closed-form-equivalence", [&] {
        return check_closed_form_equivalence(options.flip_nonlocal_coherence);
    }));
    results.push_back(timed("complementarity", check_complementarity));
    results.push_back(timed("optimal-window", check_optimal_window));
    results.push_back(timed("threshold-scan", check_threshold_scan));
    results.push_back(timed("three-copy-pipeline", check_three_copy_pipeline));
    results.push_back(timed("copy-scaling", check_copy_scaling));
    results.push_back(
        timed("general-cloner-form", [&] { return check_general_cloner_form(options.seed); }));
    results.push_back(timed("transpose-spectrum", check_transpose_spectrum));
    return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::none_of(results.begin(), results.end(), [](const CheckResult& r) {
        return r.status == CheckStatus::Fail;
    });
}

} // namespace ebsim::verify
