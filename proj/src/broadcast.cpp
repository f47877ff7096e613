// broadcast.cpp
#include <ebsim/broadcast.hpp>

#include <ebsim/linalg.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace la = ebsim::linalg;

namespace ebsim::broadcast {

namespace {

constexpr double TWO_THIRDS = 2.0 / 3.0;
constexpr double DOMAIN_SLACK = 1e-12;

// Factor layout of the global post-broadcast state: per site, one qubit
// factor per copy followed by that site's ancilla.
struct GlobalLayout {
    FactorShape shape;
    std::vector<Index> site1_qubits;
    std::vector<Index> site2_qubits;
};

GlobalLayout layout_for(const cloners::CloneIsometry& iso) {
    const Index copies = iso.num_copies;
    std::vector<Index> dims;
    for (int site = 0; site < 2; ++site) {
        for (Index k = 0; k < copies; ++k) dims.push_back(2);
        dims.push_back(iso.ancilla_dim);
    }
    GlobalLayout layout{FactorShape(std::move(dims)), {}, {}};
    for (Index k = 0; k < copies; ++k) {
        layout.site1_qubits.push_back(k);
        layout.site2_qubits.push_back(copies + 1 + k);
    }
    return layout;
}

void validate_isometry(const cloners::CloneIsometry& iso, const char* who) {
    if (iso.num_copies != 2 && iso.num_copies != 3)
        throw std::invalid_argument(std::string(who) + ": cloner must produce 2 or 3 copies");
    if (iso.ancilla_dim < 1)
        throw std::invalid_argument(std::string(who) + ": ancilla dimension must be >= 1");
    const Index rows = (Index{1} << iso.num_copies) * iso.ancilla_dim;
    if (iso.matrix.rows() != rows || iso.matrix.cols() != 2)
        throw std::invalid_argument(std::string(who) + ": isometry dimensions do not match");
    if (cloners::isometry_residual(iso) > cloners::ISOMETRY_TOL)
        throw std::invalid_argument(std::string(who) + ": matrix is not an isometry");
}

void check_eta(double eta, const char* who) {
    if (!(eta > 0.0 && eta <= TWO_THIRDS + DOMAIN_SLACK))
        throw std::invalid_argument(std::string(who) + ": eta must lie in (0, 2/3]");
}

} // namespace

BroadcastResult run_broadcast(const states::EntangledInput& input,
                              const cloners::CloneIsometry& iso,
                              const cloners::ClonerSpec& spec) {
    validate_isometry(iso, "run_broadcast");
    const GlobalLayout layout = layout_for(iso);
    const Vector out =
        la::kron(iso.matrix, iso.matrix) * states::entangled_input_state(input.alpha_sq);

    auto pair_state = [&](Index i, Index j) {
        return states::DensityOperator::checked(
            la::partial_trace_pure(out, layout.shape, {i, j}), FactorShape{2, 2});
    };

    BroadcastResult result{input, spec, {}, {}};
    for (const auto* site : {&layout.site1_qubits, &layout.site2_qubits})
        for (size_t i = 0; i < site->size(); ++i)
            for (size_t j = i + 1; j < site->size(); ++j)
                result.local_pairs.push_back(pair_state((*site)[i], (*site)[j]));
    for (Index i : layout.site1_qubits)
        for (Index j : layout.site2_qubits)
            result.nonlocal_pairs.push_back(pair_state(i, j));
    return result;
}

BroadcastResult run_broadcast(const states::EntangledInput& input,
                              const cloners::CloneIsometry& iso) {
    const cloners::ClonerKind kind = iso.num_copies == 3 ? cloners::ClonerKind::GisinMassar13
                                     : iso.ancilla_dim == 6
                                         ? cloners::ClonerKind::General12
                                         : cloners::ClonerKind::Simple12;
    // measured_reduction_factor also vets the isometry itself.
    const double eta = cloners::measured_reduction_factor(iso);
    return run_broadcast(input, iso,
                         cloners::ClonerSpec{kind, 0.0, 0.0, 0.0, eta, iso.ancilla_dim, {}});
}

states::DensityOperator closed_form_local(const states::EntangledInput& input, double eta) {
    check_eta(eta, "closed_form_local");
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = input.alpha_sq * eta;
    m(3, 3) = input.beta * input.beta * eta;
    const double plus_weight = (1.0 - eta) / 2.0;
    m(1, 1) = m(1, 2) = m(2, 1) = m(2, 2) = plus_weight;
    return states::DensityOperator::checked(std::move(m), FactorShape{2, 2});
}

states::DensityOperator closed_form_nonlocal(const states::EntangledInput& input, double eta) {
    check_eta(eta, "closed_form_nonlocal");
    const double q = (1.0 - eta) / 2.0;
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = input.alpha_sq * eta + q * q;
    m(3, 3) = input.beta * input.beta * eta + q * q;
    m(1, 1) = m(2, 2) = (1.0 - eta * eta) / 4.0;
    m(0, 3) = m(3, 0) = input.alpha * input.beta * eta * eta;
    return states::DensityOperator::checked(std::move(m), FactorShape{2, 2});
}

states::DensityOperator closed_form_nonlocal_3(const states::EntangledInput& input) {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = (45.0 * input.alpha_sq + 4.0) / 81.0;
    m(3, 3) = (45.0 * input.beta * input.beta + 4.0) / 81.0;
    m(1, 1) = m(2, 2) = 14.0 / 81.0;
    m(0, 3) = m(3, 0) = 25.0 * input.alpha * input.beta / 81.0;
    return states::DensityOperator::checked(std::move(m), FactorShape{2, 2});
}

separability::AlphaRange numeric_alpha_range(const cloners::CloneIsometry& iso,
                                             double tolerance) {
    if (iso.num_copies != 2)
        throw std::invalid_argument("numeric_alpha_range: two-copy cloner required");
    if (!(tolerance > 0.0))
        throw std::invalid_argument("numeric_alpha_range: tolerance must be positive");
    validate_isometry(iso, "numeric_alpha_range");

    const GlobalLayout layout = layout_for(iso);
    const Matrix global_iso = la::kron(iso.matrix, iso.matrix);
    const std::vector<Index> first_pair{layout.site1_qubits.front(),
                                        layout.site2_qubits.front()};

    auto entangled_at = [&](double alpha_sq) {
        const Vector out = global_iso * states::entangled_input_state(alpha_sq);
        const auto pair = states::DensityOperator::checked(
            la::partial_trace_pure(out, layout.shape, first_pair), FactorShape{2, 2});
        return separability::ppt_verdict(pair).verdict == separability::Verdict::Entangled;
    };

    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    if (!entangled_at(0.5))
        return separability::AlphaRange{separability::RangeKind::Numeric, true, nan, nan};

    // Walk one window edge: `inside` is entangled, `outside` may not be.
    auto edge = [&](double inside, double outside) {
        if (entangled_at(outside)) return outside;
        double sep = outside;
        double ent = inside;
        while (std::abs(ent - sep) > tolerance) {
            const double mid = 0.5 * (sep + ent);
            (entangled_at(mid) ? ent : sep) = mid;
        }
        return 0.5 * (sep + ent);
    };

    const double lo = edge(0.5, 0.0);
    const double hi = edge(0.5, 1.0);
    for (double f : {0.25, 0.5, 0.75})
        if (!entangled_at(lo + f * (hi - lo)))
            throw std::runtime_error("numeric_alpha_range: window interior is not entangled");
    return separability::AlphaRange{separability::RangeKind::Numeric, false, lo, hi};
}

std::vector<double> default_eta_grid() {
    std::vector<double> grid(9);
    for (int k = 0; k < 9; ++k) grid[static_cast<size_t>(k)] = 0.58 + k * (TWO_THIRDS - 0.58) / 8.0;
    grid.back() = TWO_THIRDS;
    return grid;
}

std::vector<double> default_alpha_grid() {
    std::vector<double> grid(101);
    for (int k = 0; k <= 100; ++k) grid[static_cast<size_t>(k)] = k / 100.0;
    return grid;
}

SweepResult sweep(const std::vector<double>& eta_grid, const std::vector<double>& alpha_grid) {
    if (eta_grid.empty())
        throw std::invalid_argument("sweep: eta grid must be non-empty");
    if (alpha_grid.empty())
        throw std::invalid_argument("sweep: alpha grid must be non-empty");

    const auto inside = [](const separability::AlphaRange& r, double x) {
        return !r.empty && r.lo <= x && x <= r.hi;
    };

    SweepResult result{{}, 0};
    result.rows.reserve(eta_grid.size() * alpha_grid.size());
    for (double eta : eta_grid) {
        const cloners::SimpleCloner cloner = cloners::build_simple_cloner(eta);
        const separability::AlphaRange nonlocal_window = separability::inseparable_alpha_range(eta);
        const separability::AlphaRange local_window = separability::local_separable_alpha_range(eta);
        for (double alpha_sq : alpha_grid) {
            const auto input = states::EntangledInput::from_alpha_sq(alpha_sq);
            const BroadcastResult run = run_broadcast(input, cloner.isometry, cloner.spec);
            const auto nonlocal = separability::ppt_verdict(run.nonlocal_pairs.front());
            const auto local = separability::ppt_verdict(run.local_pairs.front());

            SweepRow row{eta,
                         alpha_sq,
                         nonlocal.verdict,
                         local.verdict,
                         nonlocal.min_eigenvalue,
                         inside(nonlocal_window, alpha_sq),
                         inside(local_window, alpha_sq),
                         false};
            row.disagreement = ((row.nonlocal_verdict == separability::Verdict::Entangled) !=
                                row.analytic_nonlocal_inseparable) ||
                               ((row.local_verdict == separability::Verdict::Separable) !=
                                row.analytic_local_separable);
            if (row.disagreement) ++result.disagreements;
            result.rows.push_back(row);
        }
    }
    return result;
}

} // namespace ebsim::broadcast
