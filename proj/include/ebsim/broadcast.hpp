// broadcast.hpp -- the end-to-end entanglement-broadcasting pipeline: clone
// both halves of an entangled two-qubit input locally, extract every pairwise
// reduced state, compare against the closed forms, and scan parameter space.
#pragma once

#include <ebsim/cloners.hpp>
#include <ebsim/separability.hpp>
#include <ebsim/states.hpp>
#include <ebsim/types.hpp>

#include <vector>

namespace ebsim::broadcast {

// Elementwise agreement required between pipeline pairs and closed forms.
inline constexpr double PAIR_MATCH_TOL = 1e-10;

// All pairwise reduced states of one broadcast run. Local pairs take both
// clones from one site (site-major, index-lexicographic order); nonlocal
// pairs take one clone from each site (lexicographic order).
struct BroadcastResult {
    states::EntangledInput input;
    cloners::ClonerSpec cloner;
    std::vector<states::DensityOperator> local_pairs;
    std::vector<states::DensityOperator> nonlocal_pairs;
};

// Applies the same cloning isometry to both halves of the input, forming the
// global pure state on factor shape [2,..,2,ancilla] per site, then partial
// traces to every clone pair. The overload without a spec records structural
// metadata (kind, copy count, ancilla size, measured reduction factor) in
// the result's cloner field.
BroadcastResult run_broadcast(const states::EntangledInput& input,
                              const cloners::CloneIsometry& iso,
                              const cloners::ClonerSpec& spec);
BroadcastResult run_broadcast(const states::EntangledInput& input,
                              const cloners::CloneIsometry& iso);

// Closed form of a local pair for a two-copy cloner of reduction factor eta
// in (0, 2/3]: alpha^2 eta |00><00| + beta^2 eta |11><11| + (1-eta) |+><+|.
states::DensityOperator closed_form_local(const states::EntangledInput& input, double eta);

// Closed form of a nonlocal pair: diagonal [alpha^2 eta + q^2,
// (1-eta^2)/4, (1-eta^2)/4, beta^2 eta + q^2] with q = (1-eta)/2, plus
// coherence alpha beta eta^2 between |00> and |11>.
states::DensityOperator closed_form_nonlocal(const states::EntangledInput& input, double eta);

// Closed form of a nonlocal pair for the three-copy cloner: diagonal
// [(45 alpha^2 + 4)/81, 14/81, 14/81, (45 beta^2 + 4)/81] with coherence
// 25 alpha beta / 81.
states::DensityOperator closed_form_nonlocal_3(const states::EntangledInput& input);

// Bisects alpha^2 on [0, 1/2] and [1/2, 1] for the entanglement flip of the
// first nonlocal pair of a two-copy broadcast, to interval-edge resolution
// `tolerance`; empty when the midpoint alpha^2 = 1/2 is already separable.
// Three interior points of the returned window are re-verified.
separability::AlphaRange numeric_alpha_range(const cloners::CloneIsometry& iso,
                                             double tolerance);

// One grid point of the parameter sweep: numeric verdicts from the pipeline
// next to the closed-form windows, flagged on any disagreement.
struct SweepRow {
    double eta;
    double alpha_sq;
    separability::Verdict nonlocal_verdict;
    separability::Verdict local_verdict;
    double min_pt_eigenvalue;
    bool analytic_nonlocal_inseparable;
    bool analytic_local_separable;
    bool disagreement;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    int disagreements;
};

// Nine reduction factors from 0.58 to 2/3.
std::vector<double> default_eta_grid();
// One hundred and one input weights from 0 to 1.
std::vector<double> default_alpha_grid();

// Runs the two-copy pipeline at every (eta, alpha^2) grid point; rows are
// ordered eta-major. The numeric side uses the first nonlocal and first
// local pair; analytic columns use the closed-form windows with inclusive
// edges.
SweepResult sweep(const std::vector<double>& eta_grid, const std::vector<double>& alpha_grid);

} // namespace ebsim::broadcast
