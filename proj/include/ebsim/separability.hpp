// separability.hpp -- positive-partial-transpose verdicts for two-qubit
// density operators plus the closed-form alpha^2 windows and copy-number
// scaling law that govern broadcast pair entanglement.
#pragma once

#include <ebsim/states.hpp>
#include <ebsim/types.hpp>

#include <string>

namespace ebsim::separability {

// A partial-transpose eigenvalue below -tolerance counts as entangled;
// boundary states are reported Separable with the raw eigenvalue exposed.
inline constexpr double PPT_TOL = 1e-9;
// Closed-form scaling values this close to the 1/3 threshold are boundary.
inline constexpr double SCALING_TOL = 1e-12;
// Radicands this close to zero collapse a window to the single point 1/2.
inline constexpr double DEGENERATE_TOL = 1e-15;

enum class Verdict { Separable, Entangled };
enum class ScalingVerdict { Separable, Entangled, Boundary };

inline const char* to_string(Verdict v) {
    return v == Verdict::Separable ? "separable" : "entangled";
}

inline const char* to_string(ScalingVerdict v) {
    switch (v) {
        case ScalingVerdict::Separable: return "separable";
        case ScalingVerdict::Entangled: return "entangled";
        default: return "boundary";
    }
}

struct PptReport {
    double min_eigenvalue;
    RealVector spectrum;
    Verdict verdict;
    double tolerance;
};

// Peres criterion, decisive for two qubits: transpose the second factor and
// inspect the spectrum. Requires a 4x4 state with factor shape {2, 2}.
PptReport ppt_verdict(const states::DensityOperator& rho, double tolerance = PPT_TOL);

enum class RangeKind { InseparableNonlocal, SeparableLocal, NonlocalCloning, Numeric };

inline const char* to_string(RangeKind k) {
    switch (k) {
        case RangeKind::InseparableNonlocal: return "inseparable-nonlocal";
        case RangeKind::SeparableLocal: return "separable-local";
        case RangeKind::NonlocalCloning: return "nonlocal-cloning";
        default: return "numeric";
    }
}

// Closed interval of input weights alpha^2, symmetric about 1/2; lo and hi
// are NaN when the window is empty.
struct AlphaRange {
    RangeKind kind;
    bool empty;
    double lo;
    double hi;
};

// Weights whose nonlocal broadcast pairs are inseparable at reduction factor
// eta in (0, 2/3]; nonempty from eta = 1/sqrt(3) upward, the single point
// 1/2 exactly at the threshold.
AlphaRange inseparable_alpha_range(double eta);

// Weights whose local broadcast pairs are separable at reduction factor eta
// in (0, 1]; nonempty from eta = 1/2 upward.
AlphaRange local_separable_alpha_range(double eta);

// Fixed window within which copying the entangled pair as a whole with one
// two-qubit cloner preserves inseparability: 1/2 +- sqrt(2)/3. Strictly
// wider than the local-copier window at eta = 2/3.
AlphaRange nonlocal_cloning_range();

// Scaled-form weight of the nonlocal pairs after cloning a maximally
// entangled pair as a whole into m copies, with its verdict against the 1/3
// separability threshold.
struct NonlocalScaling {
    int m;
    double s_nl;
    ScalingVerdict verdict;
    double tolerance;
};

NonlocalScaling nonlocal_scaling(int m);

// Largest copy number whose nonlocal pairs are not yet strictly separable.
int max_entangled_copies();

} // namespace ebsim::separability
