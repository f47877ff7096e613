// cloners.hpp -- symmetric universal qubit cloners realized as isometries
// from one qubit into (copies x ancilla): the one-parameter two-copy family,
// its two-parameter generalization found by constraint search, and the fixed
// three-copy cloner. All carry explicit ancilla realizations so the declared
// coefficients can be checked against the constraint equations.
#pragma once

#include <ebsim/states.hpp>
#include <ebsim/types.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace ebsim::cloners {

// Isometry admission and constraint-residual acceptance.
inline constexpr double ISOMETRY_TOL = 1e-10;
inline constexpr double CONSTRAINT_TOL = 1e-10;
// Direction independence of the measured Bloch shrinking factor.
inline constexpr double ISOTROPY_TOL = 1e-9;

enum class ClonerKind { Simple12, General12, GisinMassar13 };

struct NamedOverlap {
    std::string name;
    Complex value;
};

// Declared coefficients of a cloner; c stays zero for the simple family and
// the three coefficient slots hold the symmetric-subspace amplitudes for the
// three-copy cloner.
struct ClonerSpec {
    ClonerKind kind;
    double a;
    double b;
    double c;
    double eta;
    Index ancilla_dim;
    std::vector<NamedOverlap> overlaps;
};

// Column k is the image of |k>; rows run over copies-then-ancilla, with the
// ancilla as the last (fastest-varying within a site) factor.
struct CloneIsometry {
    Matrix matrix;
    int num_copies;
    Index ancilla_dim;
};

double isometry_residual(const CloneIsometry& iso);

// Ancilla vectors of the two-copy families; tilded vectors dress the |1>
// branch of the isometry.
struct SimpleRealization {
    Vector a;
    Vector b;
    Vector a_tilde;
    Vector b_tilde;
};

struct GeneralRealization {
    Vector a;
    Vector b;
    Vector c;
    Vector a_tilde;
    Vector b_tilde;
    Vector c_tilde;
};

struct ConstraintResidual {
    std::string name;
    double value;
};

struct ConstraintReport {
    std::vector<ConstraintResidual> residuals;
    double max_residual;
    double tolerance;
    bool pass;
};

struct SimpleCloner {
    ClonerSpec spec;
    CloneIsometry isometry;
    SimpleRealization ancilla;
};

struct GeneralCloner {
    ClonerSpec spec;
    CloneIsometry isometry;
    GeneralRealization ancilla;
};

struct GisinMassarCloner {
    ClonerSpec spec;
    CloneIsometry isometry;
};

struct GeneralSearchOptions {
    uint64_t seed = 0xEB51D00DULL;
    int restarts = 200;
    int iterations = 5000;
};

// Explicit feasibility outcome: an empty cloner with diagnostics is an
// honest "no realization found within budget", not an error.
struct GeneralClonerResult {
    std::optional<GeneralCloner> cloner;
    double best_residual;
    int restarts_used;
};

// One-parameter symmetric cloner with reduction factor eta in (0, 2/3]. The
// ancilla realization lives in four dimensions with the tilded vectors tilted
// toward the untilded pair by x = sqrt(eta / (2 (1 - eta))).
SimpleCloner build_simple_cloner(double eta);

ConstraintReport check_simple_constraints(const ClonerSpec& spec, const SimpleRealization& r);

// Two-parameter family with amplitudes a >= c >= 0 on the aligned and
// crossed copy branches; the tilded ancilla vectors are found by seeded
// random-restart projected Gauss-Newton descent on the stacked constraint
// residuals in a six-dimensional ancilla space. Reduction factor a^2 - c^2.
GeneralClonerResult build_general_cloner(double a, double c,
                                         const GeneralSearchOptions& options = {});

// The phase constraint is read as Im(conj(b) a <Bt|A> + conj(a) b <At|B>) = 0,
// consistent with the real part fixing the reduction factor; real
// realizations satisfy it identically.
ConstraintReport check_general_constraints(const ClonerSpec& spec, const GeneralRealization& r);

// Fixed three-copy cloner on the symmetric subspace, reduction factor 5/9,
// with a three-dimensional ancilla.
GisinMassarCloner build_gisin_massar_3();

// Normalized equal superposition of three-qubit basis states with the given
// number of ones.
Vector symmetric_three_qubit(int num_ones);

// Applies the isometry to the six Bloch axis states plus a fixed set of
// random pure states and returns the common Bloch shrinking factor of every
// clone; errors if the factor varies across inputs or clones beyond
// ISOTROPY_TOL.
double measured_reduction_factor(const CloneIsometry& iso);

} // namespace ebsim::cloners
