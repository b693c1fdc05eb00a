#pragma once

// Global quantum discord of an N-qubit register, minimized over local projective
// measurements parametrized by per-qubit rotations
//
//   R_j(theta, phi) = cos(theta) 1 + i sin(theta) cos(phi) sigma_y + i sin(theta) sin(phi) sigma_x.
//
// All entropies are in bits.

#include <cstdint>
#include <optional>
#include <vector>

#include "kerrsim/linalg.hpp"

namespace kerrsim {

struct QubitAngles {
    double theta = 0.0;
    double phi = 0.0;
};

/// One (theta, phi) pair per qubit.
using MeasurementAngles = std::vector<QubitAngles>;

/// Map angles onto theta in [0, pi/2], phi in [0, pi) without changing the set of projectors
/// the rotation induces.
QubitAngles canonical_angles(QubitAngles a);
MeasurementAngles canonical_angles(const MeasurementAngles& angles);

/// -sum lambda log2 lambda over eigenvalues above `floor`.
double von_neumann_entropy(const ComplexMatrix& rho, double floor = kDefaultTolerances.entropy_floor);

/// -sum p log2 p over entries above `floor`.
double shannon_entropy(const RealVector& probabilities, double floor = kDefaultTolerances.entropy_floor);

ComplexMatrix qubit_rotation(const QubitAngles& a);
/// Tensor product of the per-qubit rotations, qubit 0 most significant.
ComplexMatrix rotation_operator(const MeasurementAngles& angles);

/// Discord expression evaluated at fixed measurement angles. `rho_atoms` is the 2^N register state.
double gqd_objective(const ComplexMatrix& rho_atoms, const MeasurementAngles& angles);

struct GqdOptions {
    std::uint64_t seed = 42;
    int lattice_cap = 32;    ///< max lattice starts from {0, pi/4} x {0, pi/2} per qubit
    int random_starts = 8;
    double f_tol = 1e-8;
    int max_evals = 2000;    ///< per start
    double initial_step = 0.3;
    std::optional<MeasurementAngles> warm_start;  ///< extra start, e.g. the previous time point's optimum
};

struct GqdResult {
    double value = 0.0;
    MeasurementAngles optimal_angles;
    int n_starts = 0;
    bool converged = false;  ///< whether the start that produced `value` met f_tol
};

/// Multistart simplex minimization of gqd_objective. Never throws on non-convergence; the
/// best value found is returned with converged = false.
GqdResult gqd(const ComplexMatrix& rho_atoms, const GqdOptions& opts = {});

/// Number of qubits for a 2^N x 2^N matrix; throws InvalidInput otherwise.
int qubit_count(const ComplexMatrix& rho);

}  // namespace kerrsim
