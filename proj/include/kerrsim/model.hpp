#pragma once

// Atom-field Hamiltonian with Kerr and parametric-pump terms, and the initial state family.
//
// Single-atom basis order is (e, g): sigma_z = diag(1, -1), sigma_plus |g> = |e>.
// Composite basis is lexicographic over |s_1 ... s_N, n>, atoms first and field last.

#include "kerrsim/linalg.hpp"

namespace kerrsim {

/// Model constants in scaled-time units.
struct SystemParams {
    int n_atoms = 2;
    int n_cutoff = 2;
    double omega0 = 1.0;  ///< atomic transition frequency
    double omega = 1.0;   ///< field mode frequency
    double g = 1.0;       ///< atom-field coupling
    double chi = 0.0;     ///< Kerr strength
    double kappa = 0.0;   ///< parametric pump amplitude
    double gamma = 0.05;  ///< intrinsic decoherence rate

    HilbertLayout layout() const { return HilbertLayout(n_atoms, n_cutoff); }
    /// Throws ConfigError naming the first invalid field.
    void validate() const;
};

/// Mixedness p and superposition angle theta of the initial atomic state.
struct InitialStateParams {
    double p = 0.5;
    double theta = 0.7853981633974483;  // pi/4

    void validate() const;
};

enum class AtomOp { z, plus, minus };

/// Truncated annihilation operator on n_cutoff+1 Fock states: a[n-1][n] = sqrt(n).
ComplexMatrix annihilation_op(int n_cutoff);

/// Single-atom operator on atom `atom_index` (1-based) embedded in the full layout.
ComplexMatrix atom_op(AtomOp which, int atom_index, const HilbertLayout& layout);

/// Field operator embedded in the full layout (identity on every atom).
ComplexMatrix field_op(const ComplexMatrix& op, const HilbertLayout& layout);

ComplexMatrix build_hamiltonian(const SystemParams& params);

/// Total excitation number sum_i sigma_z_i / 2 + a^dagger a. Commutes with H when kappa = 0.
ComplexMatrix excitation_operator(const HilbertLayout& layout);

/// Atomic state (1-p)|psi><psi| + p|g..g><g..g| with |psi> = cos(theta)|g..g> + sin(theta)|e..e>.
ComplexMatrix initial_atomic_state(const InitialStateParams& isp, int n_atoms);

/// Maximally mixed truncated field, I / (n_cutoff + 1).
ComplexMatrix initial_field_state(int n_cutoff);

ComplexMatrix build_initial_state(const InitialStateParams& isp, const HilbertLayout& layout);

/// Analytic d rho(0) / d theta.
ComplexMatrix initial_state_theta_derivative(const InitialStateParams& isp, const HilbertLayout& layout);

}  // namespace kerrsim
