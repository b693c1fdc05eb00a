#pragma once

// Intrinsic-decoherence (Milburn) evolution
//
//   d rho / dt = -i [H, rho] - (gamma / 2) [H, [H, rho]]
//
// solved in the eigenbasis of H: coherences between eigenstates i and j pick up the factor
// exp(-(gamma t / 2)(E_i - E_j)^2 - i (E_i - E_j) t), populations are untouched.

#include "kerrsim/linalg.hpp"

namespace kerrsim {

/// The linear map X(0) -> X(t) for a fixed Hamiltonian and decoherence rate. Works for any
/// operator, not only density matrices, so state derivatives can be pushed through it too.
class MilburnChannel {
public:
    MilburnChannel(const ComplexMatrix& hamiltonian, double gamma);
    MilburnChannel(Spectrum spectrum, double gamma);

    const Spectrum& spectrum() const noexcept { return spectrum_; }
    double gamma() const noexcept { return gamma_; }
    int dim() const noexcept { return spectrum_.dim(); }

    /// V^dagger X V
    ComplexMatrix to_eigenbasis(const ComplexMatrix& x) const;
    /// V X V^dagger
    ComplexMatrix from_eigenbasis(const ComplexMatrix& x) const;

    /// Damping-and-phase kernel K_ij(t); Hermitian, K_ii = 1.
    ComplexMatrix kernel(double t) const;

    /// K(t) o X, with X and the result in the eigenbasis.
    ComplexMatrix apply_eigenbasis(const ComplexMatrix& x_eig, double t) const;
    /// K(t) o X mapped back to the computational basis.
    ComplexMatrix apply(const ComplexMatrix& x_eig, double t) const;

private:
    Spectrum spectrum_;
    double gamma_;
};

/// A channel with a cached initial state. Evaluation is closed-form per time point and the
/// object is immutable, so evolve() may be called concurrently and in any order.
class Propagator {
public:
    Propagator(const ComplexMatrix& hamiltonian, const ComplexMatrix& rho0, double gamma);

    const MilburnChannel& channel() const noexcept { return channel_; }
    const Spectrum& spectrum() const noexcept { return channel_.spectrum(); }
    double gamma() const noexcept { return channel_.gamma(); }
    const ComplexMatrix& rho0() const noexcept { return rho0_; }
    const ComplexMatrix& rho0_eigenbasis() const noexcept { return rho0_eig_; }

    /// rho(t) in the computational basis. t = 0 returns the stored rho(0) unchanged.
    ComplexMatrix evolve(double t) const;

private:
    MilburnChannel channel_;
    ComplexMatrix rho0_;
    ComplexMatrix rho0_eig_;
};

Propagator make_propagator(const ComplexMatrix& hamiltonian, const ComplexMatrix& rho0, double gamma);

inline ComplexMatrix evolve(const Propagator& prop, double t) { return prop.evolve(t); }

/// Truncated operator-series solution
///   rho(t) = sum_{k=0}^{k_max} (gamma t)^k / k! M_k rho0 M_k^dagger,
///   M_k = H^k exp(-i H t) exp(-gamma t H^2 / 2),
/// with every M_k formed spectrally. Diagnostic only; k_max must be in [0, 60].
ComplexMatrix evolve_series_oracle(const ComplexMatrix& hamiltonian, const ComplexMatrix& rho0, double gamma,
                                   double t, int k_max);

}  // namespace kerrsim
