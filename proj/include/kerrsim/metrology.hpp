#pragma once

// Quantum Fisher information for the initial-state angle theta.

#include <span>
#include <vector>

#include "kerrsim/linalg.hpp"
#include "kerrsim/model.hpp"

namespace kerrsim {

/// A state and its derivative with respect to the estimated parameter.
struct QfiInput {
    ComplexMatrix rho;
    ComplexMatrix drho;
};

/// Spectral QFI: sum over eigenpairs with lambda_k + lambda_k' > cutoff of
/// 2 |<k| drho |k'>|^2 / (lambda_k + lambda_k').
double qfi(const QfiInput& input, double pair_cutoff = kDefaultTolerances.qfi_pair_cutoff);

/// Symmetric logarithmic derivative D solving drho = (rho D + D rho) / 2 on the support of rho.
ComplexMatrix symmetric_log_derivative(const QfiInput& input,
                                       double pair_cutoff = kDefaultTolerances.qfi_pair_cutoff);

/// Classical Fisher information sum_i dp_i^2 / p_i over p_i > 1e-12.
double cfi_diagonal(std::span<const double> probabilities, std::span<const double> dprobabilities);

/// QFI of the atomic register (field traced out) on each grid time, with respect to
/// isp.theta. The analytic d rho(0)/d theta is pushed through the same linear channel as rho(0).
std::vector<double> aqfi_timeseries(const SystemParams& params, const InitialStateParams& isp,
                                    std::span<const double> t_grid);

}  // namespace kerrsim
