#pragma once

#include <functional>
#include <span>
#include <vector>

namespace kerrsim {

struct NelderMeadOptions {
    double initial_step = 0.3;  ///< simplex edge along each coordinate axis
    double f_tol = 1e-8;        ///< stop once max f - min f over the simplex is at or below this
    int max_evals = 2000;
};

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0.0;
    int evals = 0;
    bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Unconstrained derivative-free minimization with the standard reflection / expansion /
/// contraction / shrink coefficients (1, 2, 1/2, 1/2). Deterministic.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opts = {});

}  // namespace kerrsim
