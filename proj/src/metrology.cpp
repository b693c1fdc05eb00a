#include "kerrsim/metrology.hpp"

#include <cmath>
#include <string>

#include "kerrsim/dynamics.hpp"
#include "kerrsim/errors.hpp"

namespace kerrsim {

namespace {

void check_input(const QfiInput& in) {
    if (!is_square(in.rho) || in.rho.rows() != in.drho.rows() || in.rho.cols() != in.drho.cols()) {
        throw InvalidInput("qfi: rho and drho must be square with equal dimensions");
    }
}

}  // namespace

double qfi(const QfiInput& input, double pair_cutoff) {
    check_input(input);
    const Spectrum spec = eig_hermitian(0.5 * (input.rho + input.rho.adjoint()));
    const ComplexMatrix d = spec.vectors.adjoint() * input.drho * spec.vectors;
    const auto& lam = spec.values;

    double f = 0.0;
    for (Eigen::Index k = 0; k < lam.size(); ++k) {
        for (Eigen::Index l = 0; l < lam.size(); ++l) {
            const double s = lam(k) + lam(l);
            if (s > pair_cutoff) f += 2.0 * std::norm(d(k, l)) / s;
        }
    }
    return f;
}

ComplexMatrix symmetric_log_derivative(const QfiInput& input, double pair_cutoff) {
    check_input(input);
    const Spectrum spec = eig_hermitian(0.5 * (input.rho + input.rho.adjoint()));
    ComplexMatrix d = spec.vectors.adjoint() * input.drho * spec.vectors;
    const auto& lam = spec.values;
    for (Eigen::Index k = 0; k < lam.size(); ++k) {
        for (Eigen::Index l = 0; l < lam.size(); ++l) {
            const double s = lam(k) + lam(l);
            d(k, l) = s > pair_cutoff ? 2.0 * d(k, l) / s : Complex(0.0, 0.0);
        }
    }
    return spec.vectors * d * spec.vectors.adjoint();
}

double cfi_diagonal(std::span<const double> probabilities, std::span<const double> dprobabilities) {
    if (probabilities.size() != dprobabilities.size()) {
        throw InvalidInput("cfi_diagonal: " + std::to_string(probabilities.size()) + " probabilities but " +
                           std::to_string(dprobabilities.size()) + " derivatives");
    }
    double f = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (probabilities[i] > 1e-12) f += dprobabilities[i] * dprobabilities[i] / probabilities[i];
    }
    return f;
}

std::vector<double> aqfi_timeseries(const SystemParams& params, const InitialStateParams& isp,
                                    std::span<const double> t_grid) {
    params.validate();
    isp.validate();
    const HilbertLayout layout = params.layout();
    const Propagator prop(build_hamiltonian(params), build_initial_state(isp, layout), params.gamma);
    const ComplexMatrix drho0_eig = prop.channel().to_eigenbasis(initial_state_theta_derivative(isp, layout));

    std::vector<double> out(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw InvalidInput("aqfi_timeseries: time grid must be ascending");
        const double t = t_grid[i];
        const ComplexMatrix rho = trace_out_field(prop.evolve(t), layout);
        const ComplexMatrix drho = trace_out_field(prop.channel().apply(drho0_eig, t), layout);
        out[i] = qfi({rho, drho});
    }
    return out;
}

}  // namespace kerrsim
