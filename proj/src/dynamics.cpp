#include "kerrsim/dynamics.hpp"

#include <cmath>
#include <string>

#include "kerrsim/errors.hpp"

namespace kerrsim {

namespace {

void require_time(double t) {
    if (!std::isfinite(t) || t < 0.0) throw InvalidInput("time must be finite and >= 0, got " + std::to_string(t));
}

void require_gamma(double gamma) {
    if (!std::isfinite(gamma) || gamma < 0.0) throw InvalidInput("gamma must be finite and >= 0");
}

}  // namespace

MilburnChannel::MilburnChannel(const ComplexMatrix& hamiltonian, double gamma)
    : MilburnChannel(eig_hermitian(hamiltonian), gamma) {}

MilburnChannel::MilburnChannel(Spectrum spectrum, double gamma) : spectrum_(std::move(spectrum)), gamma_(gamma) {
    require_gamma(gamma);
}

ComplexMatrix MilburnChannel::to_eigenbasis(const ComplexMatrix& x) const {
    if (x.rows() != dim() || x.cols() != dim()) throw InvalidInput("MilburnChannel: operator dimension mismatch");
    return spectrum_.vectors.adjoint() * x * spectrum_.vectors;
}

ComplexMatrix MilburnChannel::from_eigenbasis(const ComplexMatrix& x) const {
    return spectrum_.vectors * x * spectrum_.vectors.adjoint();
}

ComplexMatrix MilburnChannel::kernel(double t) const {
    require_time(t);
    const auto& e = spectrum_.values;
    const Eigen::Index n = e.size();
    ComplexMatrix k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        k(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double de = e(i) - e(j);
            const Complex v = std::exp(Complex(-0.5 * gamma_ * t * de * de, -de * t));
            k(i, j) = v;
            k(j, i) = std::conj(v);
        }
    }
    return k;
}

ComplexMatrix MilburnChannel::apply_eigenbasis(const ComplexMatrix& x_eig, double t) const {
    if (x_eig.rows() != dim() || x_eig.cols() != dim()) {
        throw InvalidInput("MilburnChannel: operator dimension mismatch");
    }
    return kernel(t).cwiseProduct(x_eig);
}

ComplexMatrix MilburnChannel::apply(const ComplexMatrix& x_eig, double t) const {
    return from_eigenbasis(apply_eigenbasis(x_eig, t));
}

Propagator::Propagator(const ComplexMatrix& hamiltonian, const ComplexMatrix& rho0, double gamma)
    : channel_(hamiltonian, gamma), rho0_(rho0) {
    if (!is_square(rho0) || rho0.rows() != hamiltonian.rows()) {
        throw InvalidInput("make_propagator: rho0 is " + std::to_string(rho0.rows()) + "x" +
                           std::to_string(rho0.cols()) + ", Hamiltonian is " + std::to_string(hamiltonian.rows()));
    }
    const StateDiagnostics d = diagnose_state(rho0);
    if (!d.legal()) {
        throw InvalidInput("make_propagator: rho0 is not a density matrix (trace error " +
                           std::to_string(d.trace_error) + ", min eigenvalue " + std::to_string(d.min_eigenvalue) +
                           ")");
    }
    rho0_eig_ = channel_.to_eigenbasis(rho0);
}

ComplexMatrix Propagator::evolve(double t) const {
    require_time(t);
    if (t == 0.0) return rho0_;
    return channel_.apply(rho0_eig_, t);
}

Propagator make_propagator(const ComplexMatrix& hamiltonian, const ComplexMatrix& rho0, double gamma) {
    return Propagator(hamiltonian, rho0, gamma);
}

ComplexMatrix evolve_series_oracle(const ComplexMatrix& hamiltonian, const ComplexMatrix& rho0, double gamma,
                                   double t, int k_max) {
    require_time(t);
    require_gamma(gamma);
    if (k_max < 0 || k_max > 60) throw InvalidInput("evolve_series_oracle: k_max must be in [0, 60]");
    if (rho0.rows() != hamiltonian.rows() || rho0.cols() != hamiltonian.cols()) {
        throw InvalidInput("evolve_series_oracle: dimension mismatch");
    }

    const Spectrum spec = eig_hermitian(hamiltonian);
    const auto& e = spec.values;
    const auto& v = spec.vectors;

    ComplexMatrix out = ComplexMatrix::Zero(rho0.rows(), rho0.cols());
    double weight = 1.0;  // (gamma t)^k / k!
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) weight *= gamma * t / k;
        ComplexVector diag(e.size());
        for (Eigen::Index i = 0; i < e.size(); ++i) {
            diag(i) = std::pow(e(i), k) * std::exp(Complex(-0.5 * gamma * t * e(i) * e(i), -e(i) * t));
        }
        const ComplexMatrix m = v * diag.asDiagonal() * v.adjoint();
        out += weight * (m * rho0 * m.adjoint());
    }
    return out;
}

}  // namespace kerrsim
