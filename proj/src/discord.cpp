#include "kerrsim/discord.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "kerrsim/errors.hpp"
#include "kerrsim/nelder_mead.hpp"

namespace kerrsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegativeSlack = 1e-9;

double wrap(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    // fmod can land exactly on `period` after the correction for tiny negative inputs.
    return r >= period ? 0.0 : r;
}

std::vector<int> single_qubit_keep(int j) { return {j}; }

// Precomputed pieces of the discord expression for one register state.
class DiscordFunctional {
public:
    explicit DiscordFunctional(const ComplexMatrix& rho) : rho_(rho), n_qubits_(qubit_count(rho)) {
        const double tr_err = std::abs(rho.trace() - Complex(1.0, 0.0));
        if (tr_err > kDefaultTolerances.trace) {
            throw InvalidInput("gqd: register state has trace error " + std::to_string(tr_err));
        }
        const std::vector<int> dims(static_cast<std::size_t>(n_qubits_), 2);
        constant_ = -von_neumann_entropy(rho);
        for (int j = 0; j < n_qubits_; ++j) {
            const auto keep = single_qubit_keep(j);
            marginals_.push_back(partial_trace(rho, dims, keep));
            constant_ += von_neumann_entropy(marginals_.back());
        }
    }

    int n_qubits() const { return n_qubits_; }

    double operator()(const MeasurementAngles& angles) const {
        if (static_cast<int>(angles.size()) != n_qubits_) {
            throw InvalidInput("gqd_objective: expected " + std::to_string(n_qubits_) + " angle pairs, got " +
                               std::to_string(angles.size()));
        }
        std::vector<ComplexMatrix> rots;
        rots.reserve(angles.size());
        for (const auto& a : angles) rots.push_back(qubit_rotation(a));

        const ComplexMatrix r = kron(rots);
        // diag(R^dagger rho R)_k = sum_a conj(R_ak) (rho R)_ak
        const RealVector global = r.conjugate().cwiseProduct(rho_ * r).colwise().sum().real().transpose();

        double local = 0.0;
        for (int j = 0; j < n_qubits_; ++j) {
            const auto& rj = rots[static_cast<std::size_t>(j)];
            const RealVector d =
                rj.conjugate().cwiseProduct(marginals_[static_cast<std::size_t>(j)] * rj).colwise().sum().real().transpose();
            local += shannon_entropy(d);
        }
        return shannon_entropy(global) - local + constant_;
    }

private:
    ComplexMatrix rho_;
    int n_qubits_;
    std::vector<ComplexMatrix> marginals_;
    double constant_ = 0.0;  // sum_j S(rho_j) - S(rho)
};

MeasurementAngles unpack(std::span<const double> x) {
    MeasurementAngles a(x.size() / 2);
    for (std::size_t j = 0; j < a.size(); ++j) a[j] = {x[2 * j], x[2 * j + 1]};
    return a;
}

std::vector<double> pack(const MeasurementAngles& a) {
    std::vector<double> x;
    x.reserve(2 * a.size());
    for (const auto& q : a) {
        x.push_back(q.theta);
        x.push_back(q.phi);
    }
    return x;
}

std::vector<MeasurementAngles> lattice_starts(int n_qubits, int cap) {
    static constexpr QubitAngles kPoints[4] = {{0.0, 0.0}, {0.0, kPi / 2}, {kPi / 4, 0.0}, {kPi / 4, kPi / 2}};
    std::vector<MeasurementAngles> out;
    const long total = 1L << (2 * n_qubits);
    for (long code = 0; code < total && static_cast<long>(out.size()) < cap; ++code) {
        MeasurementAngles a(static_cast<std::size_t>(n_qubits));
        for (int j = 0; j < n_qubits; ++j) {
            // Qubit 0 is the most significant base-4 digit.
            const int digit = static_cast<int>((code >> (2 * (n_qubits - 1 - j))) & 3);
            a[static_cast<std::size_t>(j)] = kPoints[digit];
        }
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace

QubitAngles canonical_angles(QubitAngles a) {
    double theta = wrap(a.theta, kPi);  // R(theta + pi) = -R(theta)
    double phi = a.phi;
    if (theta > kPi / 2) {
        // (theta, phi) ~ (theta - pi, phi) ~ (pi - theta, phi + pi)
        theta = kPi - theta;
        phi += kPi;
    }
    phi = wrap(phi, 2 * kPi);
    if (phi >= kPi) {
        // (theta, phi) ~ (pi/2 - theta, phi - pi): same projectors, labels swapped
        theta = kPi / 2 - theta;
        phi -= kPi;
    }
    return {theta, phi};
}

MeasurementAngles canonical_angles(const MeasurementAngles& angles) {
    MeasurementAngles out;
    out.reserve(angles.size());
    for (const auto& a : angles) out.push_back(canonical_angles(a));
    return out;
}

int qubit_count(const ComplexMatrix& rho) {
    if (!is_square(rho)) throw InvalidInput("register state must be square");
    const auto d = rho.rows();
    int n = 0;
    while ((Eigen::Index{1} << n) < d) ++n;
    if (n < 1 || (Eigen::Index{1} << n) != d) {
        throw InvalidInput("register state dimension " + std::to_string(d) + " is not 2^N with N >= 1");
    }
    return n;
}

double shannon_entropy(const RealVector& probabilities, double floor) {
    double s = 0.0;
    for (double p : probabilities) {
        if (p > floor) s -= p * std::log2(p);
    }
    return s;
}

double von_neumann_entropy(const ComplexMatrix& rho, double floor) {
    if (!is_square(rho)) throw InvalidInput("von_neumann_entropy: matrix is not square");
    return shannon_entropy(eigenvalues_hermitian(rho), floor);
}

ComplexMatrix qubit_rotation(const QubitAngles& a) {
    const double c = std::cos(a.theta);
    const double s = std::sin(a.theta);
    const double cp = std::cos(a.phi);
    const double sp = std::sin(a.phi);
    // c 1 + i s cp sigma_y + i s sp sigma_x
    ComplexMatrix r(2, 2);
    r(0, 0) = c;
    r(1, 1) = c;
    r(0, 1) = Complex(s * cp, s * sp);
    r(1, 0) = Complex(-s * cp, s * sp);
    return r;
}

ComplexMatrix rotation_operator(const MeasurementAngles& angles) {
    if (angles.empty()) throw InvalidInput("rotation_operator: no angles");
    std::vector<ComplexMatrix> rots;
    rots.reserve(angles.size());
    for (const auto& a : angles) rots.push_back(qubit_rotation(a));
    return kron(rots);
}

double gqd_objective(const ComplexMatrix& rho_atoms, const MeasurementAngles& angles) {
    return DiscordFunctional(rho_atoms)(angles);
}

GqdResult gqd(const ComplexMatrix& rho_atoms, const GqdOptions& opts) {
    const DiscordFunctional functional(rho_atoms);
    const int n = functional.n_qubits();

    std::vector<MeasurementAngles> starts = lattice_starts(n, opts.lattice_cap);
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> theta_dist(0.0, kPi / 2);
    std::uniform_real_distribution<double> phi_dist(0.0, kPi);
    for (int s = 0; s < opts.random_starts; ++s) {
        MeasurementAngles a(static_cast<std::size_t>(n));
        for (auto& q : a) {
            q.theta = theta_dist(rng);
            q.phi = phi_dist(rng);
        }
        starts.push_back(std::move(a));
    }
    if (opts.warm_start) {
        if (static_cast<int>(opts.warm_start->size()) != n) throw InvalidInput("gqd: warm start has wrong qubit count");
        starts.push_back(*opts.warm_start);
    }

    if (starts.empty()) throw InvalidInput("gqd: optimizer configured with zero starts");

    const Objective objective = [&](std::span<const double> x) { return functional(unpack(x)); };
    const NelderMeadOptions nm{opts.initial_step, opts.f_tol, opts.max_evals};

    GqdResult best;
    best.value = std::numeric_limits<double>::infinity();
    for (const auto& start : starts) {
        const NelderMeadResult r = nelder_mead(objective, pack(start), nm);
        if (r.f < best.value) {
            best.value = r.f;
            best.optimal_angles = unpack(r.x);
            best.converged = r.converged;
        }
    }
    best.n_starts = static_cast<int>(starts.size());
    best.optimal_angles = canonical_angles(best.optimal_angles);

    if (best.value < -kNegativeSlack) {
        throw NumericError("gqd: objective went negative (" + std::to_string(best.value) + ")");
    }
    best.value = std::max(best.value, 0.0);
    return best;
}

}  // namespace kerrsim
