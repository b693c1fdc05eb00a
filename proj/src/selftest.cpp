#include "kerrsim/selftest.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "kerrsim/discord.hpp"
#include "kerrsim/dynamics.hpp"
#include "kerrsim/linalg.hpp"
#include "kerrsim/metrology.hpp"
#include "kerrsim/model.hpp"
#include "kerrsim/runner.hpp"

namespace kerrsim {

namespace {

using Rng = std::mt19937_64;

ComplexMatrix random_matrix(Rng& rng, int n) {
    std::normal_distribution<double> nd;
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Complex(nd(rng), nd(rng));
    return m;
}

ComplexMatrix random_hermitian(Rng& rng, int n) {
    const ComplexMatrix m = random_matrix(rng, n);
    return 0.5 * (m + m.adjoint());
}

ComplexMatrix random_density(Rng& rng, int n) {
    const ComplexMatrix m = random_matrix(rng, n);
    ComplexMatrix rho = m * m.adjoint();
    return rho / rho.trace();
}

ComplexMatrix bell_state() {
    ComplexVector v = ComplexVector::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    return v * v.adjoint();
}

struct Check {
    std::string name;
    std::function<std::string()> run;  // empty string on success, failure detail otherwise
};

std::string expect_le(double value, double bound, const std::string& what) {
    if (value <= bound) return {};
    return what + " = " + std::to_string(value) + " exceeds " + std::to_string(bound);
}

}  // namespace

bool run_selftest(std::ostream& log) {
    std::vector<Check> checks;

    checks.push_back({"kron index formula", [] {
        Rng rng(1);
        const ComplexMatrix a = random_matrix(rng, 2), b = random_matrix(rng, 2);
        const ComplexMatrix k = kron(a, b);
        double err = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int r = 0; r < 2; ++r)
                    for (int c = 0; c < 2; ++c) err = std::max(err, std::abs(k(2 * i + r, 2 * j + c) - a(i, j) * b(r, c)));
        return expect_le(err, 1e-15, "max entry error");
    }});

    checks.push_back({"partial trace of Bell state", [] {
        const std::vector<int> dims{2, 2}, keep{0};
        const ComplexMatrix red = partial_trace(bell_state(), dims, keep);
        return expect_le(max_abs(red - 0.5 * ComplexMatrix::Identity(2, 2)), 1e-15, "marginal error");
    }});

    checks.push_back({"eigensolver reconstruction (dim 48)", [] {
        Rng rng(2);
        const ComplexMatrix h = random_hermitian(rng, 48);
        const Spectrum s = eig_hermitian(h);
        const double ortho = max_abs(s.vectors.adjoint() * s.vectors - ComplexMatrix::Identity(48, 48));
        const double recon = max_abs(s.reconstruct() - h) / max_abs(h);
        if (auto e = expect_le(ortho, 1e-10, "orthonormality residual"); !e.empty()) return e;
        return expect_le(recon, 1e-9, "relative reconstruction residual");
    }});

    checks.push_back({"gamma = 0 matches unitary evolution", [] {
        Rng rng(3);
        const ComplexMatrix h = random_hermitian(rng, 12), rho0 = random_density(rng, 12);
        const Propagator prop(h, rho0, 0.0);
        const Spectrum& s = prop.spectrum();
        const double t = 1.7;
        ComplexVector phase(12);
        for (int i = 0; i < 12; ++i) phase(i) = std::exp(Complex(0.0, -s.values(i) * t));
        const ComplexMatrix u = s.vectors * phase.asDiagonal() * s.vectors.adjoint();
        return expect_le(max_abs(prop.evolve(t) - u * rho0 * u.adjoint()), 1e-10, "max-norm deviation");
    }});

    checks.push_back({"operator series matches eigenbasis kernel", [] {
        Rng rng(4);
        const ComplexMatrix h = random_hermitian(rng, 8), rho0 = random_density(rng, 8);
        const Propagator prop(h, rho0, 0.05);
        return expect_le(max_abs(evolve_series_oracle(h, rho0, 0.05, 1.0, 40) - prop.evolve(1.0)), 1e-8,
                         "max-norm deviation");
    }});

    checks.push_back({"discord of product and Bell states", [] {
        ComplexMatrix prod = ComplexMatrix::Zero(4, 4);
        prod(0, 0) = 0.3 * 0.6;
        prod(1, 1) = 0.3 * 0.4;
        prod(2, 2) = 0.7 * 0.6;
        prod(3, 3) = 0.7 * 0.4;
        if (auto e = expect_le(gqd(prod).value, 1e-6, "product-state discord"); !e.empty()) return e;
        return expect_le(std::abs(gqd(bell_state()).value - 1.0), 1e-3, "Bell discord error");
    }});

    checks.push_back({"QFI of classical and pure families", [] {
        ComplexMatrix rho = ComplexMatrix::Zero(2, 2), drho = ComplexMatrix::Zero(2, 2);
        rho(0, 0) = 0.25;
        rho(1, 1) = 0.75;
        drho(0, 0) = 1.0;
        drho(1, 1) = -1.0;
        if (auto e = expect_le(std::abs(qfi({rho, drho}) - 16.0 / 3.0), 1e-9, "classical QFI error"); !e.empty())
            return e;
        const double th = 0.4;
        ComplexVector psi = ComplexVector::Zero(4), dpsi = ComplexVector::Zero(4);
        psi(0) = std::cos(th);
        psi(3) = std::sin(th);
        dpsi(0) = -std::sin(th);
        dpsi(3) = std::cos(th);
        const ComplexMatrix pure = psi * psi.adjoint();
        const ComplexMatrix dpure = dpsi * psi.adjoint() + psi * dpsi.adjoint();
        return expect_le(std::abs(qfi({pure, dpure}) - 4.0), 1e-8, "pure-family QFI error");
    }});

    checks.push_back({"SLD defining relation", [] {
        Rng rng(5);
        const ComplexMatrix rho = random_density(rng, 4);
        ComplexMatrix drho = random_hermitian(rng, 4);
        drho -= (drho.trace() / 4.0) * ComplexMatrix::Identity(4, 4);
        const ComplexMatrix d = symmetric_log_derivative({rho, drho});
        return expect_le(max_abs(0.5 * (rho * d + d * rho) - drho), 1e-8, "relation residual");
    }});

    checks.push_back({"propagated derivative matches finite difference", [] {
        const ScenarioConfig cfg = preset("fig1", 0);
        const HilbertLayout layout = cfg.system.layout();
        const ComplexMatrix h = build_hamiltonian(cfg.system);
        const double delta = 1e-5;
        InitialStateParams lo = cfg.initial, hi = cfg.initial;
        lo.theta -= delta;
        hi.theta += delta;
        const Propagator p(h, build_initial_state(cfg.initial, layout), cfg.system.gamma);
        const Propagator plo(h, build_initial_state(lo, layout), cfg.system.gamma);
        const Propagator phi(h, build_initial_state(hi, layout), cfg.system.gamma);
        const ComplexMatrix d0 = p.channel().to_eigenbasis(initial_state_theta_derivative(cfg.initial, layout));
        double worst = 0.0;
        for (double t : {0.0, 0.5, 3.0, 10.0, 50.0}) {
            const ComplexMatrix fd = (phi.evolve(t) - plo.evolve(t)) / (2 * delta);
            worst = std::max(worst, max_abs(fd - p.channel().apply(d0, t)));
        }
        return expect_le(worst, 1e-6, "max-norm deviation");
    }});

    checks.push_back({"state legality along a short run", [] {
        const ScenarioConfig cfg = preset("fig1", 3);
        const HilbertLayout layout = cfg.system.layout();
        const Propagator p(build_hamiltonian(cfg.system), build_initial_state(cfg.initial, layout), cfg.system.gamma);
        for (int k = 0; k <= 200; ++k) {
            const StateDiagnostics d = diagnose_state(p.evolve(0.05 * k));
            if (!d.legal()) return "illegal state at t=" + std::to_string(0.05 * k);
        }
        return std::string{};
    }});

    bool ok = true;
    for (const auto& c : checks) {
        std::string detail;
        try {
            detail = c.run();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const bool pass = detail.empty();
        ok &= pass;
        log << (pass ? "PASS " : "FAIL ") << c.name;
        if (!pass) log << " (" << detail << ")";
        log << '\n';
    }
    return ok;
}

}  // namespace kerrsim
