#include <doctest.h>

#include <numbers>

#include "kerrsim/dynamics.hpp"
#include "kerrsim/errors.hpp"
#include "kerrsim/metrology.hpp"
#include "kerrsim/model.hpp"
#include "oracles.hpp"

using namespace kerrsim;

namespace {

constexpr double kPi = std::numbers::pi;

SystemParams fig1_params(int n_cutoff) { return SystemParams{2, n_cutoff, 1.0, 1.0, 1.0, 1.0, 1.0, 0.05}; }

QfiInput ghz_family(int n, double theta) {
    const int d = 1 << n;
    ComplexVector psi = ComplexVector::Zero(d), dpsi = ComplexVector::Zero(d);
    psi(0) = std::cos(theta);
    psi(d - 1) = std::sin(theta);
    dpsi(0) = -std::sin(theta);
    dpsi(d - 1) = std::cos(theta);
    return {psi * psi.adjoint(), dpsi * psi.adjoint() + psi * dpsi.adjoint()};
}

}  // namespace

TEST_CASE("qfi") {
    oracle::Rng rng(1);

    SUBCASE("parameter-independent state") {
        const auto rho = oracle::random_density(rng, 4);
        CHECK(qfi({rho, ComplexMatrix::Zero(4, 4)}) == 0.0);
    }
    SUBCASE("classical diagonal family reduces to the Fisher information") {
        ComplexMatrix rho = ComplexMatrix::Zero(2, 2), drho = ComplexMatrix::Zero(2, 2);
        rho(0, 0) = 0.25;
        rho(1, 1) = 0.75;
        drho(0, 0) = 1.0;
        drho(1, 1) = -1.0;
        CHECK(std::abs(qfi({rho, drho}) - 16.0 / 3.0) <= 1e-9);
    }
    SUBCASE("pure GHZ-type family") {
        for (int n : {1, 2, 3, 4}) {
            for (double th : {0.1, kPi / 4, 1.3}) {
                const QfiInput in = ghz_family(n, th);
                CHECK(std::abs(qfi(in) - 4.0) <= 1e-8);
            }
        }
    }
    SUBCASE("random pure families against 4 Var") {
        for (int trial = 0; trial < 5; ++trial) {
            const ComplexVector psi = oracle::random_matrix(rng, 4).col(0).normalized();
            const ComplexVector dpsi = oracle::random_matrix(rng, 4).col(0) * 0.3;
            // keep the family normalized to first order
            const ComplexVector dpsi_t = dpsi - Complex(psi.dot(dpsi).real(), 0.0) * psi;
            const ComplexMatrix rho = psi * psi.adjoint();
            const ComplexMatrix drho = dpsi_t * psi.adjoint() + psi * dpsi_t.adjoint();
            CHECK(qfi({rho, drho}) == doctest::Approx(oracle::pure_state_qfi(psi, dpsi_t)).epsilon(1e-9));
        }
    }
    SUBCASE("non-negative") {
        for (int trial = 0; trial < 20; ++trial) {
            const auto rho = oracle::random_density(rng, 4);
            CHECK(qfi({rho, oracle::random_traceless_hermitian(rng, 4)}) >= 0.0);
        }
    }
    CHECK_THROWS_AS(qfi({ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(3, 3)}), InvalidInput);
}

TEST_CASE("symmetric logarithmic derivative") {
    oracle::Rng rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        const auto rho = oracle::random_density(rng, 4);
        const auto drho = oracle::random_traceless_hermitian(rng, 4);
        const ComplexMatrix d = symmetric_log_derivative({rho, drho});
        CHECK(max_abs(0.5 * (rho * d + d * rho) - drho) <= 1e-8);
        // Tr(rho D^2) is the same number the spectral sum gives
        CHECK((rho * d * d).trace().real() == doctest::Approx(qfi({rho, drho})).epsilon(1e-9));
    }
}

TEST_CASE("cfi_diagonal") {
    const std::vector<double> p{0.25, 0.75}, dp{1.0, -1.0}, zero{0.0, 0.0};
    CHECK(cfi_diagonal(p, zero) == 0.0);
    CHECK(cfi_diagonal(p, dp) == doctest::Approx(16.0 / 3.0).epsilon(1e-14));
    const std::vector<double> short_dp{1.0};
    CHECK_THROWS_AS(cfi_diagonal(p, short_dp), InvalidInput);

    oracle::Rng rng(3);
    std::uniform_real_distribution<double> u(0.05, 1.0), du(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> probs(5), dprobs(5);
        double s = 0, ds = 0;
        for (int i = 0; i < 5; ++i) {
            probs[i] = u(rng);
            dprobs[i] = du(rng);
            s += probs[i];
            ds += dprobs[i];
        }
        ComplexMatrix rho = ComplexMatrix::Zero(5, 5), drho = ComplexMatrix::Zero(5, 5);
        for (int i = 0; i < 5; ++i) {
            probs[i] /= s;
            dprobs[i] -= ds / 5;
            rho(i, i) = probs[i];
            drho(i, i) = dprobs[i];
        }
        CHECK(std::abs(cfi_diagonal(probs, dprobs) - qfi({rho, drho})) <= 1e-9);
    }
}

TEST_CASE("aqfi_timeseries") {
    SUBCASE("t = 0 limits") {
        for (int n : {2, 3, 4}) {
            SystemParams sp = fig1_params(2);
            sp.n_atoms = n;
            const std::vector<double> t0{0.0};
            CHECK(std::abs(aqfi_timeseries(sp, {0.0, kPi / 4}, t0)[0] - 4.0) <= 1e-8);
            CHECK(aqfi_timeseries(sp, {1.0, kPi / 4}, t0)[0] == 0.0);
        }
    }
    SUBCASE("propagated derivative equals the finite difference of evolved states") {
        const SystemParams sp = fig1_params(3);
        const HilbertLayout l = sp.layout();
        const ComplexMatrix h = build_hamiltonian(sp);
        const InitialStateParams isp{0.5, kPi / 4};
        const double delta = 1e-5;
        const Propagator p(h, build_initial_state(isp, l), sp.gamma);
        const Propagator lo(h, build_initial_state({isp.p, isp.theta - delta}, l), sp.gamma);
        const Propagator hi(h, build_initial_state({isp.p, isp.theta + delta}, l), sp.gamma);
        const ComplexMatrix d0 = p.channel().to_eigenbasis(initial_state_theta_derivative(isp, l));
        for (double t : {0.0, 0.05, 1.0, 13.3, 80.0, 200.0}) {
            const ComplexMatrix fd = (hi.evolve(t) - lo.evolve(t)) / (2 * delta);
            CHECK(max_abs(fd - p.channel().apply(d0, t)) <= 1e-6);
        }
    }
    SUBCASE("tracing out the field cannot increase the QFI") {
        for (int nc : {2, 4}) {
            const SystemParams sp = fig1_params(nc);
            const HilbertLayout l = sp.layout();
            const InitialStateParams isp{0.3, 0.6};
            const Propagator p(build_hamiltonian(sp), build_initial_state(isp, l), sp.gamma);
            const ComplexMatrix d0 = p.channel().to_eigenbasis(initial_state_theta_derivative(isp, l));
            std::vector<double> grid;
            for (int k = 0; k <= 40; ++k) grid.push_back(2.5 * k);
            const auto reduced = aqfi_timeseries(sp, isp, grid);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double full = qfi({p.evolve(grid[i]), p.channel().apply(d0, grid[i])});
                CHECK(reduced[i] <= full + 1e-8);
                // convexity in the mixture weight bounds everything by 4 (1 - p)
                CHECK(full <= 4.0 * (1.0 - isp.p) + 1e-8);
            }
        }
    }
    SUBCASE("grid must ascend") {
        const std::vector<double> bad{0.0, 1.0, 0.5};
        CHECK_THROWS_AS(aqfi_timeseries(fig1_params(2), {0.5, 0.5}, bad), InvalidInput);
    }
}
