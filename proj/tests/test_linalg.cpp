#include <doctest.h>

#include <numbers>

#include "kerrsim/errors.hpp"
#include "kerrsim/linalg.hpp"
#include "oracles.hpp"

using namespace kerrsim;

namespace {

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

}  // namespace

TEST_CASE("HilbertLayout dimensions and ordering") {
    const HilbertLayout l(3, 4);
    CHECK(l.total_dim() == 8 * 5);
    CHECK(l.dims() == std::vector<int>{2, 2, 2, 5});
    CHECK(l.field_index() == 3);
    CHECK(l.atom_subsystems() == std::vector<int>{0, 1, 2});
    CHECK_THROWS_AS(HilbertLayout(0, 2), InvalidInput);
    CHECK_THROWS_AS(HilbertLayout(5, 2), InvalidInput);
    CHECK_THROWS_AS(HilbertLayout(2, 0), InvalidInput);
}

TEST_CASE("kron") {
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);

    SUBCASE("identity factors") {
        const std::vector<ComplexMatrix> f{i2, i2};
        CHECK(max_abs(kron(f) - ComplexMatrix::Identity(4, 4)) == 0.0);
    }
    SUBCASE("sigma_z on the first factor") {
        const ComplexMatrix k = kron(pauli_z(), i2);
        Eigen::VectorXcd expect(4);
        expect << 1, 1, -1, -1;
        CHECK(max_abs(k - ComplexMatrix(expect.asDiagonal())) == 0.0);
    }
    SUBCASE("index formula on random factors") {
        oracle::Rng rng(11);
        for (int trial = 0; trial < 5; ++trial) {
            const auto a = oracle::random_matrix(rng, 2);
            const auto b = oracle::random_matrix(rng, 3);
            CHECK(max_abs(kron(a, b) - oracle::kron_by_index(a, b)) < 1e-15);
        }
    }
    SUBCASE("list order is associative left to right") {
        oracle::Rng rng(12);
        const auto a = oracle::random_matrix(rng, 2), b = oracle::random_matrix(rng, 2), c = oracle::random_matrix(rng, 3);
        const std::vector<ComplexMatrix> f{a, b, c};
        CHECK(max_abs(kron(f) - kron(a, kron(b, c))) < 1e-14);
        CHECK(kron(f).rows() == 12);
    }
    CHECK_THROWS_AS(kron(std::span<const ComplexMatrix>{}), InvalidInput);
}

TEST_CASE("partial_trace") {
    oracle::Rng rng(21);

    SUBCASE("product state keeps the kept factor") {
        const auto ra = oracle::random_density(rng, 2);
        const auto rb = oracle::random_density(rng, 3);
        const std::vector<int> dims{2, 3};
        const std::vector<int> keep_a{0}, keep_b{1};
        CHECK(max_abs(partial_trace(kron(ra, rb), dims, keep_a) - ra) < 1e-14);
        CHECK(max_abs(partial_trace(kron(ra, rb), dims, keep_b) - rb) < 1e-14);
    }
    SUBCASE("Bell state marginal is maximally mixed") {
        const std::vector<int> dims{2, 2}, keep{0};
        CHECK(max_abs(partial_trace(oracle::bell_phi_plus(), dims, keep) - 0.5 * ComplexMatrix::Identity(2, 2)) <
              1e-15);
    }
    SUBCASE("2x2x3 state against the triple-index sum") {
        const auto rho = oracle::random_density(rng, 12);
        const HilbertLayout layout(2, 2);
        const std::vector<int> keep{0, 1};
        const ComplexMatrix got = partial_trace(rho, layout, keep);
        ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
        for (int a1 = 0; a1 < 2; ++a1)
            for (int a2 = 0; a2 < 2; ++a2)
                for (int b1 = 0; b1 < 2; ++b1)
                    for (int b2 = 0; b2 < 2; ++b2)
                        for (int n = 0; n < 3; ++n)
                            expect(2 * a1 + a2, 2 * b1 + b2) += rho((2 * a1 + a2) * 3 + n, (2 * b1 + b2) * 3 + n);
        CHECK(max_abs(got - expect) < 1e-15);
        CHECK(max_abs(trace_out_field(rho, layout) - expect) < 1e-15);
        CHECK(std::abs(got.trace() - rho.trace()) < 1e-12);
        CHECK(hermiticity_residual(got) < 1e-15);
    }
    SUBCASE("middle subsystem and keep order") {
        const auto rho = oracle::random_density(rng, 12);
        const std::vector<int> dims{2, 3, 2};
        const std::vector<int> keep_fwd{0, 2}, keep_rev{2, 0};
        CHECK(max_abs(partial_trace(rho, dims, keep_fwd) - partial_trace(rho, dims, keep_rev)) == 0.0);
        const std::vector<int> keep_mid{1};
        ComplexMatrix expect = ComplexMatrix::Zero(3, 3);
        for (int a = 0; a < 2; ++a)
            for (int c = 0; c < 2; ++c)
                for (int m = 0; m < 3; ++m)
                    for (int n = 0; n < 3; ++n) expect(m, n) += rho(a * 6 + m * 2 + c, a * 6 + n * 2 + c);
        CHECK(max_abs(partial_trace(rho, dims, keep_mid) - expect) < 1e-15);
    }
    SUBCASE("sequential trace over everything equals the scalar trace") {
        const auto rho = oracle::random_density(rng, 12);
        std::vector<int> dims{2, 2, 3};
        ComplexMatrix cur = rho;
        while (dims.size() > 1) {
            std::vector<int> keep;
            for (int i = 0; i + 1 < static_cast<int>(dims.size()); ++i) keep.push_back(i);
            cur = partial_trace(cur, dims, keep);
            dims.pop_back();
        }
        CHECK(std::abs(cur.trace() - rho.trace()) < 1e-12);
    }
    SUBCASE("errors") {
        const auto rho = oracle::random_density(rng, 6);
        const HilbertLayout layout(1, 3);  // total 8
        const std::vector<int> keep{0}, empty{}, bad{4};
        CHECK_THROWS_AS(partial_trace(rho, layout, keep), InvalidInput);
        const std::vector<int> dims{2, 3};
        CHECK_THROWS_AS(partial_trace(rho, dims, empty), InvalidInput);
        CHECK_THROWS_AS(partial_trace(rho, dims, bad), InvalidInput);
    }
}

TEST_CASE("eig_hermitian") {
    SUBCASE("diagonal input") {
        ComplexMatrix h = ComplexMatrix::Zero(3, 3);
        h(0, 0) = 3;
        h(1, 1) = 1;
        h(2, 2) = 2;
        const Spectrum s = eig_hermitian(h);
        CHECK(s.values(0) == doctest::Approx(1.0));
        CHECK(s.values(1) == doctest::Approx(2.0));
        CHECK(s.values(2) == doctest::Approx(3.0));
        ComplexMatrix perm = ComplexMatrix::Zero(3, 3);
        perm(1, 0) = 1;
        perm(2, 1) = 1;
        perm(0, 2) = 1;
        CHECK(max_abs(s.vectors - perm) < 1e-14);
    }
    SUBCASE("sigma_x") {
        const Spectrum s = eig_hermitian(pauli_x());
        CHECK(s.values(0) == doctest::Approx(-1.0));
        CHECK(s.values(1) == doctest::Approx(1.0));
        const double r = 1.0 / std::sqrt(2.0);
        // Largest component made real-positive; ties resolve to the first index.
        CHECK(std::abs(s.vectors(0, 0) - Complex(r, 0)) < 1e-14);
        CHECK(std::abs(s.vectors(1, 0) - Complex(-r, 0)) < 1e-14);
        CHECK(std::abs(s.vectors(0, 1) - Complex(r, 0)) < 1e-14);
        CHECK(std::abs(s.vectors(1, 1) - Complex(r, 0)) < 1e-14);
    }
    SUBCASE("random 96x96 reconstruction") {
        oracle::Rng rng(31);
        const auto h = oracle::random_hermitian(rng, 96);
        const Spectrum s = eig_hermitian(h);
        CHECK(max_abs(s.vectors.adjoint() * s.vectors - ComplexMatrix::Identity(96, 96)) <= 1e-10);
        CHECK(max_abs(s.reconstruct() - h) <= 1e-9 * max_abs(h));
        CHECK(std::abs(s.values.sum() - h.trace().real()) <= 1e-9 * 96);
        for (int i = 1; i < 96; ++i) CHECK(s.values(i) >= s.values(i - 1));
        for (int c = 0; c < 96; ++c) {
            Eigen::Index r;
            s.vectors.col(c).cwiseAbs().maxCoeff(&r);
            CHECK(std::abs(s.vectors(r, c).imag()) == 0.0);
            CHECK(s.vectors(r, c).real() > 0.0);
        }
        const Spectrum again = eig_hermitian(h);
        CHECK(max_abs(again.vectors - s.vectors) == 0.0);
        CHECK((again.values - s.values).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("degenerate cluster stays orthonormal") {
        oracle::Rng rng(32);
        const auto v = eig_hermitian(oracle::random_hermitian(rng, 6)).vectors;
        Eigen::VectorXd d(6);
        d << 1, 1, 1, 2, 2, 5;
        const ComplexMatrix h = v * d.cast<Complex>().asDiagonal() * v.adjoint();
        const Spectrum s = eig_hermitian(h);
        CHECK(max_abs(s.vectors.adjoint() * s.vectors - ComplexMatrix::Identity(6, 6)) < 1e-12);
        CHECK(max_abs(s.reconstruct() - h) < 1e-12);
    }
    SUBCASE("non-Hermitian input is rejected") {
        ComplexMatrix h = pauli_x();
        h(0, 1) = 2.0;
        CHECK_THROWS_AS(eig_hermitian(h), InvalidInput);
        CHECK_THROWS_AS(eig_hermitian(ComplexMatrix::Zero(2, 3)), InvalidInput);
    }
}

TEST_CASE("diagnose_state") {
    oracle::Rng rng(41);
    const auto rho = oracle::random_density(rng, 5);
    CHECK(diagnose_state(rho).legal());
    CHECK_FALSE(diagnose_state(2.0 * rho).legal());
    ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
    neg(0, 0) = 1.1;
    neg(1, 1) = -0.1;
    CHECK(diagnose_state(neg).min_eigenvalue == doctest::Approx(-0.1));
    CHECK_FALSE(diagnose_state(neg).legal());
}
