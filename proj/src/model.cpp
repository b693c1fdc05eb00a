#include "kerrsim/model.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "kerrsim/errors.hpp"

namespace kerrsim {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw ConfigError(std::string(name) + " must be finite");
}

// Index of |e...e> and |g...g> in the atomic register.
constexpr int all_excited_index() { return 0; }
int all_ground_index(int n_atoms) { return (1 << n_atoms) - 1; }

ComplexMatrix single_atom(AtomOp which) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    switch (which) {
        case AtomOp::z:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
        case AtomOp::plus:
            m(0, 1) = 1.0;  // |e><g|
            break;
        case AtomOp::minus:
            m(1, 0) = 1.0;  // |g><e|
            break;
    }
    return m;
}

}  // namespace

void SystemParams::validate() const {
    if (n_atoms < 1 || n_atoms > HilbertLayout::kMaxAtoms) {
        throw ConfigError("n_atoms must be in [1, 4], got " + std::to_string(n_atoms));
    }
    if (n_cutoff < 1) throw ConfigError("n_cutoff must be >= 1, got " + std::to_string(n_cutoff));
    require_finite(omega0, "omega0");
    require_finite(omega, "omega");
    require_finite(g, "g");
    require_finite(chi, "chi");
    require_finite(kappa, "kappa");
    require_finite(gamma, "gamma");
    if (chi < 0.0) throw ConfigError("chi must be >= 0");
    if (kappa < 0.0) throw ConfigError("kappa must be >= 0");
    if (gamma < 0.0) throw ConfigError("gamma must be >= 0");
}

void InitialStateParams::validate() const {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must be in [0, 1]");
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw ConfigError("theta must be in [0, pi]");
}

ComplexMatrix annihilation_op(int n_cutoff) {
    if (n_cutoff < 1) throw InvalidInput("annihilation_op: n_cutoff must be >= 1");
    ComplexMatrix a = ComplexMatrix::Zero(n_cutoff + 1, n_cutoff + 1);
    for (int n = 1; n <= n_cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

ComplexMatrix atom_op(AtomOp which, int atom_index, const HilbertLayout& layout) {
    if (atom_index < 1 || atom_index > layout.n_atoms()) {
        throw InvalidInput("atom_op: atom index " + std::to_string(atom_index) + " outside [1, " +
                           std::to_string(layout.n_atoms()) + "]");
    }
    std::vector<ComplexMatrix> factors;
    for (int i = 1; i <= layout.n_atoms(); ++i) {
        factors.push_back(i == atom_index ? single_atom(which) : ComplexMatrix::Identity(2, 2));
    }
    factors.push_back(ComplexMatrix::Identity(layout.field_dim(), layout.field_dim()));
    return kron(factors);
}

ComplexMatrix field_op(const ComplexMatrix& op, const HilbertLayout& layout) {
    if (op.rows() != layout.field_dim() || op.cols() != layout.field_dim()) {
        throw InvalidInput("field_op: operator dimension does not match the field");
    }
    return kron(ComplexMatrix::Identity(layout.atoms_dim(), layout.atoms_dim()), op);
}

ComplexMatrix build_hamiltonian(const SystemParams& params) {
    params.validate();
    const HilbertLayout layout = params.layout();

    // Field operators are formed from the truncated a, so (a^dag a)^2 = diag(n^2) exactly.
    const ComplexMatrix a = annihilation_op(params.n_cutoff);
    const ComplexMatrix ad = a.adjoint();
    const ComplexMatrix number = ad * a;
    const ComplexMatrix a2 = a * a;
    const ComplexMatrix ad2 = ad * ad;

    ComplexMatrix field_part = params.omega * number + params.chi * number * number -
                               kI * (0.5 * params.kappa) * (a2 - ad2);
    ComplexMatrix h = field_op(field_part, layout);

    const ComplexMatrix a_full = field_op(a, layout);
    const ComplexMatrix ad_full = field_op(ad, layout);
    for (int i = 1; i <= layout.n_atoms(); ++i) {
        h += 0.5 * params.omega0 * atom_op(AtomOp::z, i, layout);
        h += params.g * (a_full * atom_op(AtomOp::plus, i, layout) +
                         ad_full * atom_op(AtomOp::minus, i, layout));
    }
    return h;
}

ComplexMatrix excitation_operator(const HilbertLayout& layout) {
    const ComplexMatrix a = annihilation_op(layout.n_cutoff());
    ComplexMatrix n_op = field_op(a.adjoint() * a, layout);
    for (int i = 1; i <= layout.n_atoms(); ++i) n_op += 0.5 * atom_op(AtomOp::z, i, layout);
    return n_op;
}

ComplexMatrix initial_atomic_state(const InitialStateParams& isp, int n_atoms) {
    isp.validate();
    const int dim = 1 << n_atoms;
    ComplexVector psi = ComplexVector::Zero(dim);
    psi(all_ground_index(n_atoms)) = std::cos(isp.theta);
    psi(all_excited_index()) = std::sin(isp.theta);

    ComplexMatrix rho = (1.0 - isp.p) * psi * psi.adjoint();
    rho(all_ground_index(n_atoms), all_ground_index(n_atoms)) += isp.p;
    return rho;
}

ComplexMatrix initial_field_state(int n_cutoff) {
    if (n_cutoff < 1) throw InvalidInput("initial_field_state: n_cutoff must be >= 1");
    const int d = n_cutoff + 1;
    return ComplexMatrix::Identity(d, d) / static_cast<double>(d);
}

ComplexMatrix build_initial_state(const InitialStateParams& isp, const HilbertLayout& layout) {
    return kron(initial_atomic_state(isp, layout.n_atoms()), initial_field_state(layout.n_cutoff()));
}

ComplexMatrix initial_state_theta_derivative(const InitialStateParams& isp, const HilbertLayout& layout) {
    isp.validate();
    const int n = layout.n_atoms();
    const int dim = 1 << n;
    ComplexVector psi = ComplexVector::Zero(dim);
    ComplexVector dpsi = ComplexVector::Zero(dim);
    psi(all_ground_index(n)) = std::cos(isp.theta);
    psi(all_excited_index()) = std::sin(isp.theta);
    dpsi(all_ground_index(n)) = -std::sin(isp.theta);
    dpsi(all_excited_index()) = std::cos(isp.theta);

    const ComplexMatrix datoms = (1.0 - isp.p) * (dpsi * psi.adjoint() + psi * dpsi.adjoint());
    return kron(datoms, initial_field_state(layout.n_cutoff()));
}

}  // namespace kerrsim
