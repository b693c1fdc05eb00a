#pragma once

// Dense complex linear algebra on the composite atoms (x) field space.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace kerrsim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Default numerical tolerances. Every function taking one of these accepts an override.
struct Tolerances {
    double hermitian_input = 1e-10;  ///< eig_hermitian rejects inputs with a larger residual
    double trace = 1e-9;             ///< unit-trace checks on density matrices
    double entropy_floor = 1e-12;    ///< eigenvalues at or below are dropped from entropies
    double qfi_pair_cutoff = 1e-10;  ///< eigenvalue pairs with lambda_k + lambda_k' <= cutoff are skipped
};

inline constexpr Tolerances kDefaultTolerances{};

/// Subsystem bookkeeping: N qubits followed by one field mode truncated at n_cutoff photons.
/// Subsystem indices are 0-based; atoms are 0..n_atoms-1 and the field is n_atoms.
class HilbertLayout {
public:
    HilbertLayout(int n_atoms, int n_cutoff);

    int n_atoms() const noexcept { return n_atoms_; }
    int n_cutoff() const noexcept { return n_cutoff_; }
    int field_dim() const noexcept { return n_cutoff_ + 1; }
    int atoms_dim() const noexcept { return 1 << n_atoms_; }
    int total_dim() const noexcept { return atoms_dim() * field_dim(); }
    int field_index() const noexcept { return n_atoms_; }
    const std::vector<int>& dims() const noexcept { return dims_; }

    /// Subsystem indices of all atoms, i.e. everything but the field.
    std::vector<int> atom_subsystems() const;

    static constexpr int kMaxAtoms = 4;

private:
    int n_atoms_;
    int n_cutoff_;
    std::vector<int> dims_;
};

/// Eigen-decomposition of a Hermitian matrix. Columns of `vectors` are the eigenvectors,
/// ordered to match the ascending `values`.
struct Spectrum {
    RealVector values;
    ComplexMatrix vectors;

    int dim() const noexcept { return static_cast<int>(values.size()); }
    /// V diag(values) V^dagger
    ComplexMatrix reconstruct() const;
};

/// Kronecker product of the factors, first factor most significant.
ComplexMatrix kron(std::span<const ComplexMatrix> factors);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Trace out every subsystem not listed in `keep`. Kept subsystems retain their relative
/// order in `dims`, regardless of the order they appear in `keep`.
ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const int> dims,
                            std::span<const int> keep);
ComplexMatrix partial_trace(const ComplexMatrix& rho, const HilbertLayout& layout,
                            std::span<const int> keep);

/// Reduced state of the atomic register (field traced out).
ComplexMatrix trace_out_field(const ComplexMatrix& rho, const HilbertLayout& layout);

/// Hermitian eigensolver. Eigenvalues ascending; each eigenvector's largest-magnitude
/// component (first one on ties) is made real and positive.
Spectrum eig_hermitian(const ComplexMatrix& h, double hermitian_tol = kDefaultTolerances.hermitian_input);

/// Eigenvalues only, ascending. No Hermiticity check beyond symmetrizing the input.
RealVector eigenvalues_hermitian(const ComplexMatrix& h);

double max_abs(const ComplexMatrix& m);
/// max |M_ij - conj(M_ji)|
double hermiticity_residual(const ComplexMatrix& m);
bool is_square(const ComplexMatrix& m);

/// Diagnostics for a density matrix: trace deviation, Hermiticity and smallest eigenvalue.
struct StateDiagnostics {
    double trace_error = 0.0;
    double hermiticity = 0.0;
    double min_eigenvalue = 0.0;

    bool legal(double trace_tol = 1e-9, double herm_tol = 1e-9, double eig_floor = -1e-8) const {
        return trace_error <= trace_tol && hermiticity <= herm_tol && min_eigenvalue >= eig_floor;
    }
};

StateDiagnostics diagnose_state(const ComplexMatrix& rho);

}  // namespace kerrsim
