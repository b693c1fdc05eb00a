#include "kerrsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kerrsim/errors.hpp"

namespace kerrsim {

HilbertLayout::HilbertLayout(int n_atoms, int n_cutoff) : n_atoms_(n_atoms), n_cutoff_(n_cutoff) {
    if (n_atoms < 1 || n_atoms > kMaxAtoms) {
        throw InvalidInput("n_atoms must be in [1, " + std::to_string(kMaxAtoms) + "], got " +
                           std::to_string(n_atoms));
    }
    if (n_cutoff < 1) {
        throw InvalidInput("n_cutoff must be >= 1, got " + std::to_string(n_cutoff));
    }
    dims_.assign(static_cast<std::size_t>(n_atoms), 2);
    dims_.push_back(n_cutoff + 1);
}

std::vector<int> HilbertLayout::atom_subsystems() const {
    std::vector<int> out(static_cast<std::size_t>(n_atoms_));
    for (int i = 0; i < n_atoms_; ++i) out[static_cast<std::size_t>(i)] = i;
    return out;
}

ComplexMatrix Spectrum::reconstruct() const {
    return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix kron(std::span<const ComplexMatrix> factors) {
    if (factors.empty()) throw InvalidInput("kron: empty factor list");
    ComplexMatrix out = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const int> dims,
                            std::span<const int> keep) {
    const int n_sub = static_cast<int>(dims.size());
    if (n_sub == 0) throw InvalidInput("partial_trace: empty dimension list");
    if (keep.empty()) throw InvalidInput("partial_trace: keep set is empty");

    std::vector<bool> kept(dims.size(), false);
    for (int k : keep) {
        if (k < 0 || k >= n_sub) {
            throw InvalidInput("partial_trace: subsystem index " + std::to_string(k) + " out of range");
        }
        if (kept[static_cast<std::size_t>(k)]) {
            throw InvalidInput("partial_trace: subsystem index " + std::to_string(k) + " repeated");
        }
        kept[static_cast<std::size_t>(k)] = true;
    }

    // Row-major strides: the first subsystem is the most significant digit.
    std::vector<Eigen::Index> stride(dims.size());
    Eigen::Index total = 1;
    for (int s = n_sub - 1; s >= 0; --s) {
        if (dims[static_cast<std::size_t>(s)] < 1) throw InvalidInput("partial_trace: non-positive dimension");
        stride[static_cast<std::size_t>(s)] = total;
        total *= dims[static_cast<std::size_t>(s)];
    }
    if (rho.rows() != total || rho.cols() != total) {
        throw InvalidInput("partial_trace: matrix is " + std::to_string(rho.rows()) + "x" +
                           std::to_string(rho.cols()) + ", layout needs " + std::to_string(total));
    }

    // Offsets into the full index for every kept / traced multi-index.
    auto offsets = [&](bool want_kept) {
        std::vector<Eigen::Index> off{0};
        for (int s = 0; s < n_sub; ++s) {
            if (kept[static_cast<std::size_t>(s)] != want_kept) continue;
            std::vector<Eigen::Index> next;
            next.reserve(off.size() * static_cast<std::size_t>(dims[static_cast<std::size_t>(s)]));
            for (Eigen::Index base : off) {
                for (int d = 0; d < dims[static_cast<std::size_t>(s)]; ++d) {
                    next.push_back(base + d * stride[static_cast<std::size_t>(s)]);
                }
            }
            off = std::move(next);
        }
        return off;
    };
    const auto keep_off = offsets(true);
    const auto trace_off = offsets(false);

    const auto dk = static_cast<Eigen::Index>(keep_off.size());
    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    for (Eigen::Index a = 0; a < dk; ++a) {
        for (Eigen::Index b = 0; b < dk; ++b) {
            Complex acc{0.0, 0.0};
            for (Eigen::Index c : trace_off) acc += rho(keep_off[a] + c, keep_off[b] + c);
            out(a, b) = acc;
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const HilbertLayout& layout,
                            std::span<const int> keep) {
    return partial_trace(rho, std::span<const int>(layout.dims()), keep);
}

ComplexMatrix trace_out_field(const ComplexMatrix& rho, const HilbertLayout& layout) {
    const int atoms_dim = layout.atoms_dim();
    const int field_dim = layout.field_dim();
    if (rho.rows() != layout.total_dim() || rho.cols() != layout.total_dim()) {
        throw InvalidInput("trace_out_field: dimension mismatch");
    }
    // Field is the least significant factor, so each atomic block is field_dim x field_dim.
    ComplexMatrix out(atoms_dim, atoms_dim);
    for (int a = 0; a < atoms_dim; ++a) {
        for (int b = 0; b < atoms_dim; ++b) {
            out(a, b) = rho.block(a * field_dim, b * field_dim, field_dim, field_dim).trace();
        }
    }
    return out;
}

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_square(const ComplexMatrix& m) { return m.rows() == m.cols(); }

double hermiticity_residual(const ComplexMatrix& m) {
    if (!is_square(m)) throw InvalidInput("hermiticity_residual: matrix is not square");
    return max_abs(m - m.adjoint());
}

Spectrum eig_hermitian(const ComplexMatrix& h, double hermitian_tol) {
    if (!is_square(h) || h.rows() == 0) throw InvalidInput("eig_hermitian: matrix must be square and non-empty");
    const double residual = hermiticity_residual(h);
    if (!(residual <= hermitian_tol)) {
        throw InvalidInput("eig_hermitian: input is not Hermitian (residual " + std::to_string(residual) + ")");
    }

    const ComplexMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        // Eigen's tridiagonal QR gives up after 30 sweeps per eigenvalue.
        throw NumericError("eig_hermitian: no convergence within " + std::to_string(30 * h.rows()) +
                           " QR iterations");
    }

    Spectrum spec{solver.eigenvalues(), solver.eigenvectors()};
    for (Eigen::Index c = 0; c < spec.vectors.cols(); ++c) {
        auto col = spec.vectors.col(c);
        Eigen::Index pivot = 0;
        double best = -1.0;
        for (Eigen::Index r = 0; r < col.size(); ++r) {
            const double mag = std::abs(col(r));
            if (mag > best * (1.0 + 1e-12)) {
                best = mag;
                pivot = r;
            }
        }
        const Complex phase = std::conj(col(pivot)) / std::abs(col(pivot));
        col *= phase;
        col(pivot) = Complex(col(pivot).real(), 0.0);
    }
    return spec;
}

RealVector eigenvalues_hermitian(const ComplexMatrix& h) {
    const ComplexMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericError("eigenvalues_hermitian: no convergence");
    return solver.eigenvalues();
}

StateDiagnostics diagnose_state(const ComplexMatrix& rho) {
    StateDiagnostics d;
    d.trace_error = std::abs(rho.trace() - Complex(1.0, 0.0));
    d.hermiticity = hermiticity_residual(rho);
    d.min_eigenvalue = eigenvalues_hermitian(rho).minCoeff();
    return d;
}

}  // namespace kerrsim
