#include "qcorr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "qcorr/errors.hpp"

namespace qcorr {

BipartiteDims::BipartiteDims(std::size_t dimA, std::size_t dimB) : dimA_(dimA), dimB_(dimB) {
    if (dimA < 2 || dimB < 2) {
        throw StructuralError("bipartite local dimensions must be >= 2, got " + std::to_string(dimA) +
                              "x" + std::to_string(dimB));
    }
}

namespace linalg {
namespace {

// Dense envelope: local dimension up to 64 on each side.
constexpr Eigen::Index kMaxSide = 4096;

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols()) {
        throw StructuralError(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                              std::to_string(m.cols()) + ", expected square");
    }
}

void require_bipartite(const ComplexMatrix& rho, const BipartiteDims& dims, const char* what) {
    require_square(rho, what);
    if (static_cast<std::size_t>(rho.rows()) != dims.total()) {
        throw StructuralError(std::string(what) + ": side " + std::to_string(rho.rows()) +
                              " does not match dimA*dimB = " + std::to_string(dims.total()));
    }
}

void require_hermitian(const ComplexMatrix& m, const char* what) {
    require_square(m, what);
    if (m.rows() > kMaxSide) {
        throw CapabilityError(std::string(what) + ": side " + std::to_string(m.rows()) +
                              " exceeds the dense envelope of " + std::to_string(kMaxSide));
    }
    if (!is_hermitian(m)) {
        throw StructuralError(std::string(what) + ": matrix is not Hermitian (residual " +
                              std::to_string(hermiticity_residual(m)) + ")");
    }
}

} // namespace

double hermiticity_residual(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    if (m.size() == 0) {
        return true;
    }
    const double scale = m.cwiseAbs().maxCoeff();
    return hermiticity_residual(m) <= rel_tol * scale;
}

EigenDecomposition hermitian_eigensystem(const ComplexMatrix& m) {
    require_hermitian(m, "hermitian_eigensystem");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw StructuralError("hermitian_eigensystem: solver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
    require_hermitian(m, "hermitian_eigenvalues");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw StructuralError("hermitian_eigenvalues: solver did not converge");
    }
    return solver.eigenvalues();
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const BipartiteDims& dims, Side traced) {
    require_bipartite(rho, dims, "partial_trace");
    const auto dA = static_cast<Eigen::Index>(dims.dimA());
    const auto dB = static_cast<Eigen::Index>(dims.dimB());

    if (traced == Side::B) {
        ComplexMatrix out = ComplexMatrix::Zero(dA, dA);
        for (Eigen::Index a = 0; a < dA; ++a) {
            for (Eigen::Index ap = 0; ap < dA; ++ap) {
                out(a, ap) = rho.block(a * dB, ap * dB, dB, dB).trace();
            }
        }
        return out;
    }

    ComplexMatrix out = ComplexMatrix::Zero(dB, dB);
    for (Eigen::Index a = 0; a < dA; ++a) {
        out += rho.block(a * dB, a * dB, dB, dB);
    }
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, const BipartiteDims& dims, Side side) {
    require_bipartite(rho, dims, "partial_transpose");
    const auto dA = static_cast<Eigen::Index>(dims.dimA());
    const auto dB = static_cast<Eigen::Index>(dims.dimB());

    ComplexMatrix out(rho.rows(), rho.cols());
    for (Eigen::Index a = 0; a < dA; ++a) {
        for (Eigen::Index ap = 0; ap < dA; ++ap) {
            if (side == Side::B) {
                out.block(a * dB, ap * dB, dB, dB) = rho.block(a * dB, ap * dB, dB, dB).transpose();
            } else {
                out.block(a * dB, ap * dB, dB, dB) = rho.block(ap * dB, a * dB, dB, dB);
            }
        }
    }
    return out;
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

double spectrum_entropy(std::span<const double> spectrum) {
    double s = 0.0;
    for (double p : spectrum) {
        if (p < -kNegativeClip) {
            throw NotAStateError("negative eigenvalue " + std::to_string(p) +
                                 " below the clip window");
        }
        if (p < kZeroEigenvalue) {
            continue;
        }
        s -= p * std::log2(p);
    }
    return s;
}

double von_neumann_entropy(const ComplexMatrix& rho) {
    require_square(rho, "von_neumann_entropy");
    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > kUnitTraceTol) {
        throw NotAStateError("von_neumann_entropy: trace " + std::to_string(tr) + " is not 1");
    }
    const RealVector ev = hermitian_eigenvalues(rho);
    return spectrum_entropy(std::span<const double>(ev.data(), static_cast<std::size_t>(ev.size())));
}

double purity(const ComplexMatrix& rho) {
    require_square(rho, "purity");
    // tr(rho^2) = sum_ij rho_ij rho_ji; for Hermitian input this is the squared Frobenius norm.
    Complex acc = 0.0;
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        for (Eigen::Index j = 0; j < rho.cols(); ++j) {
            acc += rho(i, j) * rho(j, i);
        }
    }
    return acc.real();
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_square(a, "commutator_norm");
    require_square(b, "commutator_norm");
    if (a.rows() != b.rows()) {
        throw StructuralError("commutator_norm: operand sides differ (" + std::to_string(a.rows()) +
                              " vs " + std::to_string(b.rows()) + ")");
    }
    return (a * b - b * a).norm();
}

} // namespace linalg
} // namespace qcorr
