#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

namespace qcorr {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Local dimensions of a bipartite space. Basis index of |a>|b> is a*dimB + b.
class BipartiteDims {
  public:
    BipartiteDims(std::size_t dimA, std::size_t dimB);

    static BipartiteDims square(std::size_t d) { return {d, d}; }

    std::size_t dimA() const { return dimA_; }
    std::size_t dimB() const { return dimB_; }
    std::size_t total() const { return dimA_ * dimB_; }

    bool operator==(const BipartiteDims&) const = default;

  private:
    std::size_t dimA_;
    std::size_t dimB_;
};

enum class Side { A, B };

struct EigenDecomposition {
    RealVector eigenvalues;     // ascending
    ComplexMatrix eigenvectors; // columns
};

namespace linalg {

// Tolerances shared across modules.
inline constexpr double kHermitianRelTol = 1e-12;
inline constexpr double kZeroEigenvalue = 1e-15;   // below this, 0 log 0 = 0
inline constexpr double kNegativeClip = 1e-10;     // [-kNegativeClip, 0) clipped to 0
inline constexpr double kUnitTraceTol = 1e-9;

// Largest |M_ij - conj(M_ji)|.
double hermiticity_residual(const ComplexMatrix& m);

// max|M - M^dagger| <= rel_tol * max|M|.
bool is_hermitian(const ComplexMatrix& m, double rel_tol = kHermitianRelTol);

EigenDecomposition hermitian_eigensystem(const ComplexMatrix& m);

// Eigenvalues only, ascending. Same preconditions as hermitian_eigensystem.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

// Traces out `traced` and returns the operator on the remaining factor.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const BipartiteDims& dims, Side traced);

// Transposes the `side` factor in the product basis.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, const BipartiteDims& dims, Side side);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// -sum p log2 p over a spectrum, applying the clip window and the 0 log 0
// convention. Throws NotAStateError for entries below -kNegativeClip.
double spectrum_entropy(std::span<const double> spectrum);

// Von Neumann entropy in bits of a Hermitian unit-trace operator.
double von_neumann_entropy(const ComplexMatrix& rho);

// tr(rho^2).
double purity(const ComplexMatrix& rho);

// Frobenius norm of AB - BA.
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace linalg
} // namespace qcorr
