#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "qcorr/linalg.hpp"

namespace qcorr {

// Werner family on C^d (x) C^d, lambda = tr(rho Pi^-).
class WernerParams {
  public:
    WernerParams(std::size_t d, double lambda);

    std::size_t d() const { return d_; }
    double lambda() const { return lambda_; }
    bool separable() const { return lambda_ <= 0.5; }

  private:
    std::size_t d_;
    double lambda_;
};

// Schmidt amplitudes u_1 >= ... >= u_d >= 0 with sum u_i^2 = 1.
class PureSchmidtState {
  public:
    static constexpr double kNormTol = 1e-9;

    // Validates; throws ParameterError on unnormalized, unsorted or negative input.
    explicit PureSchmidtState(std::vector<double> amplitudes);

    // Opt-in repair: absolute values, rescale to unit norm, sort descending.
    static PureSchmidtState normalized(std::vector<double> amplitudes);

    // u_i = 1/sqrt(d).
    static PureSchmidtState maximally_entangled(std::size_t d);

    // u = (1, 0, ..., 0).
    static PureSchmidtState product(std::size_t d);

    std::size_t d() const { return u_.size(); }
    const std::vector<double>& amplitudes() const { return u_; }
    double operator[](std::size_t i) const { return u_[i]; }

    // |psi> = sum_i u_i |ii> as a d^2 vector.
    ComplexVector vector() const;

  private:
    std::vector<double> u_;
};

// alpha |psi><psi| + beta (I - |psi><psi|), beta = (1 - alpha)/(d^2 - 1).
class PseudoPureParams {
  public:
    PseudoPureParams(double alpha, PureSchmidtState psi);
    PseudoPureParams(std::size_t d, double alpha, std::vector<double> schmidt);

    static PseudoPureParams isotropic(std::size_t d, double alpha);

    std::size_t d() const { return psi_.d(); }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    const PureSchmidtState& psi() const { return psi_; }
    const std::vector<double>& schmidt() const { return psi_.amplitudes(); }

  private:
    double alpha_;
    double beta_;
    PureSchmidtState psi_;
};

// Hermitian, unit-trace, positive semidefinite operator with recorded local dimensions.
class DensityMatrix {
  public:
    static constexpr double kHermitianTol = 1e-12;
    static constexpr double kTraceTol = 1e-9;
    static constexpr double kMinEigenvalue = -1e-10;

    // Validates every invariant; throws NotAStateError or StructuralError.
    DensityMatrix(ComplexMatrix matrix, BipartiteDims dims);

    const ComplexMatrix& matrix() const { return matrix_; }
    const BipartiteDims& dims() const { return dims_; }

    ComplexMatrix reduced(Side kept) const;

  private:
    ComplexMatrix matrix_;
    BipartiteDims dims_;
};

namespace states {

// Swap operator F|x>|y> = |y>|x> in the computational basis.
ComplexMatrix flip_operator(std::size_t d);

// (Pi^+, Pi^-) = ((I + F)/2, (I - F)/2).
std::pair<ComplexMatrix, ComplexMatrix> symmetric_antisymmetric_projectors(std::size_t d);

DensityMatrix build_werner(const WernerParams& p);
DensityMatrix build_pseudo_pure(const PseudoPureParams& p);
DensityMatrix build_isotropic(std::size_t d, double alpha);

DensityMatrix product_state(const ComplexMatrix& sigma, const ComplexMatrix& tau);

// Mixes a master seed with a stream index (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Normalized absolute values of d standard complex Gaussians, sorted descending.
PureSchmidtState random_schmidt_vector(std::size_t d, std::uint64_t seed);

// Haar unitary: QR of a complex Ginibre matrix with R's diagonal phases removed.
ComplexMatrix random_unitary(std::size_t d, std::uint64_t seed);
ComplexMatrix random_unitary(std::size_t d, std::mt19937_64& rng);

// Random full-rank density matrix G G^dagger / tr, for tests and diagnostics.
DensityMatrix random_density_matrix(const BipartiteDims& dims, std::uint64_t seed);

} // namespace states
} // namespace qcorr
