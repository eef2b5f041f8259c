#include "qcorr/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/QR>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

void require_dimension(std::size_t d, const char* what) {
    if (d < 2) {
        throw ParameterError(std::string(what) + ": dimension d must be >= 2, got " + std::to_string(d));
    }
}

void require_unit_interval(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw ParameterError(std::string(name) + " must lie in [0,1], got " + std::to_string(x));
    }
}

} // namespace

WernerParams::WernerParams(std::size_t d, double lambda) : d_(d), lambda_(lambda) {
    require_dimension(d, "WernerParams");
    require_unit_interval(lambda, "lambda");
}

PureSchmidtState::PureSchmidtState(std::vector<double> amplitudes) : u_(std::move(amplitudes)) {
    require_dimension(u_.size(), "PureSchmidtState");
    double norm2 = 0.0;
    for (std::size_t i = 0; i < u_.size(); ++i) {
        if (!(u_[i] >= 0.0)) {
            throw ParameterError("Schmidt amplitude u_" + std::to_string(i + 1) + " = " +
                                 std::to_string(u_[i]) + " is negative");
        }
        if (i > 0 && u_[i] > u_[i - 1]) {
            throw ParameterError("Schmidt amplitudes must be descending (u_" + std::to_string(i) +
                                 " < u_" + std::to_string(i + 1) + ")");
        }
        norm2 += u_[i] * u_[i];
    }
    if (std::abs(norm2 - 1.0) > kNormTol) {
        throw ParameterError("Schmidt amplitudes must satisfy sum u_i^2 = 1, got " + std::to_string(norm2));
    }
}

PureSchmidtState PureSchmidtState::normalized(std::vector<double> amplitudes) {
    for (double& x : amplitudes) {
        x = std::abs(x);
    }
    const double norm = std::sqrt(std::inner_product(amplitudes.begin(), amplitudes.end(),
                                                     amplitudes.begin(), 0.0));
    if (!(norm > 0.0)) {
        throw ParameterError("Schmidt amplitudes are all zero; cannot normalize");
    }
    for (double& x : amplitudes) {
        x /= norm;
    }
    std::sort(amplitudes.begin(), amplitudes.end(), std::greater<>());
    return PureSchmidtState(std::move(amplitudes));
}

PureSchmidtState PureSchmidtState::maximally_entangled(std::size_t d) {
    require_dimension(d, "maximally_entangled");
    return PureSchmidtState(std::vector<double>(d, 1.0 / std::sqrt(static_cast<double>(d))));
}

PureSchmidtState PureSchmidtState::product(std::size_t d) {
    require_dimension(d, "product");
    std::vector<double> u(d, 0.0);
    u[0] = 1.0;
    return PureSchmidtState(std::move(u));
}

ComplexVector PureSchmidtState::vector() const {
    const auto d = static_cast<Eigen::Index>(u_.size());
    ComplexVector psi = ComplexVector::Zero(d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        psi(i * d + i) = u_[static_cast<std::size_t>(i)];
    }
    return psi;
}

PseudoPureParams::PseudoPureParams(double alpha, PureSchmidtState psi)
    : alpha_(alpha), beta_(0.0), psi_(std::move(psi)) {
    require_unit_interval(alpha, "alpha");
    const double d = static_cast<double>(psi_.d());
    beta_ = (1.0 - alpha) / (d * d - 1.0);
}

PseudoPureParams::PseudoPureParams(std::size_t d, double alpha, std::vector<double> schmidt)
    : PseudoPureParams(alpha, PureSchmidtState(std::move(schmidt))) {
    if (psi_.d() != d) {
        throw ParameterError("Schmidt vector has length " + std::to_string(psi_.d()) + ", expected d = " +
                             std::to_string(d));
    }
}

PseudoPureParams PseudoPureParams::isotropic(std::size_t d, double alpha) {
    return PseudoPureParams(alpha, PureSchmidtState::maximally_entangled(d));
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, BipartiteDims dims)
    : matrix_(std::move(matrix)), dims_(dims) {
    if (matrix_.rows() != matrix_.cols() || static_cast<std::size_t>(matrix_.rows()) != dims_.total()) {
        throw StructuralError("DensityMatrix: matrix side " + std::to_string(matrix_.rows()) +
                              " does not match dims " + std::to_string(dims_.dimA()) + "x" +
                              std::to_string(dims_.dimB()));
    }
    if (linalg::hermiticity_residual(matrix_) > kHermitianTol) {
        throw NotAStateError("DensityMatrix: not Hermitian within 1e-12");
    }
    const double tr = matrix_.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol) {
        throw NotAStateError("DensityMatrix: trace " + std::to_string(tr) + " is not 1");
    }
    const RealVector ev = linalg::hermitian_eigenvalues(matrix_);
    if (ev(0) < kMinEigenvalue) {
        throw NotAStateError("DensityMatrix: minimum eigenvalue " + std::to_string(ev(0)) + " is negative");
    }
}

ComplexMatrix DensityMatrix::reduced(Side kept) const {
    return linalg::partial_trace(matrix_, dims_, kept == Side::A ? Side::B : Side::A);
}

namespace states {

ComplexMatrix flip_operator(std::size_t d) {
    require_dimension(d, "flip_operator");
    const auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix f = ComplexMatrix::Zero(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            f(j * n + i, i * n + j) = 1.0;
        }
    }
    return f;
}

std::pair<ComplexMatrix, ComplexMatrix> symmetric_antisymmetric_projectors(std::size_t d) {
    const ComplexMatrix f = flip_operator(d);
    const ComplexMatrix id = ComplexMatrix::Identity(f.rows(), f.cols());
    return {(id + f) / 2.0, (id - f) / 2.0};
}

DensityMatrix build_werner(const WernerParams& p) {
    const double d = static_cast<double>(p.d());
    const double sym_weight = 2.0 * (1.0 - p.lambda()) / (d * (d + 1.0));
    const double anti_weight = 2.0 * p.lambda() / (d * (d - 1.0));
    const auto [sym, anti] = symmetric_antisymmetric_projectors(p.d());
    return DensityMatrix(sym_weight * sym + anti_weight * anti, BipartiteDims::square(p.d()));
}

DensityMatrix build_pseudo_pure(const PseudoPureParams& p) {
    const ComplexVector psi = p.psi().vector();
    const ComplexMatrix proj = psi * psi.adjoint();
    const ComplexMatrix id = ComplexMatrix::Identity(proj.rows(), proj.cols());
    return DensityMatrix(p.alpha() * proj + p.beta() * (id - proj), BipartiteDims::square(p.d()));
}

DensityMatrix build_isotropic(std::size_t d, double alpha) {
    return build_pseudo_pure(PseudoPureParams::isotropic(d, alpha));
}

DensityMatrix product_state(const ComplexMatrix& sigma, const ComplexMatrix& tau) {
    return DensityMatrix(linalg::kron(sigma, tau),
                         BipartiteDims(static_cast<std::size_t>(sigma.rows()),
                                       static_cast<std::size_t>(tau.rows())));
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

PureSchmidtState random_schmidt_vector(std::size_t d, std::uint64_t seed) {
    require_dimension(d, "random_schmidt_vector");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<double> u(d);
    for (double& x : u) {
        const double re = normal(rng);
        const double im = normal(rng);
        x = std::hypot(re, im);
    }
    return PureSchmidtState::normalized(std::move(u));
}

ComplexMatrix random_unitary(std::size_t d, std::mt19937_64& rng) {
    require_dimension(d, "random_unitary");
    const auto n = static_cast<Eigen::Index>(d);
    std::normal_distribution<double> normal;
    ComplexMatrix g(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < n; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) {
            q.col(j) *= r(j, j) / mag;
        }
    }
    return q;
}

ComplexMatrix random_unitary(std::size_t d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_unitary(d, rng);
}

DensityMatrix random_density_matrix(const BipartiteDims& dims, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const auto n = static_cast<Eigen::Index>(dims.total());
    ComplexMatrix g(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    ComplexMatrix rho = g * g.adjoint();
    rho = (rho + rho.adjoint()) / 2.0;
    rho /= rho.trace().real();
    return DensityMatrix(std::move(rho), dims);
}

} // namespace states
} // namespace qcorr
