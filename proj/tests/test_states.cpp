#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qcorr/errors.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

ComplexMatrix identity(std::size_t n) {
    return ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

double antisym_weight(const DensityMatrix& rho, std::size_t d) {
    const auto [plus, minus] = states::symmetric_antisymmetric_projectors(d);
    return (rho.matrix() * minus).trace().real();
}

} // namespace

TEST_CASE("symmetric and antisymmetric projectors") {
    for (std::size_t d = 2; d <= 5; ++d) {
        const auto [plus, minus] = states::symmetric_antisymmetric_projectors(d);
        const double n = static_cast<double>(d);
        CHECK(plus.trace().real() == doctest::Approx(n * (n + 1) / 2));
        CHECK(minus.trace().real() == doctest::Approx(n * (n - 1) / 2));
        CHECK(max_abs(plus + minus - identity(d * d)) <= 1e-15);
        CHECK(max_abs(plus * minus) <= 1e-14);
        CHECK(max_abs(plus * plus - plus) <= 1e-14);
        CHECK(max_abs(minus * minus - minus) <= 1e-14);
    }

    SUBCASE("flip swaps product vectors") {
        const std::size_t d = 3;
        const ComplexMatrix f = states::flip_operator(d);
        std::mt19937_64 rng(5);
        std::normal_distribution<double> normal;
        ComplexVector x(3), y(3);
        for (int i = 0; i < 3; ++i) {
            x(i) = Complex(normal(rng), normal(rng));
            y(i) = Complex(normal(rng), normal(rng));
        }
        const ComplexVector xy = linalg::kron(x, y);
        const ComplexVector yx = linalg::kron(y, x);
        CHECK((f * xy - yx).cwiseAbs().maxCoeff() <= 1e-14);
    }

    SUBCASE("independent of the local basis") {
        // Pi^- built from an arbitrary basis via U (x) U equals the computational one.
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const std::size_t d = 3;
            const ComplexMatrix u = states::random_unitary(d, seed);
            const ComplexMatrix uu = linalg::kron(u, u);
            const auto [plus, minus] = states::symmetric_antisymmetric_projectors(d);
            CHECK(max_abs(uu * minus * uu.adjoint() - minus) <= 1e-13);
            CHECK(max_abs(uu * plus * uu.adjoint() - plus) <= 1e-13);
        }
    }

    CHECK_THROWS_AS(states::symmetric_antisymmetric_projectors(1), ParameterError);
}

TEST_CASE("WernerParams validation") {
    CHECK_THROWS_AS(WernerParams(2, -0.1), ParameterError);
    CHECK_THROWS_AS(WernerParams(2, 1.1), ParameterError);
    CHECK_THROWS_AS(WernerParams(1, 0.5), ParameterError);
    CHECK(WernerParams(3, 0.5).separable());
    CHECK_FALSE(WernerParams(3, 0.500001).separable());
}

TEST_CASE("build_werner") {
    SUBCASE("antisymmetric weight equals lambda") {
        for (std::size_t d : {2u, 3u, 4u}) {
            for (int i = 0; i <= 10; ++i) {
                const double lambda = 0.1 * i;
                const auto rho = states::build_werner(WernerParams(d, lambda));
                CHECK(std::abs(antisym_weight(rho, d) - lambda) <= 1e-12);
            }
        }
        const auto rho = states::build_werner(WernerParams(3, 0.3));
        CHECK(std::abs(antisym_weight(rho, 3) - 0.3) <= 1e-12);
    }

    SUBCASE("maximally mixed point") {
        for (std::size_t d = 2; d <= 6; ++d) {
            const double n = static_cast<double>(d);
            const auto rho = states::build_werner(WernerParams(d, (n - 1) / (2 * n)));
            CHECK(max_abs(rho.matrix() - identity(d * d) / (n * n)) <= 1e-12);
        }
    }

    SUBCASE("singlet") {
        ComplexVector s = ComplexVector::Zero(4);
        s(1) = 1.0 / std::sqrt(2.0);
        s(2) = -1.0 / std::sqrt(2.0);
        const auto rho = states::build_werner(WernerParams(2, 1.0));
        CHECK(max_abs(rho.matrix() - s * s.adjoint()) <= 1e-15);
    }

    SUBCASE("U (x) U invariance") {
        const std::vector<std::pair<std::size_t, double>> cases = {
            {2, 0.0}, {2, 0.3}, {2, 1.0}, {3, 0.1}, {3, 0.7}, {4, 0.25}, {4, 0.9}, {5, 0.5}, {5, 0.05}, {6, 0.8}};
        for (const auto& [d, lambda] : cases) {
            const auto rho = states::build_werner(WernerParams(d, lambda));
            for (std::uint64_t seed = 0; seed < 50; ++seed) {
                const ComplexMatrix u = states::random_unitary(d, 1000 + seed);
                const ComplexMatrix uu = linalg::kron(u, u);
                REQUIRE(max_abs(uu * rho.matrix() * uu.adjoint() - rho.matrix()) <= 1e-10);
            }
        }
    }
}

TEST_CASE("PureSchmidtState validation and helpers") {
    CHECK_THROWS_AS(PureSchmidtState({0.6, 0.8}), ParameterError);    // ascending
    CHECK_THROWS_AS(PureSchmidtState({0.9, 0.3}), ParameterError);    // unnormalized
    CHECK_THROWS_AS(PureSchmidtState({1.0, -0.0001}), ParameterError);  // negative
    CHECK_THROWS_AS(PureSchmidtState({1.0}), ParameterError);

    const auto n = PureSchmidtState::normalized({-3.0, 4.0});
    CHECK(n[0] == doctest::Approx(0.8));
    CHECK(n[1] == doctest::Approx(0.6));

    const auto me = PureSchmidtState::maximally_entangled(4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(me[i] == doctest::Approx(0.5));
    }
    const auto prod = PureSchmidtState::product(3);
    CHECK(prod[0] == 1.0);
    CHECK(prod[2] == 0.0);

    const ComplexVector v = PureSchmidtState({0.8, 0.6}).vector();
    CHECK(v(0).real() == doctest::Approx(0.8));
    CHECK(v(3).real() == doctest::Approx(0.6));
    CHECK(std::abs(v(1)) == 0.0);
}

TEST_CASE("PseudoPureParams") {
    const PseudoPureParams p(3, 0.4, {0.8, 0.6, 0.0});
    CHECK(p.beta() == doctest::Approx(0.6 / 8.0));
    CHECK_THROWS_AS(PseudoPureParams(3, 0.4, {0.8, 0.6}), ParameterError);
    CHECK_THROWS_AS(PseudoPureParams(2, 1.2, {0.8, 0.6}), ParameterError);
    CHECK_THROWS_AS(PseudoPureParams(2, -0.2, {0.8, 0.6}), ParameterError);
}

TEST_CASE("build_pseudo_pure") {
    SUBCASE("spectrum is alpha once, beta otherwise") {
        for (std::size_t d = 2; d <= 5; ++d) {
            for (double alpha : {0.0, 0.01, 1.0 / static_cast<double>(d * d), 0.3, 0.77, 1.0}) {
                const PseudoPureParams p(alpha, states::random_schmidt_vector(d, d * 31));
                const RealVector ev = linalg::hermitian_eigenvalues(states::build_pseudo_pure(p).matrix());
                std::vector<double> expected(d * d - 1, p.beta());
                expected.push_back(alpha);
                std::sort(expected.begin(), expected.end());
                for (std::size_t i = 0; i < d * d; ++i) {
                    CHECK(std::abs(ev(static_cast<Eigen::Index>(i)) - expected[i]) <= 1e-10);
                }
            }
        }
    }

    SUBCASE("alpha = 1 is the pure projector") {
        const PureSchmidtState psi({0.8, 0.6, 0.0});
        const ComplexVector v = psi.vector();
        CHECK(max_abs(states::build_pseudo_pure(PseudoPureParams(1.0, psi)).matrix() - v * v.adjoint()) <= 1e-15);
    }

    SUBCASE("alpha = 1/d^2 is maximally mixed") {
        const auto rho = states::build_pseudo_pure(PseudoPureParams(1.0 / 9.0, states::random_schmidt_vector(3, 1)));
        CHECK(max_abs(rho.matrix() - identity(9) / 9.0) <= 1e-12);
    }

    SUBCASE("isotropic equals uniform pseudo-pure") {
        for (std::size_t d = 2; d <= 4; ++d) {
            for (double alpha : {0.0, 0.3, 1.0}) {
                const auto iso = states::build_isotropic(d, alpha);
                const auto pp = states::build_pseudo_pure(PseudoPureParams(alpha, PureSchmidtState::maximally_entangled(d)));
                CHECK(max_abs(iso.matrix() - pp.matrix()) <= 1e-14);
            }
        }
    }
}

TEST_CASE("DensityMatrix validation") {
    const BipartiteDims dims(2, 2);
    CHECK_THROWS_AS(DensityMatrix(identity(4) / 2.0, dims), NotAStateError);
    ComplexMatrix neg = identity(4) / 4.0;
    neg(0, 0) = -0.25;
    neg(1, 1) = 0.75;
    CHECK_THROWS_AS(DensityMatrix(neg, dims), NotAStateError);
    ComplexMatrix nonherm = identity(4) / 4.0;
    nonherm(0, 1) = Complex(0.0, 0.1);
    CHECK_THROWS_AS(DensityMatrix(nonherm, dims), NotAStateError);
    CHECK_THROWS_AS(DensityMatrix(identity(6) / 6.0, dims), StructuralError);

    const DensityMatrix ok(identity(6) / 6.0, BipartiteDims(2, 3));
    CHECK(max_abs(ok.reduced(Side::A) - identity(2) / 2.0) <= 1e-15);
    CHECK(max_abs(ok.reduced(Side::B) - identity(3) / 3.0) <= 1e-15);
}

TEST_CASE("random generators") {
    SUBCASE("Schmidt vectors") {
        const auto a = states::random_schmidt_vector(4, 7);
        const auto b = states::random_schmidt_vector(4, 7);
        CHECK(a.amplitudes() == b.amplitudes());
        double norm = 0.0;
        for (double u : a.amplitudes()) {
            norm += u * u;
        }
        CHECK(std::abs(norm - 1.0) <= 1e-12);
        CHECK(std::is_sorted(a.amplitudes().rbegin(), a.amplitudes().rend()));
        CHECK(states::random_schmidt_vector(4, 8).amplitudes() != a.amplitudes());
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            CHECK(states::random_schmidt_vector(2, seed)[0] >= 1.0 / std::sqrt(2.0));
        }
    }

    SUBCASE("unitaries") {
        for (std::size_t d = 2; d <= 8; ++d) {
            const ComplexMatrix u = states::random_unitary(d, 11 * d);
            CHECK(max_abs(u.adjoint() * u - identity(d)) <= 1e-12);
            CHECK(max_abs(u - states::random_unitary(d, 11 * d)) == 0.0);
        }
    }

    SUBCASE("density matrices and seeds") {
        const auto r1 = states::random_density_matrix(BipartiteDims(3, 2), 9);
        const auto r2 = states::random_density_matrix(BipartiteDims(3, 2), 9);
        CHECK(max_abs(r1.matrix() - r2.matrix()) == 0.0);
        CHECK(states::derive_seed(1, 2) == states::derive_seed(1, 2));
        CHECK(states::derive_seed(1, 2) != states::derive_seed(1, 3));
        CHECK(states::derive_seed(1, 2) != states::derive_seed(2, 2));
    }
}
