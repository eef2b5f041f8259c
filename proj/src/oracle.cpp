#include "qcorr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "qcorr/closed_forms.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/optimizer.hpp"

namespace qcorr::oracle {

namespace {

// Unnormalized post-measurement blocks tau_k(a, a') = <k| rho_{a a'} |k> with |k> = U e_k.
std::vector<ComplexMatrix> measured_blocks(const DensityMatrix& rho, const ComplexMatrix& u) {
    const auto dA = static_cast<Eigen::Index>(rho.dims().dimA());
    const auto dB = static_cast<Eigen::Index>(rho.dims().dimB());
    std::vector<ComplexMatrix> tau(static_cast<std::size_t>(dB), ComplexMatrix::Zero(dA, dA));
    const ComplexMatrix& m = rho.matrix();
    ComplexMatrix bu(dB, dB);
    for (Eigen::Index a = 0; a < dA; ++a) {
        for (Eigen::Index ap = a; ap < dA; ++ap) {
            bu.noalias() = m.block(a * dB, ap * dB, dB, dB) * u;
            for (Eigen::Index k = 0; k < dB; ++k) {
                const Complex v = u.col(k).dot(bu.col(k));
                auto& t = tau[static_cast<std::size_t>(k)];
                t(a, ap) = v;
                t(ap, a) = std::conj(v);
            }
        }
    }
    for (auto& t : tau) {
        t.diagonal() = t.diagonal().real().cast<Complex>();
    }
    return tau;
}

double entropy_of_block(const ComplexMatrix& tau, double p) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(tau / p, Eigen::EigenvaluesOnly);
    const RealVector ev = solver.eigenvalues();
    return linalg::spectrum_entropy(std::span<const double>(ev.data(), static_cast<std::size_t>(ev.size())));
}

double conditional_entropy_for(const DensityMatrix& rho, const ComplexMatrix& u) {
    double s = 0.0;
    for (const auto& tau : measured_blocks(rho, u)) {
        const double p = tau.trace().real();
        if (p <= ConditionalEnsemble::kNullProbability) {
            continue;
        }
        s += p * entropy_of_block(tau, p);
    }
    return s;
}

double gd_objective_for(const DensityMatrix& rho, double rho_purity, const ComplexMatrix& u) {
    double sum = 0.0;
    for (const auto& tau : measured_blocks(rho, u)) {
        sum += tau.squaredNorm();
    }
    return rho_purity - sum;
}

void require_basis_dimension(const DensityMatrix& rho, const MeasurementBasis& basis) {
    if (basis.d() != rho.dims().dimB()) {
        throw StructuralError("measurement basis dimension " + std::to_string(basis.d()) +
                              " does not match dimB = " + std::to_string(rho.dims().dimB()));
    }
}

double max_off_diagonal(const ComplexMatrix& m) {
    double r = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i != j) {
                r = std::max(r, std::abs(m(i, j)));
            }
        }
    }
    return r;
}

} // namespace

MeasurementBasis::MeasurementBasis(ComplexMatrix columns) : columns_(std::move(columns)) {
    if (columns_.rows() != columns_.cols() || columns_.rows() < 2) {
        throw StructuralError("MeasurementBasis: need d >= 2 orthonormal columns of length d, got " +
                              std::to_string(columns_.rows()) + "x" + std::to_string(columns_.cols()));
    }
    const ComplexMatrix gram = columns_.adjoint() * columns_;
    const double residual =
        (gram - ComplexMatrix::Identity(columns_.cols(), columns_.cols())).cwiseAbs().maxCoeff();
    if (residual > kGramTol) {
        throw StructuralError("MeasurementBasis: columns are not orthonormal (Gram residual " +
                              std::to_string(residual) + ")");
    }
}

MeasurementBasis MeasurementBasis::computational(std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    return MeasurementBasis(ComplexMatrix::Identity(n, n));
}

void OptimizerConfig::validate() const {
    if (restarts < 1) {
        throw ParameterError("optimizer restarts must be >= 1");
    }
    if (max_iterations < 1) {
        throw ParameterError("optimizer max_iterations must be >= 1");
    }
    if (!(objective_tolerance > 0.0) || !(step_tolerance > 0.0)) {
        throw ParameterError("optimizer tolerances must be positive");
    }
}

ConditionalEnsemble conditional_ensemble(const DensityMatrix& rho, const MeasurementBasis& basis) {
    require_basis_dimension(rho, basis);
    const auto dA = static_cast<Eigen::Index>(rho.dims().dimA());
    ConditionalEnsemble out;
    for (auto& tau : measured_blocks(rho, basis.columns())) {
        const double p = tau.trace().real();
        out.probabilities.push_back(p);
        if (p <= ConditionalEnsemble::kNullProbability) {
            out.conditional_states.push_back(ComplexMatrix::Identity(dA, dA) / static_cast<double>(dA));
        } else {
            out.conditional_states.push_back(tau / p);
        }
    }
    return out;
}

double measured_conditional_entropy(const DensityMatrix& rho, const MeasurementBasis& basis) {
    require_basis_dimension(rho, basis);
    return conditional_entropy_for(rho, basis.columns());
}

double gd_objective(const DensityMatrix& rho, const MeasurementBasis& basis) {
    require_basis_dimension(rho, basis);
    return gd_objective_for(rho, linalg::purity(rho.matrix()), basis.columns());
}

OptimizerResult minimize_over_bases(std::size_t d, const std::function<double(const ComplexMatrix&)>& objective,
                                    const OptimizerConfig& cfg) {
    cfg.validate();
    if (d < 2) {
        throw StructuralError("minimize_over_bases: dimension must be >= 2");
    }
    if (d > kMaxOptimizedDim) {
        throw CapabilityError("basis optimization supports dimB <= " + std::to_string(kMaxOptimizedDim) +
                              ", got " + std::to_string(d));
    }

    const std::size_t n = optim::rotation_parameter_count(d);
    OptimizerResult result;
    result.value = std::numeric_limits<double>::infinity();
    ComplexMatrix best_overall;

    for (std::size_t r = 0; r < cfg.restarts; ++r) {
        std::mt19937_64 rng(states::derive_seed(cfg.seed, r));
        ComplexMatrix anchor = states::random_unitary(d, rng);

        // Every evaluation passes through here, so the restart value is the
        // smallest objective value ever computed in this restart.
        double restart_best = objective(anchor);
        ComplexMatrix restart_argmin = anchor;
        auto tracked = [&](const ComplexMatrix& u) {
            const double v = objective(u);
            if (v < restart_best) {
                restart_best = v;
                restart_argmin = u;
            }
            return v;
        };

        std::size_t budget = cfg.max_iterations;
        double step = 0.5;
        bool restart_converged = false;
        while (budget > 0) {
            const double before = restart_best;
            optim::SimplexOptions opts;
            opts.max_iterations = budget;
            opts.value_tolerance = cfg.objective_tolerance;
            opts.size_tolerance = cfg.step_tolerance;
            opts.initial_step = step;
            const auto res = optim::nelder_mead(
                [&](std::span<const double> x) { return tracked(anchor * optim::givens_product(d, x)); },
                std::vector<double>(n, 0.0), opts);
            budget -= std::min(budget, std::max<std::size_t>(res.iterations, 1));
            anchor = restart_argmin;
            if (!res.converged) {
                break;
            }
            if (before - restart_best <= cfg.objective_tolerance) {
                restart_converged = true;
                break;
            }
            step = 0.1;
        }

        result.per_restart_values.push_back(restart_best);
        result.converged = result.converged || restart_converged;
        if (restart_best < result.value) {
            result.value = restart_best;
            best_overall = restart_argmin;
        }
    }

    // Re-orthonormalize to absorb rounding accumulated by repeated anchoring.
    Eigen::HouseholderQR<ComplexMatrix> qr(best_overall);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix& rr = qr.matrixQR();
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        const double mag = std::abs(rr(j, j));
        if (mag > 0.0) {
            q.col(j) *= rr(j, j) / mag;
        }
    }
    result.argmin_basis = MeasurementBasis(std::move(q));
    return result;
}

OptimizerResult minimize_conditional_entropy(const DensityMatrix& rho, const OptimizerConfig& cfg) {
    return minimize_over_bases(
        rho.dims().dimB(), [&](const ComplexMatrix& u) { return conditional_entropy_for(rho, u); }, cfg);
}

OptimizerResult minimize_gd_objective(const DensityMatrix& rho, const OptimizerConfig& cfg) {
    const double p = linalg::purity(rho.matrix());
    return minimize_over_bases(
        rho.dims().dimB(), [&](const ComplexMatrix& u) { return gd_objective_for(rho, p, u); }, cfg);
}

double mutual_information_numeric(const DensityMatrix& rho) {
    return linalg::von_neumann_entropy(rho.reduced(Side::A)) + linalg::von_neumann_entropy(rho.reduced(Side::B)) -
           linalg::von_neumann_entropy(rho.matrix());
}

double discord_numeric(const DensityMatrix& rho, const OptimizerConfig& cfg) {
    const double sb = linalg::von_neumann_entropy(rho.reduced(Side::B));
    const double sab = linalg::von_neumann_entropy(rho.matrix());
    return sb - sab + minimize_conditional_entropy(rho, cfg).value;
}

double classical_correlations_numeric(const DensityMatrix& rho, const OptimizerConfig& cfg) {
    return mutual_information_numeric(rho) - discord_numeric(rho, cfg);
}

double gd_numeric(const DensityMatrix& rho, const OptimizerConfig& cfg) {
    const double d = static_cast<double>(rho.dims().dimB());
    return d / (d - 1.0) * minimize_gd_objective(rho, cfg).value;
}

double negativity_numeric(const DensityMatrix& rho) {
    if (rho.dims().dimA() != rho.dims().dimB()) {
        throw StructuralError("negativity_numeric requires dimA == dimB");
    }
    const double d = static_cast<double>(rho.dims().dimA());
    const RealVector ev = linalg::hermitian_eigenvalues(linalg::partial_transpose(rho.matrix(), rho.dims(), Side::B));
    double negative = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < -1e-12) {
            negative += ev(i);
        }
    }
    return 2.0 / (d - 1.0) * std::abs(negative);
}

EigenbasisOptimalityReport eigenbasis_optimality_check(const DensityMatrix& rho, const OptimizerConfig& cfg) {
    constexpr double kDegenerateGap = 1e-8;

    EigenbasisOptimalityReport report;
    const ComplexMatrix rho_b = rho.reduced(Side::B);
    const EigenDecomposition eig = linalg::hermitian_eigensystem(rho_b);
    const OptimizerResult opt = minimize_conditional_entropy(rho, cfg);
    report.optimizer_minimum = opt.value;

    for (Eigen::Index i = 1; i < eig.eigenvalues.size(); ++i) {
        if (eig.eigenvalues(i) - eig.eigenvalues(i - 1) < kDegenerateGap) {
            report.degenerate_marginal = true;
        }
    }

    const ComplexMatrix basis = report.degenerate_marginal ? opt.argmin_basis.columns() : eig.eigenvectors;
    const MeasurementBasis checked(basis);
    report.eigenbasis_entropy = measured_conditional_entropy(rho, checked);
    report.entropy_gap = report.eigenbasis_entropy - report.optimizer_minimum;
    report.diagonalization_residual = max_off_diagonal(basis.adjoint() * rho_b * basis);

    const ConditionalEnsemble ens = conditional_ensemble(rho, checked);
    for (std::size_t j = 0; j < ens.probabilities.size(); ++j) {
        if (ens.probabilities[j] <= ConditionalEnsemble::kNullProbability) {
            continue;
        }
        for (std::size_t k = j + 1; k < ens.probabilities.size(); ++k) {
            if (ens.probabilities[k] <= ConditionalEnsemble::kNullProbability) {
                continue;
            }
            report.max_commutator = std::max(
                report.max_commutator, linalg::commutator_norm(ens.conditional_states[j], ens.conditional_states[k]));
        }
    }

    report.pass = report.entropy_gap <= kEigenbasisEntropyTol &&
                  report.diagonalization_residual <= kEigenbasisCommutatorTol &&
                  report.max_commutator <= kEigenbasisCommutatorTol;
    return report;
}

ConjectureReport conjecture_sweep(const ConjectureSpec& spec) {
    if (spec.samples < 1) {
        throw ParameterError("conjecture sweep needs at least one sample");
    }
    if (spec.dmin < 2 || spec.dmin > spec.dmax) {
        throw ParameterError("conjecture sweep needs 2 <= dmin <= dmax, got [" + std::to_string(spec.dmin) + ", " +
                             std::to_string(spec.dmax) + "]");
    }
    if (spec.numeric_stride < 1) {
        throw ParameterError("numeric stride must be >= 1");
    }
    std::optional<PureSchmidtState> forced;
    if (spec.schmidt) {
        forced.emplace(*spec.schmidt);
    }

    std::mt19937_64 rng(spec.seed);
    std::uniform_int_distribution<std::size_t> pick_d(spec.dmin, spec.dmax);
    std::uniform_real_distribution<double> pick_alpha(0.0, 1.0);

    ConjectureReport report;
    report.min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < spec.samples; ++i) {
        const std::size_t d = pick_d(rng);
        const double alpha = pick_alpha(rng);
        const PseudoPureParams params(alpha, forced ? *forced : states::random_schmidt_vector(
                                                                    d, states::derive_seed(spec.seed, i)));

        const double neg = closed::pp_negativity(params);
        const double gd = closed::pp_gd(params);
        const double gap = gd - neg * neg;
        if (gap < report.min_gap) {
            report.min_gap = gap;
            report.worst_case_params = params;
        }
        if (gap < ConjectureReport::kViolationTol) {
            ++report.violations;
        }

        if (i % spec.numeric_stride == 0 && params.d() <= kMaxOptimizedDim) {
            const DensityMatrix rho = states::build_pseudo_pure(params);
            OptimizerConfig cfg = spec.numeric_config;
            cfg.seed = states::derive_seed(spec.numeric_config.seed, i);
            report.max_gd_deviation = std::max(report.max_gd_deviation, std::abs(gd_numeric(rho, cfg) - gd));
            report.max_negativity_deviation =
                std::max(report.max_negativity_deviation, std::abs(negativity_numeric(rho) - neg));
            ++report.numeric_checked;
        }
        ++report.samples;
    }
    return report;
}

} // namespace qcorr::oracle
