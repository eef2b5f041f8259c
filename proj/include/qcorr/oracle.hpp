#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qcorr/states.hpp"

// Matrix-based, formula-independent evaluation of every correlation measure.
// Measurements are rank-one projective bases on Bob's side (B); for states
// outside the Werner and pseudo-pure families the minimized quantities are
// therefore upper bounds on the POVM optimum.
namespace qcorr::oracle {

// Orthonormal basis of Bob's space, stored as the columns of a unitary.
class MeasurementBasis {
  public:
    static constexpr double kGramTol = 1e-10;

    explicit MeasurementBasis(ComplexMatrix columns);

    static MeasurementBasis computational(std::size_t d);

    std::size_t d() const { return static_cast<std::size_t>(columns_.cols()); }
    const ComplexMatrix& columns() const { return columns_; }
    ComplexVector vector(std::size_t k) const { return columns_.col(static_cast<Eigen::Index>(k)); }

  private:
    ComplexMatrix columns_;
};

// Outcome probabilities and Alice's conditional states for one basis. Outcomes
// with p_k <= kNullProbability carry I/dA and are skipped by entropy averages.
struct ConditionalEnsemble {
    static constexpr double kNullProbability = 1e-14;

    std::vector<double> probabilities;
    std::vector<ComplexMatrix> conditional_states;

    // tau_k = p_k rho^A_k
    ComplexMatrix block(std::size_t k) const { return probabilities[k] * conditional_states[k]; }
};

struct OptimizerConfig {
    std::size_t restarts = 32;
    std::size_t max_iterations = 2000;
    double objective_tolerance = 1e-9;
    double step_tolerance = 1e-10;
    std::uint64_t seed = 1;

    void validate() const;
};

struct OptimizerResult {
    double value = 0.0;
    MeasurementBasis argmin_basis = MeasurementBasis::computational(2);
    std::vector<double> per_restart_values;
    bool converged = false;
};

// Largest dimB accepted by the basis optimizer.
inline constexpr std::size_t kMaxOptimizedDim = 8;

ConditionalEnsemble conditional_ensemble(const DensityMatrix& rho, const MeasurementBasis& basis);

// sum_k p_k S(rho^A_k), in bits.
double measured_conditional_entropy(const DensityMatrix& rho, const MeasurementBasis& basis);

// tr(rho^2) - sum_k tr(tau_k^2).
double gd_objective(const DensityMatrix& rho, const MeasurementBasis& basis);

// Multi-start local minimization of `objective` over bases of a d-dimensional space.
// Restart r starts from a Haar-random basis seeded by derive_seed(cfg.seed, r).
OptimizerResult minimize_over_bases(std::size_t d, const std::function<double(const ComplexMatrix&)>& objective,
                                    const OptimizerConfig& cfg);

OptimizerResult minimize_conditional_entropy(const DensityMatrix& rho, const OptimizerConfig& cfg);
OptimizerResult minimize_gd_objective(const DensityMatrix& rho, const OptimizerConfig& cfg);

double mutual_information_numeric(const DensityMatrix& rho);

// S(rho^B) - S(rho) + min_basis sum_k p_k S(rho^A_k)
double discord_numeric(const DensityMatrix& rho, const OptimizerConfig& cfg);

// I(rho) - discord_numeric(rho)
double classical_correlations_numeric(const DensityMatrix& rho, const OptimizerConfig& cfg);

// dimB/(dimB - 1) * min_basis gd_objective
double gd_numeric(const DensityMatrix& rho, const OptimizerConfig& cfg);

// 2/(d-1) * |sum of negative eigenvalues of rho^Gamma|; requires dimA == dimB.
double negativity_numeric(const DensityMatrix& rho);

struct EigenbasisOptimalityReport {
    double optimizer_minimum = 0.0;
    double eigenbasis_entropy = 0.0;      // measured conditional entropy in the checked basis
    double entropy_gap = 0.0;             // eigenbasis_entropy - optimizer_minimum
    bool degenerate_marginal = false;     // rho^B has a repeated eigenvalue
    double diagonalization_residual = 0.0;  // max off-diagonal of rho^B in the checked basis
    double max_commutator = 0.0;          // max_{j<k} ||[rho^A_j, rho^A_k]||_F
    bool pass = false;
};

inline constexpr double kEigenbasisEntropyTol = 1e-6;
inline constexpr double kEigenbasisCommutatorTol = 1e-8;

// Checks that projecting onto an eigenbasis of rho^B attains the discord minimum and
// leaves Alice's conditional states commuting. When rho^B is degenerate every
// eigenbasis is a candidate, so the optimizer's argmin is checked instead.
EigenbasisOptimalityReport eigenbasis_optimality_check(const DensityMatrix& rho, const OptimizerConfig& cfg);

struct ConjectureSpec {
    std::size_t samples = 1000;
    std::size_t dmin = 2;
    std::size_t dmax = 6;
    std::uint64_t seed = 42;
    std::optional<std::vector<double>> schmidt;  // forces u (and d) for every sample
    std::size_t numeric_stride = 20;              // every 20th sample is matrix-verified
    OptimizerConfig numeric_config{};
};

struct ConjectureReport {
    static constexpr double kViolationTol = -1e-10;

    std::size_t samples = 0;
    double min_gap = 0.0;  // min over samples of pp_gd - pp_negativity^2
    std::optional<PseudoPureParams> worst_case_params;
    std::size_t violations = 0;

    std::size_t numeric_checked = 0;
    double max_gd_deviation = 0.0;
    double max_negativity_deviation = 0.0;
};

ConjectureReport conjecture_sweep(const ConjectureSpec& spec);

} // namespace qcorr::oracle
