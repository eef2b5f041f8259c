#pragma once

#include <vector>

#include "qcorr/states.hpp"

// Exact scalar evaluators for the Werner and pseudo-pure families. No matrices
// are built here, so every function is valid for arbitrarily large d. All
// entropic quantities are in bits unless a name says otherwise.
namespace qcorr::closed {

// x log2 x with 0 log 0 = 0.
double xlog2x(double x);

// H(x) = -x log x - (1-x) log(1-x); ParameterError outside [0,1].
double binary_entropy(double x);

inline double nats_to_bits(double nats) { return nats / 0.69314718055994530942; }

// ---- Werner ---------------------------------------------------------------

double werner_joint_entropy(const WernerParams& p);
double werner_mutual_information(const WernerParams& p);

// S(rho^A_k) after Bob projects onto any rank-one element; independent of k and basis.
double werner_measured_conditional_entropy(const WernerParams& p);

double werner_discord(const WernerParams& p);
double werner_classical_correlations(const WernerParams& p);

// Large-d limit 1 - H(lambda).
double werner_discord_asymptote(double lambda);

// Dimension-independent; 0 on the separable region lambda <= 1/2.
double werner_eof(double lambda);

bool werner_separable(double lambda);

struct WernerReport {
    std::size_t d;
    double lambda;
    double joint_entropy;
    double mutual_information;
    double conditional_entropy_measured;
    double discord;
    double classical_correlations;
    double eof;
    double discord_asymptote;
    bool separable;
};

WernerReport werner_report(const WernerParams& p);

// ---- pseudo-pure ----------------------------------------------------------

double pp_joint_entropy(const PseudoPureParams& p);

// S(rho^A) = S(rho^B); eigenvalues d*beta + u_i^2 (alpha - beta).
double pp_marginal_entropy(const PseudoPureParams& p);

// Minimum measured conditional entropy, attained in the Schmidt basis.
double pp_measured_conditional_entropy(const PseudoPureParams& p);

double pp_discord(const PseudoPureParams& p);
double pp_classical_correlations(const PseudoPureParams& p);

// Large-d limit alpha * S(u^2).
double pp_discord_asymptote(double alpha, const PureSchmidtState& psi);

// d^2 D / d alpha^2 in natural-log units, exactly as the convexity proof writes it.
// DomainError for alpha in {0, 1}.
double pp_second_derivative(const PseudoPureParams& p);

// Geometric discord and normalized negativity of the pure state sum_i u_i |ii>.
double pure_gd(const PureSchmidtState& psi);
double pure_negativity(const PureSchmidtState& psi);

double pp_gd(const PseudoPureParams& p);
double pp_negativity(const PseudoPureParams& p);

// (1 + u1 u2) / (1 + u1 u2 d^2).
double pp_separability_threshold(const PureSchmidtState& psi);
bool pp_separable(const PseudoPureParams& p);

struct PseudoPureReport {
    std::size_t d;
    double alpha;
    std::vector<double> schmidt;
    double joint_entropy;
    double marginal_entropy;
    double mutual_information;
    double discord;
    double classical_correlations;
    double gd;
    double negativity;
    double discord_asymptote;
    bool separable;
};

PseudoPureReport pp_report(const PseudoPureParams& p);

} // namespace qcorr::closed
