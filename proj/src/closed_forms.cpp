#include "qcorr/closed_forms.hpp"

#include <cmath>
#include <string>

#include "qcorr/errors.hpp"

namespace qcorr::closed {

namespace {

// w * log2(x), with a vanishing weight killing the log term.
double wlog2(double w, double x) {
    if (w == 0.0) {
        return 0.0;
    }
    return w * std::log2(x);
}

void require_unit_interval(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw ParameterError(std::string(name) + " must lie in [0,1], got " + std::to_string(x));
    }
}

// Pairs (i<j) with beta - (alpha - beta) u_i u_j below this are negative eigenvalues of rho^Gamma.
constexpr double kNegativeEigenTie = 1e-14;

} // namespace

double xlog2x(double x) { return wlog2(x, x); }

double binary_entropy(double x) {
    require_unit_interval(x, "binary_entropy argument");
    return -xlog2x(x) - xlog2x(1.0 - x);
}

// ---- Werner ---------------------------------------------------------------

double werner_joint_entropy(const WernerParams& p) {
    const double d = static_cast<double>(p.d());
    const double l = p.lambda();
    return -wlog2(l, 2.0 * l / (d * (d - 1.0))) - wlog2(1.0 - l, 2.0 * (1.0 - l) / (d * (d + 1.0)));
}

double werner_mutual_information(const WernerParams& p) {
    const double d = static_cast<double>(p.d());
    const double l = p.lambda();
    return std::log2(2.0 * d) + wlog2(l, l / (d - 1.0)) + wlog2(1.0 - l, (1.0 - l) / (d + 1.0));
}

double werner_measured_conditional_entropy(const WernerParams& p) {
    const double d = static_cast<double>(p.d());
    const double l = p.lambda();
    const double top = 2.0 * (1.0 - l) / (d + 1.0);
    const double rest = (d - 1.0 + 2.0 * l) / (d + 1.0);
    return -wlog2(top, top) - wlog2(rest, (d - 1.0 + 2.0 * l) / (d * d - 1.0));
}

double werner_discord(const WernerParams& p) {
    const double d = static_cast<double>(p.d());
    const double l = p.lambda();
    const double rest = (d - 1.0 + 2.0 * l) / (d + 1.0);
    return std::log2(d + 1.0) + wlog2(l, l / (d - 1.0)) + wlog2(1.0 - l, (1.0 - l) / (d + 1.0)) -
           wlog2(2.0 * (1.0 - l) / (d + 1.0), 1.0 - l) -
           wlog2(rest, (d - 1.0 + 2.0 * l) / (2.0 * (d - 1.0)));
}

double werner_classical_correlations(const WernerParams& p) {
    return werner_mutual_information(p) - werner_discord(p);
}

double werner_discord_asymptote(double lambda) { return 1.0 - binary_entropy(lambda); }

double werner_eof(double lambda) {
    require_unit_interval(lambda, "lambda");
    if (lambda <= 0.5) {
        return 0.0;
    }
    const double s = std::sqrt(lambda * (1.0 - lambda));
    return 1.0 - wlog2(0.5 - s, 1.0 - 2.0 * s) - wlog2(0.5 + s, 1.0 + 2.0 * s);
}

bool werner_separable(double lambda) {
    require_unit_interval(lambda, "lambda");
    return lambda <= 0.5;
}

WernerReport werner_report(const WernerParams& p) {
    WernerReport r{};
    r.d = p.d();
    r.lambda = p.lambda();
    r.joint_entropy = werner_joint_entropy(p);
    r.mutual_information = werner_mutual_information(p);
    r.conditional_entropy_measured = werner_measured_conditional_entropy(p);
    r.discord = werner_discord(p);
    r.classical_correlations = r.mutual_information - r.discord;
    r.eof = werner_eof(p.lambda());
    r.discord_asymptote = werner_discord_asymptote(p.lambda());
    r.separable = p.separable();
    return r;
}

// ---- pseudo-pure ----------------------------------------------------------

double pp_joint_entropy(const PseudoPureParams& p) {
    const double d = static_cast<double>(p.d());
    return -xlog2x(p.alpha()) - (d * d - 1.0) * xlog2x(p.beta());
}

double pp_marginal_entropy(const PseudoPureParams& p) {
    const double d = static_cast<double>(p.d());
    const double gap = p.alpha() - p.beta();
    double s = 0.0;
    for (double u : p.schmidt()) {
        s -= xlog2x(d * p.beta() + u * u * gap);
    }
    return s;
}

double pp_measured_conditional_entropy(const PseudoPureParams& p) {
    const double d = static_cast<double>(p.d());
    const double beta = p.beta();
    const double gap = p.alpha() - beta;
    double s = 0.0;
    for (double u : p.schmidt()) {
        const double top = beta + u * u * gap;
        const double marginal = d * beta + u * u * gap;
        s -= wlog2(top, top / marginal);
        s -= wlog2(beta * (d - 1.0), beta / marginal);
    }
    return s;
}

double pp_discord(const PseudoPureParams& p) {
    const double d = static_cast<double>(p.d());
    const double a = p.alpha();
    double s = xlog2x(a) + wlog2((1.0 - a) / (d + 1.0), (1.0 - a) / (d * d - 1.0));
    for (double u : p.schmidt()) {
        s -= xlog2x(((1.0 - a) - u * u * (1.0 - d * d * a)) / (d * d - 1.0));
    }
    return s;
}

double pp_classical_correlations(const PseudoPureParams& p) {
    return 2.0 * pp_marginal_entropy(p) - pp_joint_entropy(p) - pp_discord(p);
}

double pp_discord_asymptote(double alpha, const PureSchmidtState& psi) {
    require_unit_interval(alpha, "alpha");
    double s = 0.0;
    for (double u : psi.amplitudes()) {
        s -= xlog2x(u * u);
    }
    return alpha * s;
}

double pp_second_derivative(const PseudoPureParams& p) {
    const double a = p.alpha();
    if (!(a > 0.0 && a < 1.0)) {
        throw DomainError("pp_second_derivative is singular at alpha = " + std::to_string(a) +
                          "; requires 0 < alpha < 1");
    }
    const double d = static_cast<double>(p.d());
    const double d2 = d * d;
    double s = 1.0 / a + 1.0 / ((1.0 - a) * (1.0 + d));
    for (double u : p.schmidt()) {
        const double k = d2 * u * u - 1.0;
        s -= k * k / ((d2 - 1.0) * (1.0 - u * u + a * k));
    }
    return s;
}

double pure_gd(const PureSchmidtState& psi) {
    const double d = static_cast<double>(psi.d());
    double fourth = 0.0;
    double second = 0.0;
    for (double u : psi.amplitudes()) {
        second += u * u;
        fourth += u * u * u * u;
    }
    return d / (d - 1.0) * (second * second - fourth);
}

double pure_negativity(const PureSchmidtState& psi) {
    const double d = static_cast<double>(psi.d());
    double first = 0.0;
    double second = 0.0;
    for (double u : psi.amplitudes()) {
        first += u;
        second += u * u;
    }
    // 2 sum_{i<j} u_i u_j = (sum u)^2 - sum u^2
    return (first * first - second) / (d - 1.0);
}

double pp_gd(const PseudoPureParams& p) {
    const double d2 = static_cast<double>(p.d() * p.d());
    const double scale = (p.alpha() * d2 - 1.0) / (d2 - 1.0);
    return scale * scale * pure_gd(p.psi());
}

double pp_negativity(const PseudoPureParams& p) {
    const double d = static_cast<double>(p.d());
    const double a = p.alpha();
    const double beta = p.beta();
    const auto& u = p.schmidt();
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = i + 1; j < u.size(); ++j) {
            const double eig = beta - (a - beta) * u[i] * u[j];
            if (eig < -kNegativeEigenTie) {
                sum += u[i] * u[j] * (a * d * d - 1.0) - (1.0 - a);
            }
        }
    }
    return 2.0 / ((d - 1.0) * (d - 1.0) * (d + 1.0)) * sum;
}

double pp_separability_threshold(const PureSchmidtState& psi) {
    const double d = static_cast<double>(psi.d());
    const double c = psi[0] * psi[1];
    return (1.0 + c) / (1.0 + c * d * d);
}

bool pp_separable(const PseudoPureParams& p) {
    return p.alpha() <= pp_separability_threshold(p.psi()) + 1e-12;
}

PseudoPureReport pp_report(const PseudoPureParams& p) {
    PseudoPureReport r{};
    r.d = p.d();
    r.alpha = p.alpha();
    r.schmidt = p.schmidt();
    r.joint_entropy = pp_joint_entropy(p);
    r.marginal_entropy = pp_marginal_entropy(p);
    r.mutual_information = 2.0 * r.marginal_entropy - r.joint_entropy;
    r.discord = pp_discord(p);
    r.classical_correlations = r.mutual_information - r.discord;
    r.gd = pp_gd(p);
    r.negativity = pp_negativity(p);
    r.discord_asymptote = pp_discord_asymptote(p.alpha(), p.psi());
    r.separable = pp_separable(p);
    return r;
}

} // namespace qcorr::closed
