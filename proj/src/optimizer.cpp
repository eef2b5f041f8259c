#include "qcorr/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qcorr/errors.hpp"

namespace qcorr::optim {

namespace {

double max_distance_from(const std::vector<std::vector<double>>& simplex, std::size_t best) {
    double size = 0.0;
    for (std::size_t i = 0; i < simplex.size(); ++i) {
        if (i == best) {
            continue;
        }
        for (std::size_t j = 0; j < simplex[i].size(); ++j) {
            size = std::max(size, std::abs(simplex[i][j] - simplex[best][j]));
        }
    }
    return size;
}

} // namespace

SimplexResult nelder_mead(const Objective& f, std::vector<double> x0, const SimplexOptions& opts) {
    const std::size_t n = x0.size();
    if (n == 0) {
        SimplexResult r;
        r.value = f(std::span<const double>(x0));
        r.x = std::move(x0);
        r.converged = true;
        return r;
    }

    // Gao & Han adaptive coefficients; reduce to the classic (1, 2, 0.5, 0.5) at n = 2.
    const double dn = static_cast<double>(n);
    const double reflect = 1.0;
    const double expand = 1.0 + 2.0 / dn;
    const double contract = 0.75 - 1.0 / (2.0 * dn);
    const double shrink = 1.0 - 1.0 / dn;

    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) {
        simplex[i + 1][i] += opts.initial_step;
    }
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        values[i] = f(simplex[i]);
    }

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);

    SimplexResult result;
    std::size_t iter = 0;
    for (; iter < opts.max_iterations; ++iter) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[n - 1];

        const double spread = values[worst] - values[best];
        const double size = max_distance_from(simplex, best);
        if (spread <= opts.value_tolerance || size <= opts.size_tolerance) {
            result.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                centroid[j] += simplex[i][j];
            }
        }
        for (double& c : centroid) {
            c /= dn;
        }

        for (std::size_t j = 0; j < n; ++j) {
            trial[j] = centroid[j] + reflect * (centroid[j] - simplex[worst][j]);
        }
        const double f_reflect = f(trial);

        if (f_reflect < values[best]) {
            for (std::size_t j = 0; j < n; ++j) {
                trial2[j] = centroid[j] + expand * (trial[j] - centroid[j]);
            }
            const double f_expand = f(trial2);
            if (f_expand < f_reflect) {
                simplex[worst] = trial2;
                values[worst] = f_expand;
            } else {
                simplex[worst] = trial;
                values[worst] = f_reflect;
            }
            continue;
        }
        if (f_reflect < values[second_worst]) {
            simplex[worst] = trial;
            values[worst] = f_reflect;
            continue;
        }

        const bool outside = f_reflect < values[worst];
        for (std::size_t j = 0; j < n; ++j) {
            trial2[j] = outside ? centroid[j] + contract * (trial[j] - centroid[j])
                                : centroid[j] - contract * (centroid[j] - simplex[worst][j]);
        }
        const double f_contract = f(trial2);
        if (f_contract < (outside ? f_reflect : values[worst])) {
            simplex[worst] = trial2;
            values[worst] = f_contract;
            continue;
        }

        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                simplex[i][j] = simplex[best][j] + shrink * (simplex[i][j] - simplex[best][j]);
            }
            values[i] = f(simplex[i]);
        }
    }

    const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    result.x = simplex[best];
    result.value = values[best];
    result.iterations = iter;
    result.final_size = max_distance_from(simplex, best);
    return result;
}

ComplexMatrix givens_product(std::size_t d, std::span<const double> params) {
    if (params.size() != rotation_parameter_count(d)) {
        throw StructuralError("givens_product: expected " + std::to_string(rotation_parameter_count(d)) +
                              " parameters, got " + std::to_string(params.size()));
    }
    const auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix u = ComplexMatrix::Identity(n, n);
    std::size_t m = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = j + 1; k < n; ++k, m += 2) {
            const Complex z(params[m], params[m + 1]);
            const double r = std::abs(z);
            if (r == 0.0) {
                continue;
            }
            const double c = std::cos(r);
            const Complex zs = z * (std::sin(r) / r);
            const ComplexVector col_j = u.col(j);
            const ComplexVector col_k = u.col(k);
            u.col(j) = c * col_j + zs * col_k;
            u.col(k) = -std::conj(zs) * col_j + c * col_k;
        }
    }
    return u;
}

} // namespace qcorr::optim
