#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qcorr/linalg.hpp"

namespace qcorr::optim {

using Objective = std::function<double(std::span<const double>)>;

struct SimplexOptions {
    std::size_t max_iterations = 2000;
    double value_tolerance = 1e-9;  // stop when f_max - f_min falls below this
    double size_tolerance = 1e-10;  // or when every vertex is this close to the best one
    double initial_step = 0.5;
};

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t iterations = 0;
    double final_size = 0.0;
    bool converged = false;  // stopped on a tolerance rather than the iteration budget
};

// Nelder-Mead downhill simplex with dimension-adaptive coefficients.
SimplexResult nelder_mead(const Objective& f, std::vector<double> x0, const SimplexOptions& opts);

// Number of real coordinates in the rotation chart for a d-dimensional basis.
inline std::size_t rotation_parameter_count(std::size_t d) { return d * (d - 1); }

// Ordered product over pairs (j<k) of complex Givens rotations exp(z E_kj - conj(z) E_jk),
// with z = params[2m] + i params[2m+1]. The zero vector maps to the identity, and the
// chart spans every off-diagonal generator there, so re-anchoring around the current
// best basis keeps the local search well conditioned.
ComplexMatrix givens_product(std::size_t d, std::span<const double> params);

} // namespace qcorr::optim
