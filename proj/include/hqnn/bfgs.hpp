#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace hqnn {

struct OptimizerSettings {
    std::size_t max_iterations = 500;
    /// Stop once the infinity norm of the gradient drops to this value.
    double gradient_norm_tolerance = 1e-5;
    /// Central-difference step for numerical gradients, in radians.
    double finite_difference_step = 1e-6;

    /// Throws ConfigError unless every field is positive and finite.
    void validate() const;
};

using Objective = std::function<double(std::span<const double>)>;
/// Writes the gradient at x into the output span (same length as x).
using GradientFn = std::function<void(std::span<const double>, std::span<double>)>;

struct MinimizeResult {
    std::vector<double> x;
    double f = 0.0;
    double gradient_inf_norm = 0.0;
    std::size_t iterations = 0;
    std::size_t function_evals = 0;
    std::size_t gradient_evals = 0;
    bool converged = false;
    std::string message;
    /// Objective at x0 followed by every accepted iterate.
    std::vector<double> history;
};

/// Quasi-Newton minimization with an inverse-Hessian BFGS update and a
/// strong-Wolfe line search (c1 = 1e-4, c2 = 0.9, cubic interpolation in the
/// zoom phase).
///
/// Converged means ||grad||_inf <= tolerance. When the line search cannot
/// make progress, the best point so far is returned with converged = false.
/// A non-finite objective or gradient throws NumericalError.
MinimizeResult bfgs_minimize(const Objective& objective, const GradientFn& gradient,
                             std::span<const double> x0, const OptimizerSettings& settings);

} // namespace hqnn
