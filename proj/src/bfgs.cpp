#include "hqnn/bfgs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <Eigen/Core>

#include "hqnn/error.hpp"
#include "hqnn/text.hpp"

namespace hqnn {

void OptimizerSettings::validate() const {
    if (max_iterations == 0) throw ConfigError("max_iterations must be positive");
    if (!(gradient_norm_tolerance > 0.0) || !std::isfinite(gradient_norm_tolerance)) {
        throw ConfigError("gradient_norm_tolerance must be positive and finite");
    }
    if (!(finite_difference_step > 0.0) || !std::isfinite(finite_difference_step)) {
        throw ConfigError("finite_difference_step must be positive and finite");
    }
}

namespace {

constexpr double kSufficientDecrease = 1e-4; // c1
constexpr double kCurvature = 0.9;           // c2
constexpr double kMaxStep = 1e6;
constexpr int kMaxBracketSteps = 40;
constexpr int kMaxZoomSteps = 40;

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

std::span<const double> view(const Vec& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

// One trial point along the search ray. The gradient is only evaluated when
// the curvature condition has to be checked.
struct Trial {
    double alpha = 0.0;
    double f = 0.0;
    std::optional<double> slope;
    Vec g;
};

class SearchRay {
public:
    SearchRay(const Objective& objective, const GradientFn& gradient, const Vec& x, const Vec& p,
              MinimizeResult& counters)
        : objective_(objective), gradient_(gradient), x_(x), p_(p), counters_(counters) {}

    Trial value(double alpha) {
        Trial t;
        t.alpha = alpha;
        point_ = x_ + alpha * p_;
        t.f = objective_(view(point_));
        ++counters_.function_evals;
        if (!std::isfinite(t.f)) {
            throw NumericalError("objective is not finite at step " + text::format_double(alpha) +
                                 " along the search direction");
        }
        return t;
    }

    void add_slope(Trial& t) {
        if (t.slope) return;
        point_ = x_ + t.alpha * p_;
        t.g.resize(x_.size());
        gradient_(view(point_), {t.g.data(), static_cast<std::size_t>(t.g.size())});
        ++counters_.gradient_evals;
        if (!t.g.allFinite()) throw NumericalError("gradient is not finite along the search direction");
        t.slope = t.g.dot(p_);
    }

private:
    const Objective& objective_;
    const GradientFn& gradient_;
    const Vec& x_;
    const Vec& p_;
    MinimizeResult& counters_;
    Vec point_;
};

struct LineSearchOutcome {
    bool ok = false;
    Trial point;
};

// Minimizer of the interpolant through lo (value + slope) and hi (value, and
// slope when known), clamped away from the interval ends. Falls back to
// bisection when the model has no interior minimum.
double interpolate(const Trial& lo, const Trial& hi) {
    const double a = lo.alpha;
    const double b = hi.alpha;
    const double width = b - a;
    const double da = *lo.slope;
    double candidate = std::numeric_limits<double>::quiet_NaN();
    if (hi.slope) {
        const double db = *hi.slope;
        const double d1 = da + db - 3.0 * (lo.f - hi.f) / (a - b);
        const double disc = d1 * d1 - da * db;
        if (disc >= 0.0) {
            const double d2 = std::copysign(std::sqrt(disc), width);
            const double denom = db - da + 2.0 * d2;
            if (denom != 0.0) candidate = b - width * (db + d2 - d1) / denom;
        }
    } else {
        const double curvature = (hi.f - lo.f - da * width) / (width * width);
        if (curvature > 0.0) candidate = a - da / (2.0 * curvature);
    }
    const double left = std::min(a, b) + 0.1 * std::abs(width);
    const double right = std::max(a, b) - 0.1 * std::abs(width);
    if (!std::isfinite(candidate) || candidate < left || candidate > right) return 0.5 * (a + b);
    return candidate;
}

// lo: lowest sufficient-decrease point seen so far, with slope known.
LineSearchOutcome zoom(SearchRay& ray, Trial lo, Trial hi, double f0, double slope0) {
    for (int i = 0; i < kMaxZoomSteps; ++i) {
        if (std::abs(hi.alpha - lo.alpha) <= 1e-14 * std::max(1.0, std::abs(lo.alpha))) break;
        Trial t = ray.value(interpolate(lo, hi));
        if (t.f > f0 + kSufficientDecrease * t.alpha * slope0 || t.f >= lo.f) {
            hi = std::move(t);
            continue;
        }
        ray.add_slope(t);
        if (std::abs(*t.slope) <= -kCurvature * slope0) return {true, std::move(t)};
        if (*t.slope * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
        lo = std::move(t);
    }
    // Interval collapsed: settle for the best sufficient-decrease point, if any.
    if (lo.alpha > 0.0) return {true, std::move(lo)};
    return {false, {}};
}

LineSearchOutcome strong_wolfe(SearchRay& ray, double f0, double slope0, double alpha_init) {
    Trial prev;
    prev.alpha = 0.0;
    prev.f = f0;
    prev.slope = slope0;
    double alpha = alpha_init;
    for (int i = 0; i < kMaxBracketSteps; ++i) {
        Trial cur = ray.value(alpha);
        if (cur.f > f0 + kSufficientDecrease * alpha * slope0 || (i > 0 && cur.f >= prev.f)) {
            return zoom(ray, std::move(prev), std::move(cur), f0, slope0);
        }
        ray.add_slope(cur);
        if (std::abs(*cur.slope) <= -kCurvature * slope0) return {true, std::move(cur)};
        if (*cur.slope >= 0.0) return zoom(ray, std::move(cur), std::move(prev), f0, slope0);
        if (alpha >= kMaxStep) return {true, std::move(cur)};
        prev = std::move(cur);
        alpha = std::min(2.0 * alpha, kMaxStep);
    }
    if (prev.alpha > 0.0) return {true, std::move(prev)};
    return {false, {}};
}

} // namespace

MinimizeResult bfgs_minimize(const Objective& objective, const GradientFn& gradient,
                             std::span<const double> x0, const OptimizerSettings& settings) {
    settings.validate();
    MinimizeResult result;
    const auto n = static_cast<Eigen::Index>(x0.size());

    Vec x = Eigen::Map<const Vec>(x0.data(), n);
    double f = objective(view(x));
    ++result.function_evals;
    if (!std::isfinite(f)) throw NumericalError("objective is not finite at the starting point");
    Vec g(n);
    gradient(view(x), {g.data(), static_cast<std::size_t>(n)});
    ++result.gradient_evals;
    if (!g.allFinite()) throw NumericalError("gradient is not finite at the starting point");
    result.history.push_back(f);

    Mat inv_hessian = Mat::Identity(n, n);
    bool identity = true;

    for (;;) {
        result.gradient_inf_norm = n > 0 ? g.lpNorm<Eigen::Infinity>() : 0.0;
        if (result.gradient_inf_norm <= settings.gradient_norm_tolerance) {
            result.converged = true;
            result.message = "gradient norm below tolerance";
            break;
        }
        if (result.iterations >= settings.max_iterations) {
            result.message = "iteration limit reached";
            break;
        }

        Vec p = -(inv_hessian * g);
        double slope = g.dot(p);
        if (!(slope < 0.0)) {
            inv_hessian.setIdentity();
            identity = true;
            p = -g;
            slope = g.dot(p);
        }

        SearchRay ray(objective, gradient, x, p, result);
        LineSearchOutcome step = strong_wolfe(ray, f, slope, 1.0);
        if (!step.ok && !identity) {
            // Stale curvature model: retry once along steepest descent.
            inv_hessian.setIdentity();
            identity = true;
            p = -g;
            slope = g.dot(p);
            step = strong_wolfe(ray, f, slope, 1.0);
        }
        if (!step.ok) {
            result.message = "line search failed to find an acceptable step";
            break;
        }

        SearchRay(objective, gradient, x, p, result).add_slope(step.point);
        const Vec s = step.point.alpha * p;
        const Vec y = step.point.g - g;
        x += s;
        f = step.point.f;
        g = step.point.g;
        ++result.iterations;
        result.history.push_back(f);

        const double ys = y.dot(s);
        if (ys > std::numeric_limits<double>::epsilon() * s.norm() * y.norm()) {
            if (identity) {
                inv_hessian *= ys / y.squaredNorm();
                identity = false;
            }
            const double rho = 1.0 / ys;
            const Vec hy = inv_hessian * y;
            inv_hessian.noalias() -= rho * (hy * s.transpose() + s * hy.transpose());
            inv_hessian.noalias() += (rho * rho * y.dot(hy) + rho) * (s * s.transpose());
        }
    }

    result.x.assign(x.data(), x.data() + n);
    result.f = f;
    return result;
}

} // namespace hqnn
