#include "hqnn/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "hqnn/error.hpp"
#include "hqnn/oracle.hpp"

namespace hqnn {

TrainingProblem::TrainingProblem(NetworkSpec network, std::vector<TrainingPoint> points)
    : network_(std::move(network)), points_(std::move(points)) {
    if (points_.empty()) throw std::invalid_argument("training set is empty");
    operators_.reserve(points_.size());
    for (const auto& p : points_) {
        if (p.hamiltonian.n_qubits() != network_.n_qubits()) {
            throw std::invalid_argument("Hamiltonian at bond length " + std::to_string(p.bond_length) +
                                        " has " + std::to_string(p.hamiltonian.n_qubits()) +
                                        " qubits, network has " +
                                        std::to_string(network_.n_qubits()));
        }
        operators_.emplace_back(p.hamiltonian);
    }
}

double cost(const ParameterVector& params, const TrainingProblem& problem) {
    double total = 0.0;
    const auto& points = problem.points();
    for (std::size_t j = 0; j < points.size(); ++j) {
        const StateVector phi = forward(problem.network(), points[j].bond_length, params);
        total += problem.operators()[j].expectation(phi);
    }
    return total;
}

std::vector<double> gradient(const ParameterVector& params, const TrainingProblem& problem,
                             double step) {
    if (!(step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
    std::vector<double> g(params.size());
    ParameterVector probe = params;
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double w = params[i];
        probe[i] = w + step;
        const double up = cost(probe, problem);
        probe[i] = w - step;
        const double down = cost(probe, problem);
        probe[i] = w;
        g[i] = (up - down) / (2.0 * step);
    }
    return g;
}

ParameterVector init_params(std::size_t k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 0.1);
    std::vector<double> values(k);
    for (auto& v : values) v = gauss(rng);
    return ParameterVector(std::move(values));
}

TrainedModel train(const TrainingProblem& problem, std::uint64_t seed,
                   const OptimizerSettings& settings) {
    const ParameterVector x0 = init_params(problem.network().param_count(), seed);

    const auto wrap = [](std::span<const double> x) {
        return ParameterVector(std::vector<double>(x.begin(), x.end()));
    };
    const Objective objective = [&](std::span<const double> x) { return cost(wrap(x), problem); };
    const GradientFn grad = [&](std::span<const double> x, std::span<double> out) {
        const auto g = gradient(wrap(x), problem, settings.finite_difference_step);
        std::copy(g.begin(), g.end(), out.begin());
    };

    MinimizeResult r = bfgs_minimize(objective, grad, x0.values(), settings);
    return TrainedModel{problem.network(),   ParameterVector(std::move(r.x)),
                        r.f,                 r.iterations,
                        r.converged,         std::move(r.message),
                        std::move(r.history)};
}

Evaluation evaluate(const TrainedModel& model, double bond_length, const PauliHamiltonian& h) {
    return evaluate(model, bond_length, h, ground_energy(h));
}

Evaluation evaluate(const TrainedModel& model, double bond_length, const PauliHamiltonian& h,
                    double exact_energy) {
    const double energy = PauliOperator(h).expectation(forward(model.network, bond_length, model.parameters));
    return {energy, std::abs(energy - exact_energy)};
}

GradientCheck step_halving_check(const ParameterVector& params, const TrainingProblem& problem,
                                 double step) {
    const auto coarse = gradient(params, problem, step);
    const auto fine = gradient(params, problem, step / 2);
    GradientCheck check;
    check.step = step;
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        check.max_abs_deviation = std::max(check.max_abs_deviation, std::abs(coarse[i] - fine[i]));
        check.gradient_inf_norm = std::max(check.gradient_inf_norm, std::abs(coarse[i]));
    }
    check.relative_deviation = check.gradient_inf_norm > 0.0
                                   ? check.max_abs_deviation / check.gradient_inf_norm
                                   : check.max_abs_deviation;
    return check;
}

} // namespace hqnn
