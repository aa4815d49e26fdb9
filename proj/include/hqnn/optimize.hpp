#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hqnn/bfgs.hpp"
#include "hqnn/network.hpp"
#include "hqnn/pauli.hpp"

namespace hqnn {

struct TrainingPoint {
    double bond_length = 0.0;
    PauliHamiltonian hamiltonian;
};

/// A network plus the (bond length, Hamiltonian) pairs its cost sums over.
/// Each Hamiltonian is compiled once into a PauliOperator so the cost
/// evaluates every H_j as a single operator.
class TrainingProblem {
public:
    TrainingProblem(NetworkSpec network, std::vector<TrainingPoint> points);

    const NetworkSpec& network() const noexcept { return network_; }
    const std::vector<TrainingPoint>& points() const noexcept { return points_; }
    const std::vector<PauliOperator>& operators() const noexcept { return operators_; }

private:
    NetworkSpec network_;
    std::vector<TrainingPoint> points_;
    std::vector<PauliOperator> operators_;
};

struct TrainedModel {
    NetworkSpec network;
    ParameterVector parameters;
    double final_cost = 0.0;
    std::size_t iterations_used = 0;
    bool converged = false;
    std::string message;
    /// Cost at the initial parameters and at every accepted BFGS iterate.
    std::vector<double> cost_history;

    bool operator==(const TrainedModel&) const = default;
};

/// sum_j <phi_j| H_j |phi_j>, summed in training-set order.
double cost(const ParameterVector& params, const TrainingProblem& problem);

/// Central differences (f(w + h e_i) - f(w - h e_i)) / 2h for every i.
std::vector<double> gradient(const ParameterVector& params, const TrainingProblem& problem,
                             double step = OptimizerSettings{}.finite_difference_step);

/// k draws from N(0, 0.1^2) using a seeded mt19937_64.
ParameterVector init_params(std::size_t k, std::uint64_t seed);

TrainedModel train(const TrainingProblem& problem, std::uint64_t seed,
                   const OptimizerSettings& settings);

struct Evaluation {
    double energy = 0.0;
    /// |energy - exact ground energy|
    double error = 0.0;
};

Evaluation evaluate(const TrainedModel& model, double bond_length, const PauliHamiltonian& h);
/// Same, against a ground energy the caller already has.
Evaluation evaluate(const TrainedModel& model, double bond_length, const PauliHamiltonian& h,
                    double exact_energy);

/// Compares gradients taken with step h and h/2. The deviation is
/// ||g_h - g_{h/2}||_inf / ||g_h||_inf (absolute when the gradient vanishes).
struct GradientCheck {
    double step = 0.0;
    double max_abs_deviation = 0.0;
    double gradient_inf_norm = 0.0;
    double relative_deviation = 0.0;
};

GradientCheck step_halving_check(const ParameterVector& params, const TrainingProblem& problem,
                                 double step);

} // namespace hqnn
