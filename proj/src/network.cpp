#include "hqnn/network.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hqnn {

EncodingSpec::EncodingSpec(double scale) : scale_(scale) {
    if (!std::isfinite(scale) || scale == 0.0) {
        throw std::invalid_argument("encoding scale must be finite and nonzero");
    }
}

std::string_view short_name(Variant v) {
    switch (v) {
    case Variant::WithIntermediateMeasurements: return "with";
    case Variant::WithoutIntermediateMeasurements: return "without";
    }
    return "?";
}

std::string_view display_name(Variant v) {
    switch (v) {
    case Variant::WithIntermediateMeasurements: return "With intermediate measurements";
    case Variant::WithoutIntermediateMeasurements: return "Without intermediate measurements";
    }
    return "?";
}

std::optional<Variant> parse_variant(std::string_view s) {
    if (s == "with" || s == "WithIntermediateMeasurements") {
        return Variant::WithIntermediateMeasurements;
    }
    if (s == "without" || s == "WithoutIntermediateMeasurements") {
        return Variant::WithoutIntermediateMeasurements;
    }
    return std::nullopt;
}

NetworkSpec::NetworkSpec(std::size_t n_qubits, Variant variant)
    : n_qubits_(n_qubits), variant_(variant) {
    if (n_qubits < 1 || n_qubits > kMaxStateQubits) {
        throw std::invalid_argument("network qubit count " + std::to_string(n_qubits) +
                                    " outside [1, " + std::to_string(kMaxStateQubits) + "]");
    }
    const std::size_t n = n_qubits;
    switch (variant) {
    case Variant::WithIntermediateMeasurements:
        blocks_ = {EncodingSpec(1.0), PqcSpec{n, n, 0}, MeasureSpec{},
                   EncodingSpec(std::numbers::pi), PqcSpec{n, n, n * n}};
        break;
    case Variant::WithoutIntermediateMeasurements:
        blocks_ = {EncodingSpec(1.0), PqcSpec{n, 2 * n, 0}};
        break;
    }
}

std::vector<CnotPair> entangler_pattern(std::size_t n_qubits) {
    std::vector<CnotPair> pattern;
    for (std::size_t c = 0; c + 1 < n_qubits; c += 2) pattern.push_back({c, c + 1});
    for (std::size_t c = 1; c + 1 < n_qubits; c += 2) pattern.push_back({c, c + 1});
    return pattern;
}

StateVector apply_encoding(const EncodingSpec& spec, std::span<const double> inputs) {
    StateVector psi(inputs.size());
    for (Qubit q = 0; q < inputs.size(); ++q) {
        if (!std::isfinite(inputs[q])) {
            throw std::invalid_argument("encoding input " + std::to_string(q) + " is not finite");
        }
        psi.h(q);
        psi.ry(q, spec.scale() * inputs[q]);
    }
    return psi;
}

StateVector apply_pqc(StateVector psi, const PqcSpec& spec, const ParameterVector& params) {
    if (spec.n_qubits != psi.n_qubits()) {
        throw std::invalid_argument("PQC spans " + std::to_string(spec.n_qubits) +
                                    " qubits, state has " + std::to_string(psi.n_qubits()));
    }
    if (spec.param_offset + spec.param_count() > params.size()) {
        throw std::invalid_argument("PQC needs parameters [" + std::to_string(spec.param_offset) +
                                    ", " + std::to_string(spec.param_offset + spec.param_count()) +
                                    ") but only " + std::to_string(params.size()) + " are given");
    }
    const auto pattern = entangler_pattern(spec.n_qubits);
    std::size_t w = spec.param_offset;
    for (std::size_t layer = 0; layer < spec.n_layers; ++layer) {
        for (const auto& [control, target] : pattern) psi.cnot(control, target);
        for (Qubit q = 0; q < spec.n_qubits; ++q) psi.ry(q, params[w++]);
    }
    return psi;
}

std::vector<double> measure_layer(const StateVector& psi) {
    std::vector<double> out(psi.n_qubits());
    for (Qubit q = 0; q < psi.n_qubits(); ++q) out[q] = psi.expect_z(q);
    return out;
}

namespace {

struct BlockRunner {
    const ParameterVector& params;
    std::vector<double>& inputs;
    std::optional<StateVector>& state;

    void operator()(const EncodingSpec& spec) const { state = apply_encoding(spec, inputs); }
    void operator()(const PqcSpec& spec) const { state = apply_pqc(std::move(*state), spec, params); }
    void operator()(const MeasureSpec&) const { inputs = measure_layer(*state); }
};

} // namespace

StateVector forward(const NetworkSpec& net, double bond_length, const ParameterVector& params) {
    if (params.size() != net.param_count()) {
        throw std::invalid_argument("network needs " + std::to_string(net.param_count()) +
                                    " parameters, got " + std::to_string(params.size()));
    }
    // The first encoding feeds the same bond length to every qubit.
    std::vector<double> inputs(net.n_qubits(), bond_length);
    std::optional<StateVector> state;
    const BlockRunner runner{params, inputs, state};
    for (const auto& block : net.blocks()) std::visit(runner, block);
    return std::move(*state);
}

} // namespace hqnn
