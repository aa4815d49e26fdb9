#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "hqnn/statevector.hpp"

namespace hqnn {

/// Trainable rotation angles, in radians.
class ParameterVector {
public:
    ParameterVector() = default;
    explicit ParameterVector(std::vector<double> values) : values_(std::move(values)) {}

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

    bool operator==(const ParameterVector&) const = default;

private:
    std::vector<double> values_;
};

/// Ry(scale * x_i) H on each qubit i of a fresh |0...0> register.
class EncodingSpec {
public:
    explicit EncodingSpec(double scale = 1.0);
    double scale() const noexcept { return scale_; }

private:
    double scale_;
};

/// n_layers repetitions of [CNOT entangler, Ry on every qubit], reading
/// n_qubits * n_layers angles starting at param_offset.
struct PqcSpec {
    std::size_t n_qubits = 0;
    std::size_t n_layers = 0;
    std::size_t param_offset = 0;

    std::size_t param_count() const noexcept { return n_qubits * n_layers; }
};

/// Per-qubit <sigma_z> readout that feeds the next encoding.
struct MeasureSpec {};

using Block = std::variant<EncodingSpec, PqcSpec, MeasureSpec>;

enum class Variant {
    WithIntermediateMeasurements,
    WithoutIntermediateMeasurements,
};

/// "with" / "without".
std::string_view short_name(Variant v);
/// "With intermediate measurements" etc., as used in report tables.
std::string_view display_name(Variant v);
std::optional<Variant> parse_variant(std::string_view s);

/// Block layout of the hybrid network.
///
///   with:    Encode(1) -> PQC(n layers) -> Measure -> Encode(pi) -> PQC(n layers)
///   without: Encode(1) -> PQC(2n layers)
///
/// Both layouts consume exactly 2 n^2 parameters.
class NetworkSpec {
public:
    NetworkSpec(std::size_t n_qubits, Variant variant);

    std::size_t n_qubits() const noexcept { return n_qubits_; }
    Variant variant() const noexcept { return variant_; }
    const std::vector<Block>& blocks() const noexcept { return blocks_; }
    std::size_t param_count() const noexcept { return 2 * n_qubits_ * n_qubits_; }

    bool operator==(const NetworkSpec& other) const {
        return n_qubits_ == other.n_qubits_ && variant_ == other.variant_;
    }

private:
    std::size_t n_qubits_;
    Variant variant_;
    std::vector<Block> blocks_;
};

struct CnotPair {
    Qubit control;
    Qubit target;
    bool operator==(const CnotPair&) const = default;
};

/// CNOT ladder of one PQC layer: the chain starting at qubit 0
/// ((0,1), (2,3), ...) followed by the chain starting at qubit 1
/// ((1,2), (3,4), ...). Empty for n = 1.
std::vector<CnotPair> entangler_pattern(std::size_t n_qubits);

StateVector apply_encoding(const EncodingSpec& spec, std::span<const double> inputs);
StateVector apply_pqc(StateVector psi, const PqcSpec& spec, const ParameterVector& params);
std::vector<double> measure_layer(const StateVector& psi);

/// Runs the network on one bond length and returns the final state.
StateVector forward(const NetworkSpec& net, double bond_length, const ParameterVector& params);

} // namespace hqnn
