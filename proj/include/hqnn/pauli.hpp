#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "hqnn/statevector.hpp"

namespace hqnn {

enum class PauliAxis : std::uint8_t { I, X, Y, Z };

char to_char(PauliAxis axis);
std::optional<PauliAxis> axis_from_char(char c);

/// One weighted Pauli string c * (sigma_{axes[0]} x ... x sigma_{axes[n-1]}).
struct PauliTerm {
    double coefficient = 0.0;
    std::vector<PauliAxis> axes;

    std::size_t n_qubits() const noexcept { return axes.size(); }
    bool is_identity() const noexcept;
    std::string axis_string() const;

    bool operator==(const PauliTerm&) const = default;
};

/// Real-weighted sum of n-qubit Pauli strings, in file order. Duplicate axis
/// strings are kept as-is; see normalize().
class PauliHamiltonian {
public:
    PauliHamiltonian(std::size_t n_qubits, std::vector<PauliTerm> terms,
                     std::optional<double> bond_length = std::nullopt);

    std::size_t n_qubits() const noexcept { return n_qubits_; }
    const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
    std::optional<double> bond_length() const noexcept { return bond_length_; }

    bool operator==(const PauliHamiltonian&) const = default;

private:
    std::size_t n_qubits_;
    std::vector<PauliTerm> terms_;
    std::optional<double> bond_length_;
};

/// Parses the line-oriented .ham format:
///
///     # comment
///     qubits: 4
///     bond_length: 0.735
///     term: -0.8105 IIII
///     term: 1.7e-1 ZIII
///
/// Throws ParseError (with the offending line) on any violation; never
/// returns a partial Hamiltonian.
PauliHamiltonian parse_hamiltonian(std::istream& in);
PauliHamiltonian parse_hamiltonian(std::string_view text);

/// Canonical text form. Coefficients are written in shortest round-trip
/// notation so parse_hamiltonian(format_hamiltonian(h)) == h.
std::string format_hamiltonian(const PauliHamiltonian& h);

PauliHamiltonian read_hamiltonian_file(const std::filesystem::path& path);
void write_hamiltonian_file(const std::filesystem::path& path, const PauliHamiltonian& h);

/// Merges duplicate axis strings by summing coefficients, keeping the order
/// of first appearance.
PauliHamiltonian normalize(const PauliHamiltonian& h);
/// alpha * h.
PauliHamiltonian scaled(const PauliHamiltonian& h, double alpha);
/// Term list concatenation, i.e. the operator sum. Metadata is taken from lhs.
PauliHamiltonian operator+(const PauliHamiltonian& lhs, const PauliHamiltonian& rhs);

/// c * P |psi> into a caller-owned buffer of the same dimension.
void apply_term(const PauliTerm& term, std::span<const Amplitude> psi, std::span<Amplitude> out);
StateVector apply_term(const PauliTerm& term, const StateVector& psi);

/// sum_i c_i <psi|P_i|psi>, term by term without a dense matrix.
double expectation(const PauliHamiltonian& h, const StateVector& psi);

inline constexpr std::size_t kMaxDenseQubits = 12;

/// Dense 2^n x 2^n Hermitian matrix of h. Throws for n > kMaxDenseQubits.
Eigen::MatrixXcd to_dense(const PauliHamiltonian& h);

/// A Hamiltonian compiled into one sparse operator.
///
/// Terms sharing the same X/Y flip pattern map |i> to the same |i ^ flip>, so
/// each flip pattern becomes a single weighted permutation whose per-index
/// weights are accumulated once up front. Evaluating <H> is then one sweep
/// per distinct flip pattern, regardless of how many terms there are.
class PauliOperator {
public:
    explicit PauliOperator(const PauliHamiltonian& h);

    std::size_t n_qubits() const noexcept { return n_qubits_; }
    std::size_t flip_groups() const noexcept { return groups_.size(); }

    double expectation(const StateVector& psi) const;
    /// out = H |psi>.
    void apply(std::span<const Amplitude> psi, std::span<Amplitude> out) const;

private:
    struct Group {
        std::size_t flip = 0;
        std::vector<Amplitude> weights;
    };

    std::size_t n_qubits_;
    std::vector<Group> groups_;
};

} // namespace hqnn
