#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hqnn {

using Amplitude = std::complex<double>;
using Qubit = std::size_t;

inline constexpr std::size_t kMaxStateQubits = 20;

/// Dense n-qubit register of 2^n amplitudes.
///
/// Index convention: qubit 0 is the leftmost tensor factor, i.e. the most
/// significant bit of the amplitude index. Qubit q therefore lives on bit
/// (n - 1 - q). Every module in the library shares this ordering.
///
/// The member gate kernels mutate the buffer in place. The free functions
/// below take the state by value and return the result, so a caller that
/// passes an lvalue keeps its copy untouched and a caller that passes
/// std::move(psi) hands the buffer over without a copy.
class StateVector {
public:
    /// |0...0> on n qubits, 1 <= n <= kMaxStateQubits.
    explicit StateVector(std::size_t n_qubits);

    /// Wraps raw amplitudes. The size must be a power of two >= 2. No
    /// normalization is applied or checked.
    static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);

    std::size_t n_qubits() const noexcept { return n_qubits_; }
    std::size_t dim() const noexcept { return amps_.size(); }

    std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
    std::span<Amplitude> amplitudes() noexcept { return amps_; }
    const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

    /// Bit mask selecting qubit q in an amplitude index.
    std::size_t mask(Qubit q) const;

    void h(Qubit q);
    void rx(Qubit q, double theta);
    void ry(Qubit q, double theta);
    void rz(Qubit q, double theta);
    void cnot(Qubit control, Qubit target);

    /// <sigma_z> on qubit q: weight with bit q clear minus weight with it set.
    double expect_z(Qubit q) const;
    double norm() const;

private:
    StateVector(std::size_t n_qubits, std::vector<Amplitude> amplitudes);

    void check_qubit(Qubit q) const;

    // Applies the 2x2 matrix [[m00, m01], [m10, m11]] to every (bit=0, bit=1)
    // amplitude pair of qubit q.
    void apply_single(Qubit q, Amplitude m00, Amplitude m01, Amplitude m10, Amplitude m11);

    std::size_t n_qubits_;
    std::vector<Amplitude> amps_;
};

StateVector zero_state(std::size_t n_qubits);

StateVector apply_h(StateVector psi, Qubit q);
StateVector apply_rx(StateVector psi, Qubit q, double theta);
StateVector apply_ry(StateVector psi, Qubit q, double theta);
StateVector apply_rz(StateVector psi, Qubit q, double theta);
StateVector apply_cnot(StateVector psi, Qubit control, Qubit target);

double expect_z(const StateVector& psi, Qubit q);
double norm(const StateVector& psi);

} // namespace hqnn
