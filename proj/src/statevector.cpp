#include "hqnn/statevector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace hqnn {

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxStateQubits) {
        throw std::out_of_range("qubit count " + std::to_string(n_qubits) + " outside [1, " +
                                std::to_string(kMaxStateQubits) + "]");
    }
    amps_.assign(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<Amplitude> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
    const std::size_t size = amplitudes.size();
    if (size < 2 || !std::has_single_bit(size)) {
        throw std::invalid_argument("amplitude count " + std::to_string(size) +
                                    " is not a power of two >= 2");
    }
    const auto n = static_cast<std::size_t>(std::countr_zero(size));
    if (n > kMaxStateQubits) {
        throw std::out_of_range("state exceeds " + std::to_string(kMaxStateQubits) + " qubits");
    }
    return StateVector(n, std::move(amplitudes));
}

void StateVector::check_qubit(Qubit q) const {
    if (q >= n_qubits_) {
        throw std::out_of_range("qubit " + std::to_string(q) + " out of range for " +
                                std::to_string(n_qubits_) + "-qubit state");
    }
}

std::size_t StateVector::mask(Qubit q) const {
    check_qubit(q);
    return std::size_t{1} << (n_qubits_ - 1 - q);
}

void StateVector::apply_single(Qubit q, Amplitude m00, Amplitude m01, Amplitude m10,
                               Amplitude m11) {
    const std::size_t stride = mask(q);
    const std::size_t dim = amps_.size();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        Amplitude* lo = amps_.data() + base;
        Amplitude* hi = lo + stride;
        for (std::size_t j = 0; j < stride; ++j) {
            const Amplitude a = lo[j];
            const Amplitude b = hi[j];
            lo[j] = m00 * a + m01 * b;
            hi[j] = m10 * a + m11 * b;
        }
    }
}

void StateVector::h(Qubit q) {
    const double r = 1.0 / std::sqrt(2.0);
    apply_single(q, r, r, r, -r);
}

void StateVector::rx(Qubit q, double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    apply_single(q, c, Amplitude{0.0, -s}, Amplitude{0.0, -s}, c);
}

void StateVector::ry(Qubit q, double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    // Real matrix: skip the complex multiply in the hot loop.
    const std::size_t stride = mask(q);
    const std::size_t dim = amps_.size();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        Amplitude* lo = amps_.data() + base;
        Amplitude* hi = lo + stride;
        for (std::size_t j = 0; j < stride; ++j) {
            const Amplitude a = lo[j];
            const Amplitude b = hi[j];
            lo[j] = c * a - s * b;
            hi[j] = s * a + c * b;
        }
    }
}

void StateVector::rz(Qubit q, double theta) {
    const Amplitude lo = std::polar(1.0, -theta / 2);
    const Amplitude hi = std::polar(1.0, theta / 2);
    apply_single(q, lo, 0.0, 0.0, hi);
}

void StateVector::cnot(Qubit control, Qubit target) {
    const std::size_t cmask = mask(control);
    const std::size_t tmask = mask(target);
    if (cmask == tmask) {
        throw std::invalid_argument("CNOT control and target are both qubit " +
                                    std::to_string(control));
    }
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cmask) && !(i & tmask)) std::swap(amps_[i], amps_[i | tmask]);
    }
}

double StateVector::expect_z(Qubit q) const {
    const std::size_t m = mask(q);
    double acc = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        const double p = std::norm(amps_[i]);
        acc += (i & m) ? -p : p;
    }
    return acc;
}

double StateVector::norm() const {
    double acc = 0.0;
    for (const auto& a : amps_) acc += std::norm(a);
    return std::sqrt(acc);
}

StateVector zero_state(std::size_t n_qubits) { return StateVector(n_qubits); }

StateVector apply_h(StateVector psi, Qubit q) {
    psi.h(q);
    return psi;
}

StateVector apply_rx(StateVector psi, Qubit q, double theta) {
    psi.rx(q, theta);
    return psi;
}

StateVector apply_ry(StateVector psi, Qubit q, double theta) {
    psi.ry(q, theta);
    return psi;
}

StateVector apply_rz(StateVector psi, Qubit q, double theta) {
    psi.rz(q, theta);
    return psi;
}

StateVector apply_cnot(StateVector psi, Qubit control, Qubit target) {
    psi.cnot(control, target);
    return psi;
}

double expect_z(const StateVector& psi, Qubit q) { return psi.expect_z(q); }

double norm(const StateVector& psi) { return psi.norm(); }

} // namespace hqnn
