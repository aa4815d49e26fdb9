#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hqnn/pauli.hpp"
#include "hqnn/statevector.hpp"

namespace hqnn {

/// Smallest eigenvalue of h from a dense Hermitian eigendecomposition.
/// Limited to kMaxDenseQubits.
double ground_energy(const PauliHamiltonian& h);

/// A normalized eigenvector for ground_energy(h). With a degenerate ground
/// level any vector of the eigenspace may be returned.
StateVector ground_state(const PauliHamiltonian& h);

/// Full spectrum, ascending.
std::vector<double> eigenvalues(const PauliHamiltonian& h);

struct LanczosOptions {
    std::size_t max_iterations = 500;
    /// Bound on the Ritz residual ||H v - theta v||, which also bounds the
    /// eigenvalue error for a Hermitian operator.
    double residual_tolerance = 1e-11;
    std::uint64_t seed = 20200114;
};

/// Smallest eigenvalue by Lanczos iteration with full reorthogonalization,
/// applying h matrix-free. Independent of the dense path above; used to
/// cross-check it. Throws NumericalError if the residual target is not met.
double ground_energy_lanczos(const PauliHamiltonian& h, const LanczosOptions& options = {});

} // namespace hqnn
