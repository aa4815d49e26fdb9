#include "hqnn/oracle.hpp"

#include <cmath>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "hqnn/error.hpp"

namespace hqnn {

namespace {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solve_dense(const PauliHamiltonian& h,
                                                            bool vectors) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        to_dense(h), vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("dense Hermitian eigensolver did not converge");
    }
    return solver;
}

using CVec = Eigen::VectorXcd;

} // namespace

double ground_energy(const PauliHamiltonian& h) {
    return solve_dense(h, false).eigenvalues()(0);
}

std::vector<double> eigenvalues(const PauliHamiltonian& h) {
    const auto values = solve_dense(h, false).eigenvalues();
    return {values.data(), values.data() + values.size()};
}

StateVector ground_state(const PauliHamiltonian& h) {
    const auto solver = solve_dense(h, true);
    const CVec v = solver.eigenvectors().col(0).normalized();
    return StateVector::from_amplitudes({v.data(), v.data() + v.size()});
}

double ground_energy_lanczos(const PauliHamiltonian& h, const LanczosOptions& options) {
    const PauliOperator op(h);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << h.n_qubits());
    const Eigen::Index max_steps =
        std::min<Eigen::Index>(dim, static_cast<Eigen::Index>(options.max_iterations));

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> gauss;
    CVec v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = {gauss(rng), gauss(rng)};
    v.normalize();

    Eigen::MatrixXcd basis(dim, max_steps);
    std::vector<double> alpha;
    std::vector<double> beta;
    CVec w(dim);

    for (Eigen::Index k = 0; k < max_steps; ++k) {
        basis.col(k) = v;
        op.apply({v.data(), static_cast<std::size_t>(dim)}, {w.data(), static_cast<std::size_t>(dim)});
        alpha.push_back(v.dot(w).real());

        // Full reorthogonalization, applied twice for stability.
        for (int pass = 0; pass < 2; ++pass) {
            const auto q = basis.leftCols(k + 1);
            w -= q * (q.adjoint() * w);
        }
        const double b = w.norm();

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
        const Eigen::Map<const Eigen::VectorXd> diag(alpha.data(), k + 1);
        const Eigen::Map<const Eigen::VectorXd> off(beta.data(), k);
        tri.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
        if (tri.info() != Eigen::Success) throw NumericalError("tridiagonal eigensolver failed");
        const double theta = tri.eigenvalues()(0);
        const double residual = b * std::abs(tri.eigenvectors()(k, 0));

        // b ~ 0: the Krylov space is invariant and already holds every
        // eigenvalue the start vector touches.
        const double scale = std::max(1.0, std::abs(theta));
        if (residual <= options.residual_tolerance * scale || b <= 1e-13 * scale || k + 1 == dim) {
            return theta;
        }
        beta.push_back(b);
        v = w / b;
    }
    throw NumericalError("Lanczos did not reach residual " +
                         std::to_string(options.residual_tolerance) + " in " +
                         std::to_string(max_steps) + " steps");
}

} // namespace hqnn
