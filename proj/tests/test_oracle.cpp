#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"

#include "dense_reference.hpp"
#include "hqnn/experiment.hpp"
#include "hqnn/oracle.hpp"

using hqnn::PauliHamiltonian;

namespace {

PauliHamiltonian parse(const std::string& text) { return hqnn::parse_hamiltonian(text); }

} // namespace

TEST_SUITE("oracle") {

TEST_CASE("small examples") {
    CHECK(hqnn::ground_energy(parse("qubits: 1\nterm: -1 Z\n")) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(hqnn::ground_energy(parse("qubits: 2\nterm: 1 ZZ\n")) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(hqnn::ground_energy(parse("qubits: 2\nterm: 0.5 XX\nterm: 0.5 YY\nterm: 0.5 ZZ\n")) ==
          doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(hqnn::ground_energy(parse("qubits: 2\n")) == 0.0);
}

TEST_CASE("eigenvalues: ascending, complete, trace-preserving") {
    std::mt19937_64 rng(3);
    const auto h = hqnn::scaled(dense::random_hamiltonian(3, 8, rng), 1.0) +
                   parse("qubits: 3\nterm: 0.25 III\n");
    const auto ev = hqnn::eigenvalues(h);
    REQUIRE(ev.size() == 8);
    CHECK(std::is_sorted(ev.begin(), ev.end()));
    CHECK(ev.front() == doctest::Approx(hqnn::ground_energy(h)).epsilon(1e-12));
    const double trace = std::accumulate(ev.begin(), ev.end(), 0.0);
    CHECK(std::abs(trace - dense::hamiltonian(h).trace().real()) <= 1e-10);
}

TEST_CASE("ground_state") {
    const auto down = hqnn::ground_state(parse("qubits: 1\nterm: -1 Z\n"));
    CHECK(std::abs(std::abs(down[0]) - 1.0) <= 1e-12);

    const auto plus = hqnn::ground_state(parse("qubits: 1\nterm: -1 X\n"));
    CHECK(std::abs(std::abs(plus[0] + plus[1]) / std::sqrt(2.0) - 1.0) <= 1e-12);

    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const auto h = dense::random_hamiltonian(3, 10, rng);
        const auto psi = hqnn::ground_state(h);
        CHECK(std::abs(psi.norm() - 1.0) <= 1e-12);
        CHECK(std::abs(hqnn::expectation(h, psi) - hqnn::ground_energy(h)) <= 1e-9);
    }
}

TEST_CASE("property: variational lower bound over random states") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 10; ++trial) {
        const auto h = dense::random_hamiltonian(3, 10, rng);
        const double e0 = hqnn::ground_energy(h);
        for (int s = 0; s < 100; ++s) {
            CHECK(hqnn::expectation(h, dense::random_state(3, rng)) >= e0 - 1e-9);
        }
    }
}

TEST_CASE("property: shift and scale equivariance") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const auto h = dense::random_hamiltonian(3, 8, rng);
        const double e0 = hqnn::ground_energy(h);
        const auto shifted = h + parse("qubits: 3\nterm: 1.75 III\n");
        CHECK(std::abs(hqnn::ground_energy(shifted) - (e0 + 1.75)) <= 1e-10);
        CHECK(std::abs(hqnn::ground_energy(hqnn::scaled(h, 3.0)) - 3.0 * e0) <= 1e-10);
    }
}

TEST_CASE("Lanczos agrees with the dense solver") {
    std::mt19937_64 rng(13);
    for (std::size_t n : {1u, 2u, 4u}) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto h = dense::random_hamiltonian(n, 3 * n + 2, rng);
            CHECK(std::abs(hqnn::ground_energy_lanczos(h) - hqnn::ground_energy(h)) <= 1e-10);
        }
    }
    // Degenerate ground level.
    const auto zz = parse("qubits: 2\nterm: -1 ZZ\n");
    CHECK(std::abs(hqnn::ground_energy_lanczos(zz) + 1.0) <= 1e-10);

    for (double a : {0.3, 1.0, 2.0}) {
        const auto h = hqnn::tfim_hamiltonian(8, a);
        CHECK(std::abs(hqnn::ground_energy_lanczos(h) - hqnn::ground_energy(h)) <= 1e-10);
    }
}

TEST_CASE("dense solver refuses oversized registers") {
    CHECK_THROWS_AS(hqnn::ground_energy(hqnn::tfim_hamiltonian(13, 1.0)), std::invalid_argument);
}

} // TEST_SUITE
