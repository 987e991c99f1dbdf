#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "helpers.hpp"
#include "oneway/density.hpp"

using namespace oneway;
using testutil::random_state;

namespace {

double min_eigenvalue(const DensityMatrix& rho) {
  const auto d = static_cast<Eigen::Index>(rho.dim());
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = rho.at(r, c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  return solver.eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("density matrices from pure states") {
  const State psi = random_state(3, 7);
  const DensityMatrix rho = DensityMatrix::from_state(psi);
  REQUIRE(std::abs(rho.trace() - cx(1, 0)) < kAlgebraTol);
  REQUIRE(rho.hermiticity_defect() < kAlgebraTol);
  REQUIRE(fidelity(rho, psi) == Catch::Approx(1.0).margin(kAlgebraTol));
  REQUIRE(pauli_expectation(rho, PauliString::parse("XZY")) ==
          Catch::Approx(pauli_expectation(psi, PauliString::parse("XZY"))).margin(kAlgebraTol));
}

TEST_CASE("partial trace keeps the requested qubits in order") {
  // Product state: tracing out either side returns the other factor.
  const State a = random_state(1, 11);
  const State b = random_state(1, 13);
  const State ab = tensor(a, b);
  REQUIRE(fidelity(reduce(ab, {0}), a) == Catch::Approx(1.0).margin(kAlgebraTol));
  REQUIRE(fidelity(reduce(ab, {1}), b) == Catch::Approx(1.0).margin(kAlgebraTol));

  // Bell pair: either qubit alone is maximally mixed.
  const double s = 1.0 / std::sqrt(2.0);
  const State bell(2, {cx(s, 0), cx(0, 0), cx(0, 0), cx(s, 0)});
  const DensityMatrix half = reduce(bell, {0});
  REQUIRE(std::abs(half.at(0, 0) - cx(0.5, 0)) < kAlgebraTol);
  REQUIRE(std::abs(half.at(1, 1) - cx(0.5, 0)) < kAlgebraTol);
  REQUIRE(std::abs(half.at(0, 1)) < kAlgebraTol);

  // Reordering the kept qubits transposes the factors.
  const DensityMatrix swapped = reduce(ab, {1, 0});
  REQUIRE(fidelity(swapped, tensor(b, a)) == Catch::Approx(1.0).margin(kAlgebraTol));

  REQUIRE_THROWS_AS(reduce(ab, {0, 0}), error);
  REQUIRE_THROWS_AS(reduce(ab, {2}), error);
}

TEST_CASE("depolarizing channel") {
  SECTION("Kraus operators preserve trace") {
    for (double p : {0.0, 0.1, 0.5, 1.0}) REQUIRE_NOTHROW(NoiseChannel::depolarizing(p).validate());
    REQUIRE_THROWS_AS(NoiseChannel::depolarizing(-0.1), error);
    REQUIRE_THROWS_AS(NoiseChannel::depolarizing(1.1), error);
  }
  SECTION("p = 0 is the identity") {
    const DensityMatrix rho = DensityMatrix::from_state(random_state(2, 17));
    const DensityMatrix out = apply_channel(rho, NoiseChannel::depolarizing(0.0), 1);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) REQUIRE(std::abs(out.at(r, c) - rho.at(r, c)) < kAlgebraTol);
  }
  SECTION("p = 1 erases a qubit completely") {
    const DensityMatrix out = apply_channel(DensityMatrix::from_state(State::basis({0})),
                                            NoiseChannel::depolarizing(1.0), 0);
    REQUIRE(std::abs(out.at(0, 0) - cx(0.5, 0)) < kAlgebraTol);
    REQUIRE(std::abs(out.at(1, 1) - cx(0.5, 0)) < kAlgebraTol);
    REQUIRE(std::abs(out.at(0, 1)) < kAlgebraTol);
  }
  SECTION("every Pauli expectation shrinks by 1 - p") {
    const State psi = random_state(1, 19);
    const DensityMatrix rho = DensityMatrix::from_state(psi);
    for (double p : {0.04, 0.3, 0.77}) {
      const DensityMatrix out = apply_channel(rho, NoiseChannel::depolarizing(p), 0);
      for (const char* word : {"X", "Y", "Z"}) {
        const PauliString op = PauliString::parse(word);
        REQUIRE(pauli_expectation(out, op) ==
                Catch::Approx((1.0 - p) * pauli_expectation(psi, op)).margin(kAlgebraTol));
      }
    }
  }
}

TEST_CASE("dephasing channel") {
  SECTION("Z expectations survive, X and Y shrink by 1 - 2p") {
    const State psi = random_state(1, 23);
    const DensityMatrix rho = DensityMatrix::from_state(psi);
    for (double p : {0.05, 0.25, 0.6}) {
      const DensityMatrix out = apply_channel(rho, NoiseChannel::dephasing(p), 0);
      REQUIRE(pauli_expectation(out, PauliString::parse("Z")) ==
              Catch::Approx(pauli_expectation(psi, PauliString::parse("Z"))).margin(kAlgebraTol));
      REQUIRE(pauli_expectation(out, PauliString::parse("X")) ==
              Catch::Approx((1.0 - 2.0 * p) * pauli_expectation(psi, PauliString::parse("X"))).margin(kAlgebraTol));
      REQUIRE(pauli_expectation(out, PauliString::parse("Y")) ==
              Catch::Approx((1.0 - 2.0 * p) * pauli_expectation(psi, PauliString::parse("Y"))).margin(kAlgebraTol));
    }
  }
  SECTION("p = 1/2 kills the off-diagonals") {
    const DensityMatrix out =
        apply_channel(DensityMatrix::from_state(plus_state(1)), NoiseChannel::dephasing(0.5), 0);
    REQUIRE(std::abs(out.at(0, 1)) < kAlgebraTol);
  }
}

TEST_CASE("channel outputs stay physical") {
  const State psi = random_state(3, 29);
  DensityMatrix rho = DensityMatrix::from_state(psi);
  for (int q = 0; q < 3; ++q) {
    rho = apply_channel(rho, NoiseChannel::depolarizing(0.15), q);
    rho = apply_channel(rho, NoiseChannel::dephasing(0.08), q);
    REQUIRE(std::abs(rho.trace() - cx(1, 0)) < kAlgebraTol);
    REQUIRE(rho.hermiticity_defect() < kAlgebraTol);
    REQUIRE(min_eigenvalue(rho) > -kAlgebraTol);
  }
  REQUIRE_THROWS_AS(apply_channel(rho, NoiseChannel::depolarizing(0.1), 3), error);
}

TEST_CASE("custom Kraus sets are validated") {
  // A lone projector does not preserve trace.
  REQUIRE_THROWS_AS(
      NoiseChannel::from_kraus({{cx(1, 0), cx(0, 0), cx(0, 0), cx(0, 0)}}), error);
  // Unitary channels do.
  const double s = 1.0 / std::sqrt(2.0);
  REQUIRE_NOTHROW(NoiseChannel::from_kraus({{cx(s, 0), cx(s, 0), cx(s, 0), cx(-s, 0)}}));
}

TEST_CASE("mixed-state fidelity interpolates") {
  const State zero = State::basis({0});
  REQUIRE(fidelity(DensityMatrix::maximally_mixed(1), zero) == Catch::Approx(0.5).margin(kAlgebraTol));
  const DensityMatrix rho = apply_channel(DensityMatrix::from_state(zero), NoiseChannel::depolarizing(0.2), 0);
  // depolarizing mixes in I/2: F = 1 - p/2
  REQUIRE(fidelity(rho, zero) == Catch::Approx(0.9).margin(kAlgebraTol));
}
