#pragma once

// Shared test utilities. The matrix helpers build full 2^n x 2^n operators by
// explicit Kronecker products and apply them by dense matrix-vector
// multiplication; they deliberately share no code with the library kernels so
// they can serve as an independent oracle.

#include <catch2/catch_amalgamated.hpp>
#include <vector>

#include "oneway/core.hpp"
#include "oneway/state.hpp"

namespace testutil {

using oneway::cx;
using Matrix = std::vector<std::vector<cx>>;

inline Matrix identity2() { return {{cx(1, 0), cx(0, 0)}, {cx(0, 0), cx(1, 0)}}; }

inline Matrix from_gate(const oneway::Gate& g) {
  const std::size_t d = g.arity == 1 ? 2 : 4;
  Matrix m(d, std::vector<cx>(d));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) m[r][c] = g.m[r * d + c];
  return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t ra = a.size(), ca = a[0].size();
  const std::size_t rb = b.size(), cb = b[0].size();
  Matrix out(ra * rb, std::vector<cx>(ca * cb));
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < ca; ++j)
      for (std::size_t k = 0; k < rb; ++k)
        for (std::size_t l = 0; l < cb; ++l) out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
  return out;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), m = b[0].size(), k = b.size();
  Matrix out(n, std::vector<cx>(m, cx(0, 0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
  return out;
}

// Operator acting with `factors[q]` on qubit q (identity when omitted).
inline Matrix full_operator(int n, const std::vector<std::pair<int, Matrix>>& factors) {
  std::vector<Matrix> per_qubit(n, identity2());
  for (const auto& [q, m] : factors) per_qubit[q] = m;
  Matrix out = {{cx(1, 0)}};
  for (int q = 0; q < n; ++q) out = kron(out, per_qubit[q]);
  return out;
}

inline oneway::State apply_matrix(const Matrix& m, const oneway::State& psi) {
  const std::size_t d = psi.size();
  std::vector<cx> out(d, cx(0, 0));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) out[r] += m[r][c] * psi[c];
  return oneway::State(psi.num_qubits(), std::move(out));
}

inline oneway::State random_state(int n, std::uint64_t seed) {
  oneway::SplitMix64 rng(seed);
  std::vector<cx> amp(oneway::State::dim(n));
  for (cx& a : amp) a = cx(rng.next_double() - 0.5, rng.next_double() - 0.5);
  double norm = 0.0;
  for (const cx& a : amp) norm += std::norm(a);
  norm = std::sqrt(norm);
  for (cx& a : amp) a /= norm;
  return oneway::State(n, std::move(amp));
}

inline void expect_equal_up_to_phase(const oneway::State& actual, const oneway::State& expected,
                                     double tol = oneway::kAlgebraTol) {
  INFO("overlap magnitude: " << std::abs(inner_product(actual, expected)));
  REQUIRE(approx_equal_up_to_phase(actual, expected, tol));
}

inline void expect_equal_exact(const oneway::State& actual, const oneway::State& expected,
                               double tol = oneway::kExactTol) {
  REQUIRE(actual.num_qubits() == expected.num_qubits());
  for (std::size_t i = 0; i < actual.size(); ++i) {
    INFO("amplitude " << i);
    REQUIRE(std::abs(actual[i] - expected[i]) <= tol);
  }
}

}  // namespace testutil
