#pragma once

// Catch-free reference implementations shared by the unit tests and the
// acceptance runner. Everything here recomputes results from first
// principles rather than calling the code paths under test.

#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "oneway/graph.hpp"
#include "oneway/state.hpp"

namespace testutil {

// Expand the cluster amplitude formula directly:
// amp(b) = prod_i c_i(b_i) * (-1)^(sum over edges of b_u * b_v)
inline oneway::State cluster_amplitude_oracle(const oneway::Graph& g, const std::map<int, char>& preps = {}) {
  using oneway::cx;
  const int n = g.num_sites();
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<cx> amp(std::size_t{1} << n);
  for (std::size_t b = 0; b < amp.size(); ++b) {
    double coeff = 1.0;
    for (int i = 0; i < n; ++i) {
      const int bit = static_cast<int>((b >> (n - 1 - i)) & 1u);  // qubit 0 = most significant
      auto it = preps.find(i);
      const char prep = it == preps.end() ? '+' : it->second;
      switch (prep) {
        case '+': coeff *= s; break;
        case '-': coeff *= bit ? -s : s; break;
        case '0': coeff *= bit ? 0.0 : 1.0; break;
        case '1': coeff *= bit ? 1.0 : 0.0; break;
      }
    }
    int crossings = 0;
    for (auto [u, v] : g.edges()) {
      crossings += static_cast<int>(((b >> (n - 1 - u)) & 1u) & ((b >> (n - 1 - v)) & 1u));
    }
    amp[b] = cx(crossings % 2 ? -coeff : coeff, 0);
  }
  return oneway::State(n, std::move(amp));
}

// Every labeled graph on n sites, as edge subsets of the complete graph.
inline std::vector<oneway::Graph> all_graphs(int n) {
  std::vector<std::pair<int, int>> all_edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) all_edges.emplace_back(a, b);
  std::vector<oneway::Graph> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << all_edges.size()); ++mask) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t k = 0; k < all_edges.size(); ++k) {
      if (mask & (std::size_t{1} << k)) edges.push_back(all_edges[k]);
    }
    out.emplace_back(n, std::move(edges));
  }
  return out;
}

}  // namespace testutil
