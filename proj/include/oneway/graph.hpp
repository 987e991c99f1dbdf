#pragma once

// Simple undirected graphs, cluster-state construction, removal of sites by
// computational-basis measurement, and the stabilizer group of a graph state.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "oneway/core.hpp"
#include "oneway/pauli.hpp"
#include "oneway/state.hpp"

namespace oneway {

class Graph {
 public:
  Graph() : n_(0) {}

  Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
    if (n < 0) throw error("negative site count");
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : edges) {
      if (a < 0 || a >= n || b < 0 || b >= n) throw error("edge endpoint out of range");
      if (a == b) throw error("self-loop is not a valid edge");
      auto e = std::minmax(a, b);
      if (!seen.insert(e).second) throw error("duplicate edge");
    }
    edges_.assign(seen.begin(), seen.end());
  }

  int num_sites() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  bool has_edge(int a, int b) const {
    auto e = std::minmax(a, b);
    return std::binary_search(edges_.begin(), edges_.end(), std::pair<int, int>(e.first, e.second));
  }

  std::vector<int> neighbors(int site) const {
    check_site(site);
    std::vector<int> out;
    for (auto [a, b] : edges_) {
      if (a == site) out.push_back(b);
      if (b == site) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  void check_site(int site) const {
    if (site < 0 || site >= n_) throw error("site index " + std::to_string(site) + " out of range");
  }

  // Remove a site; the remaining sites close ranks, so site k > removed
  // becomes k - 1. Matches how measurement drops a register qubit.
  Graph without_site(int site) const {
    check_site(site);
    std::vector<std::pair<int, int>> edges;
    for (auto [a, b] : edges_) {
      if (a == site || b == site) continue;
      edges.emplace_back(a > site ? a - 1 : a, b > site ? b - 1 : b);
    }
    return Graph(n_ - 1, std::move(edges));
  }

  bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }
  bool operator!=(const Graph& other) const { return !(*this == other); }

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
};

// Common shapes.
inline Graph path_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, std::move(edges));
}

inline Graph cycle_graph(int n) {
  if (n < 3) throw error("cycle needs at least three sites");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(0, n - 1);
  return Graph(n, std::move(edges));
}

// Site preparations for cluster construction; '+' is the default everywhere.
inline State single_site_state(char prep) {
  const double s = 1.0 / std::sqrt(2.0);
  switch (prep) {
    case '+': return State(1, {cx(s, 0), cx(s, 0)});
    case '-': return State(1, {cx(s, 0), cx(-s, 0)});
    case '0': return State(1, {cx(1, 0), cx(0, 0)});
    case '1': return State(1, {cx(0, 0), cx(1, 0)});
    default: throw error(std::string("unknown site preparation '") + prep + "'");
  }
}

// Entangle prepared sites with one controlled-Z per edge. CZ factors commute,
// so the edge order never matters.
inline State build_cluster(const Graph& g, const std::map<int, char>& preps = {}) {
  State::check_qubit_count(g.num_sites());
  State psi;
  for (int site = 0; site < g.num_sites(); ++site) {
    auto it = preps.find(site);
    psi = tensor(psi, single_site_state(it == preps.end() ? '+' : it->second));
  }
  for (auto [a, b] : g.edges()) psi = apply_cz(psi, a, b);
  return psi;
}

struct PrunedCluster {
  State state;  // register matches the reduced graph's site order
  Graph graph;
  double probability;
};

// Computational-basis measurement of one site. The post state equals the
// cluster on the reduced graph with sigma_z applied to each former neighbor
// when the outcome is 1; both outcomes occur with probability 1/2 on a
// cluster built from |+> sites.
inline PrunedCluster prune_z_measurement(const State& cluster, const Graph& g, int site, int outcome) {
  g.check_site(site);
  if (cluster.num_qubits() != g.num_sites()) throw error("state size does not match graph");
  MeasurementResult r = measure(cluster, site, MeasurementBasis::computational(), outcome);
  return PrunedCluster{std::move(r.post), g.without_site(site), r.probability};
}

// One generator per site: X there, Z on each neighbor.
inline std::vector<PauliString> stabilizer_generators(const Graph& g) {
  std::vector<PauliString> gens;
  gens.reserve(g.num_sites());
  for (int j = 0; j < g.num_sites(); ++j) {
    std::vector<Pauli> letters(g.num_sites(), Pauli::I);
    letters[j] = Pauli::X;
    for (int k : g.neighbors(j)) letters[k] = Pauli::Z;
    gens.emplace_back(std::move(letters));
  }
  return gens;
}

struct StabilizerGroup {
  std::vector<PauliString> elements;  // 2^n entries, subset order

  bool contains(const PauliString& p) const {
    return std::find(elements.begin(), elements.end(), p) != elements.end();
  }
};

// All 2^n signed products of the generators. Element k multiplies the
// generators whose bit is set in k, lowest site first; element 0 is +I...I.
inline StabilizerGroup stabilizer_group(const Graph& g) {
  const int n = g.num_sites();
  if (n > kMaxStabilizerSites) {
    throw capacity_error("full stabilizer group is limited to " + std::to_string(kMaxStabilizerSites) + " sites");
  }
  const auto gens = stabilizer_generators(g);
  StabilizerGroup group;
  group.elements.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    PauliString p = PauliString::identity(n);
    for (int j = 0; j < n; ++j) {
      if (mask & (std::size_t{1} << j)) p = p * gens[j];
    }
    group.elements.push_back(std::move(p));
  }
  return group;
}

// Mean of a full set of stabilizer expectation values. The count must be a
// power of two (the whole group), each value within [-1, 1].
inline double witness_fidelity(const std::vector<double>& expectations) {
  const std::size_t count = expectations.size();
  if (count == 0 || (count & (count - 1)) != 0) {
    throw error("witness needs a full stabilizer group, so a power-of-two count");
  }
  double sum = 0.0;
  for (double v : expectations) {
    if (v < -1.0 - kAlgebraTol || v > 1.0 + kAlgebraTol) throw error("stabilizer expectation outside [-1, 1]");
    sum += v;
  }
  return sum / static_cast<double>(count);
}

}  // namespace oneway
