#pragma once

// Two-photon realization of the four-qubit cluster. Two photons carry four
// qubits: polarization (H=0, V=1) and linear momentum (l=0, r=1) of photons
// A and B. The canonical register order is (pol_A, pol_B, mom_A, mom_B).
//
// The source emits the hyperentangled state
//   (|00> + |11>)/sqrt(2)  on polarization  tensor  (|01> - |10>)/sqrt(2)  on momentum,
// and a controlled-Z between mom_A and pol_A turns it into the cluster C4.
// Five different assignments of cluster qubits to the four physical qubits
// make C4 equal a local-unitary image of the linear or box cluster.

#include <array>
#include <string>
#include <vector>

#include "oneway/core.hpp"
#include "oneway/density.hpp"
#include "oneway/graph.hpp"
#include "oneway/pauli.hpp"
#include "oneway/state.hpp"

namespace oneway {

inline constexpr int kPolA = 0;
inline constexpr int kPolB = 1;
inline constexpr int kMomA = 2;
inline constexpr int kMomB = 3;

// (|00> + |11>)/sqrt(2)
inline State polarization_bell() {
  const double s = 1.0 / std::sqrt(2.0);
  return State(2, {cx(s, 0), cx(0, 0), cx(0, 0), cx(s, 0)});
}

// (|01> - |10>)/sqrt(2)
inline State momentum_bell() {
  const double s = 1.0 / std::sqrt(2.0);
  return State(2, {cx(0, 0), cx(s, 0), cx(-s, 0), cx(0, 0)});
}

inline State hyperentangled_state() { return tensor(polarization_bell(), momentum_bell()); }

// C4 = CZ(mom_A, pol_A) applied to the hyperentangled state. Amplitudes are
// +1/2, -1/2, +1/2, +1/2 on |0001>, |0010>, |1101>, |1110>.
inline State make_c4() { return apply_cz(hyperentangled_state(), kMomA, kPolA); }

// An assignment of the four cluster sites to physical qubits, together with
// the local unitaries that map the cluster state onto C4.
struct QubitOrdering {
  std::string name;
  Graph graph;                    // cluster shape: path or box on sites 0..3
  std::array<int, 4> physical;    // physical register slot of cluster site i
  std::vector<Gate> local;        // single-qubit factor acting on cluster site i
};

namespace detail {

inline Gate compose(const Gate& second, const Gate& first) {
  // matrix product second * first, both single-qubit
  std::vector<cx> m(4, cx(0, 0));
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      for (int k = 0; k < 2; ++k) m[r * 2 + c] += second.m[r * 2 + k] * first.m[k * 2 + c];
  return Gate(1, std::move(m));
}

}  // namespace detail

// The five orderings. Factors are written operator-style, outermost first,
// e.g. "XH" acts as X * H.
inline std::vector<QubitOrdering> standard_orderings() {
  using detail::compose;
  const Gate I = gates::identity();
  const Gate H = gates::h();
  const Gate X = gates::x();
  const Gate Z = gates::z();
  const Gate XH = compose(X, H);
  const Gate ZH = compose(Z, H);

  std::vector<QubitOrdering> out;
  out.push_back({"a", path_graph(4), {kMomB, kMomA, kPolA, kPolB}, {XH, Z, I, H}});
  out.push_back({"b", path_graph(4), {kPolB, kPolA, kMomA, kMomB}, {H, Z, X, ZH}});
  out.push_back({"c", path_graph(4), {kMomA, kMomB, kPolB, kPolA}, {ZH, X, I, H}});
  out.push_back({"d", path_graph(4), {kPolA, kPolB, kMomB, kMomA}, {H, I, X, ZH}});
  out.push_back({"e", cycle_graph(4), {kMomB, kPolA, kMomA, kPolB}, {XH, H, ZH, H}});
  return out;
}

inline QubitOrdering ordering_by_name(const std::string& name) {
  for (QubitOrdering& o : standard_orderings())
    if (o.name == name) return std::move(o);
  throw error("unknown ordering '" + name + "'");
}

// Local-unitary image of the ordering's cluster state, arranged on the
// canonical physical register.
inline State ordering_image(const QubitOrdering& o) {
  State psi = build_cluster(o.graph);
  for (int site = 0; site < 4; ++site) psi = apply_gate(psi, o.local[site], {site});
  // Register slot s of the result holds cluster site perm[s].
  std::vector<int> perm(4, -1);
  for (int site = 0; site < 4; ++site) {
    if (o.physical[site] < 0 || o.physical[site] > 3) throw error("ordering maps outside the register");
    if (perm[o.physical[site]] != -1) throw error("ordering reuses a physical qubit");
    perm[o.physical[site]] = site;
  }
  return permute_qubits(psi, perm);
}

// True when the ordering reproduces C4 up to a global phase.
inline bool verify_ordering(const QubitOrdering& o, double tol = kAlgebraTol) {
  return approx_equal_up_to_phase(ordering_image(o), make_c4(), tol);
}

// Measuring cluster site `site` of the ordering in `basis` is the same as
// measuring this physical qubit of C4 in the returned (rotated) basis.
struct LabMeasurement {
  int physical_qubit;
  MeasurementBasis basis;
};

inline LabMeasurement to_lab_basis(const QubitOrdering& o, int site, const MeasurementBasis& basis) {
  if (site < 0 || site > 3) throw error("cluster site out of range");
  const Gate& u = o.local[site];
  auto rotate = [&](const std::array<cx, 2>& v) {
    return std::array<cx, 2>{u.m[0] * v[0] + u.m[1] * v[1], u.m[2] * v[0] + u.m[3] * v[1]};
  };
  return LabMeasurement{o.physical[site],
                        MeasurementBasis::from_states(rotate(basis.states[0]), rotate(basis.states[1]))};
}

// The full stabilizer group of C4 in a fixed published order: a signed Pauli
// word per row on the canonical register. Identity is the last row.
struct WitnessRow {
  int index;         // 1-based row number
  std::string word;  // letters on (pol_A, pol_B, mom_A, mom_B)
  int sign;          // +1 or -1
};

inline const std::vector<WitnessRow>& c4_witness_rows() {
  static const std::vector<WitnessRow> rows = {
      {1, "IIZZ", -1},  {2, "ZIXX", -1},  {3, "XXZI", +1},  {4, "ZZII", +1},
      {5, "ZIYY", -1},  {6, "XXIZ", -1},  {7, "ZZZZ", -1},  {8, "YXXY", +1},
      {9, "IZYY", -1},  {10, "XYXY", +1}, {11, "YXYX", -1}, {12, "IZXX", -1},
      {13, "YYZI", -1}, {14, "YYIZ", +1}, {15, "XYYX", -1}, {16, "IIII", +1},
  };
  return rows;
}

inline PauliString witness_row_operator(const WitnessRow& row) {
  PauliString p = PauliString::parse(row.word);
  return PauliString(p.letters(), row.sign == -1 ? 2 : 0);
}

struct WitnessValue {
  int index;
  std::string word;
  int sign;
  double expectation;  // signed: <sign * word>
};

struct WitnessReport {
  std::vector<WitnessValue> values;
  double fidelity;  // mean of the signed expectations
};

namespace detail {

template <typename StateLike>
WitnessReport witness_report(const StateLike& rho) {
  WitnessReport report;
  std::vector<double> expectations;
  for (const WitnessRow& row : c4_witness_rows()) {
    const double value = pauli_expectation(rho, witness_row_operator(row));
    report.values.push_back({row.index, row.word, row.sign, value});
    expectations.push_back(value);
  }
  report.fidelity = witness_fidelity(expectations);
  return report;
}

}  // namespace detail

// Evaluate all 16 stabilizer expectations and the witness fidelity.
inline WitnessReport c4_witness(const State& psi) {
  if (psi.num_qubits() != 4) throw error("witness expects the four-qubit register");
  return detail::witness_report(psi);
}

inline WitnessReport c4_witness(const DensityMatrix& rho) {
  if (rho.num_qubits() != 4) throw error("witness expects the four-qubit register");
  return detail::witness_report(rho);
}

// C4 after independent single-qubit noise on every physical qubit.
inline DensityMatrix noisy_c4(const NoiseChannel& channel) {
  DensityMatrix rho = DensityMatrix::from_state(make_c4());
  for (int q = 0; q < 4; ++q) rho = apply_channel(rho, channel, q);
  return rho;
}

}  // namespace oneway
