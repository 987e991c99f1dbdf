#pragma once

// Builders for the five experiments the four-qubit cluster supports, plus the
// closed-form outputs they must reproduce.
//
// Site numbering is 0-based along the wire. On the linear cluster 0-1-2-3:
//   * single-qubit rotation: site 0 selects the input, 1 and 2 carry the
//     rotation, 3 holds the output;
//   * cnot: sites 0 and 3 are measured, 1 is the control output, 2 the target;
//   * c-phase: sites 0 and 1 carry the rotation, 3 is the control output,
//     2 the target.
// Grover and the two-query balanced-function test run on the box cluster.

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "oneway/core.hpp"
#include "oneway/graph.hpp"
#include "oneway/lab.hpp"
#include "oneway/pattern.hpp"
#include "oneway/state.hpp"

namespace oneway {

enum class InputState { plus, minus };
enum class ControlOp { identity, hadamard };
enum class DeutschFunction { f1, f2, f3, f4 };

inline State input_state(InputState input) {
  return single_site_state(input == InputState::plus ? '+' : '-');
}

inline State apply1(const Gate& g, const State& psi) { return apply_gate(psi, g, {0}); }

// ---------------------------------------------------------------------------
// Single-qubit rotation on the linear cluster.
//
// Site 0 is prepared in |0> or |1> so its computational-basis outcome is
// fixed and selects the logical input |+> or |->. Site 1 measured in B(alpha)
// and site 2 in B(+-beta) (sign following s1) leave
//   sigma_x^{s2} sigma_z^{s1} R_x(beta) R_z(alpha) |input>
// on site 3.

struct RotationSpec {
  double alpha = 0.0;
  double beta = 0.0;
  InputState input = InputState::plus;
};

inline MeasurementPattern rotation_pattern(const RotationSpec& spec) {
  MeasurementPattern p;
  p.name = "rotation";
  p.graph = path_graph(4);
  p.inputs[0] = spec.input == InputState::plus ? '0' : '1';
  p.steps.push_back({0, true, {}});
  p.steps.push_back({1, false, {spec.alpha, {}, {}}});
  p.steps.push_back({2, false, {spec.beta, {outcome_label(1)}, {}}});
  p.outputs = {3};
  p.byproducts = {{"out", {{outcome_label(2)}, {outcome_label(1)}}}};
  p.validate();
  return p;
}

// R_x(beta) R_z(alpha) |input>, the byproduct-free output in the cluster frame.
inline State rotation_cluster_target(const RotationSpec& spec) {
  return apply1(gates::rx(spec.beta), apply1(gates::rz(spec.alpha), input_state(spec.input)));
}

// The same output as the physical photon carries it: the ordering's local
// unitary on the output site converts cluster frame to laboratory frame.
inline State rotation_lab_target(const RotationSpec& spec, const QubitOrdering& ordering) {
  return apply1(ordering.local[3], rotation_cluster_target(spec));
}

// ---------------------------------------------------------------------------
// cnot between a control prepared by O in {1, H} and a target R_z(alpha)|+>.
//
// Site 0 is measured in the computational basis (O = 1) or B(0) (O = H);
// site 3 in B(alpha). Outputs: site 1 = control, site 2 = target. The
// corrected output is CZ(O|+> (x) H R_z(alpha)|+>); a Hadamard on the target
// turns it into the cnot form below.

inline MeasurementPattern cnot_pattern(ControlOp op, double alpha) {
  MeasurementPattern p;
  p.name = op == ControlOp::hadamard ? "cnot_h" : "cnot_id";
  p.graph = path_graph(4);
  if (op == ControlOp::hadamard) {
    p.steps.push_back({0, false, {0.0, {}, {}}});
  } else {
    p.steps.push_back({0, true, {}});
  }
  p.steps.push_back({3, false, {alpha, {}, {}}});
  p.outputs = {1, 2};
  const std::string s0 = outcome_label(0);
  const std::string s3 = outcome_label(3);
  if (op == ControlOp::hadamard) {
    p.byproducts = {{"control", {{s0}, {s3}}}, {"target", {{s3}, {s0}}}};
  } else {
    p.byproducts = {{"control", {{}, {s0, s3}}}, {"target", {{s3}, {}}}};
  }
  p.validate();
  return p;
}

inline State control_prep(ControlOp op) {
  const State plus = single_site_state('+');
  return op == ControlOp::hadamard ? apply1(gates::h(), plus) : plus;
}

// CZ(O|+> (x) H R_z(alpha)|+>) on (control, target).
inline State cnot_corrected_target(ControlOp op, double alpha) {
  const State target = apply1(gates::h(), apply1(gates::rz(alpha), single_site_state('+')));
  return apply_cz(tensor(control_prep(op), target), 0, 1);
}

// Convert a raw pattern output on (control, target) to the laboratory frame:
// sigma_x on the control from the physical qubit assignment, and the
// compensating Hadamard on the target.
inline State cnot_to_lab(const State& cluster_output) {
  State psi = apply_gate(cluster_output, gates::x(), {0});
  return apply_gate(psi, gates::h(), {1});
}

// Per-branch laboratory output:
//   (Z (x) Z)^{s3} (X (x) 1) cnot (O Z^{s0} |+> (x) R_z(alpha) |+>).
inline State cnot_lab_output(ControlOp op, double alpha, int s0, int s3) {
  State control = single_site_state('+');
  if (s0) control = apply1(gates::z(), control);
  if (op == ControlOp::hadamard) control = apply1(gates::h(), control);
  const State target = apply1(gates::rz(alpha), single_site_state('+'));
  State psi = apply_gate(tensor(control, target), gates::cnot(), {0, 1});
  psi = apply_gate(psi, gates::x(), {0});
  if (s3) {
    psi = apply_gate(psi, gates::z(), {0});
    psi = apply_gate(psi, gates::z(), {1});
  }
  return psi;
}

// ---------------------------------------------------------------------------
// c-phase gate: entangles R_x(beta) R_z(alpha)|+> (target, site 2) with |+>
// (control, site 3). Site 0 is measured in B(alpha), site 1 in B(+-beta).

inline MeasurementPattern cphase_pattern(double alpha, double beta) {
  MeasurementPattern p;
  p.name = "cphase";
  p.graph = path_graph(4);
  p.steps.push_back({0, false, {alpha, {}, {}}});
  p.steps.push_back({1, false, {beta, {outcome_label(0)}, {}}});
  p.outputs = {3, 2};  // control first, then target
  const std::string s0 = outcome_label(0);
  const std::string s1 = outcome_label(1);
  p.byproducts = {{"control", {{}, {s1}}}, {"target", {{s1}, {s0}}}};
  p.validate();
  return p;
}

// CZ(|+> (x) R_x(beta) R_z(alpha)|+>) on (control, target).
inline State cphase_corrected_target(double alpha, double beta) {
  const State phi = apply1(gates::rx(beta), apply1(gates::rz(alpha), single_site_state('+')));
  return apply_cz(tensor(single_site_state('+'), phi), 0, 1);
}

// Laboratory frame of a raw (control, target) output: sigma_z H on the
// control's physical qubit, sigma_x on the target's.
inline State cphase_to_lab(const State& cluster_output) {
  State psi = apply_gate(cluster_output, gates::h(), {0});
  psi = apply_gate(psi, gates::z(), {0});
  return apply_gate(psi, gates::x(), {1});
}

// The no-error laboratory output,
//   (|-> (x) sigma_x |Phi> + |+> (x) sigma_x sigma_z |Phi>)/sqrt(2)
// with |Phi> = R_x(beta) R_z(alpha)|+>.
inline State cphase_lab_display(double alpha, double beta) {
  const State phi = apply1(gates::rx(beta), apply1(gates::rz(alpha), single_site_state('+')));
  const State a = tensor(single_site_state('-'), apply1(gates::x(), phi));
  const State b = tensor(single_site_state('+'), apply1(gates::x(), apply1(gates::z(), phi)));
  std::vector<cx> amp(4);
  for (std::size_t i = 0; i < 4; ++i) amp[i] = (a[i] + b[i]) / std::sqrt(2.0);
  return State(2, std::move(amp));
}

// ---------------------------------------------------------------------------
// Two-qubit search on the box cluster. The measurement angles on sites 0 and
// 3 choose which item gets tagged; sites 1 and 2 are read out in B(pi) and
// relabeled by the earlier outcomes.

inline std::pair<double, double> grover_angles(const std::string& tag) {
  const double pi = std::numbers::pi;
  if (tag == "00") return {pi, pi};
  if (tag == "01") return {0.0, pi};
  if (tag == "10") return {pi, 0.0};
  if (tag == "11") return {0.0, 0.0};
  throw error("search tag must be two bits");
}

inline MeasurementPattern grover_pattern(const std::string& tag) {
  const auto [alpha, beta] = grover_angles(tag);
  MeasurementPattern p;
  p.name = "grover_" + tag;
  p.graph = cycle_graph(4);
  p.steps.push_back({0, false, {alpha, {}, {}}});
  p.steps.push_back({3, false, {beta, {}, {}}});
  p.steps.push_back({1, false, {std::numbers::pi, {}, {}}});
  p.steps.push_back({2, false, {std::numbers::pi, {}, {}}});
  p.outputs = {};
  p.relabel = {{"item0", {outcome_label(1), outcome_label(3)}}, {"item1", {outcome_label(2), outcome_label(0)}}};
  p.validate();
  return p;
}

inline std::vector<int> grover_expected_bits(const std::string& tag) {
  if (tag.size() != 2 || (tag[0] != '0' && tag[0] != '1') || (tag[1] != '0' && tag[1] != '1')) {
    throw error("search tag must be two bits");
  }
  return {tag[0] - '0', tag[1] - '0'};
}

// Circuit-model reference: inversion about the average after the tagging
// operation (R_z(alpha) (x) R_z(beta)) CZ recovers the tagged item exactly.
inline State grover_operator_output(const std::string& tag) {
  const auto [alpha, beta] = grover_angles(tag);
  State psi = plus_state(2);
  psi = apply_cz(psi, 0, 1);
  psi = apply_gate(psi, gates::rz(alpha), {0});
  psi = apply_gate(psi, gates::rz(beta), {1});
  // 2|++><++| - 1
  const State uniform = plus_state(2);
  const cx overlap = inner_product(uniform, psi);
  std::vector<cx> amp(4);
  for (std::size_t i = 0; i < 4; ++i) amp[i] = 2.0 * overlap * uniform[i] - psi[i];
  return State(2, std::move(amp));
}

// ---------------------------------------------------------------------------
// Two-qubit oracle discrimination on the linear cluster: one query decides
// whether a one-bit function is constant (f1, f2) or balanced (f3, f4).
// Site 3 prepares the ancilla via B(pi); site 1 applies the oracle (trivial
// for the constant case, entangling for the balanced one); sites 0 and 2 are
// the query and ancilla readouts.

inline MeasurementPattern deutsch_pattern(DeutschFunction f) {
  const bool balanced = f == DeutschFunction::f3 || f == DeutschFunction::f4;
  const double half_pi = std::numbers::pi / 2.0;
  MeasurementPattern p;
  switch (f) {
    case DeutschFunction::f1: p.name = "deutsch_f1"; break;
    case DeutschFunction::f2: p.name = "deutsch_f2"; break;
    case DeutschFunction::f3: p.name = "deutsch_f3"; break;
    case DeutschFunction::f4: p.name = "deutsch_f4"; break;
  }
  p.graph = path_graph(4);
  p.steps.push_back({3, false, {std::numbers::pi, {}, {}}});
  if (balanced) {
    p.steps.push_back({1, false, {half_pi, {}, {}}});
    p.steps.push_back({0, false, {half_pi, {}, {}}});
  } else {
    p.steps.push_back({1, true, {}});
    p.steps.push_back({0, false, {0.0, {}, {}}});
  }
  p.steps.push_back({2, true, {}});
  p.outputs = {};
  const std::string s0 = outcome_label(0);
  const std::string s1 = outcome_label(1);
  const std::string s2 = outcome_label(2);
  const std::string s3 = outcome_label(3);
  if (balanced) {
    p.relabel = {{"query", {s0, s1, s3}}, {"ancilla", {s2, s3}}};
  } else {
    p.relabel = {{"query", {s0, s1}}, {"ancilla", {s2, s3}}};
  }
  p.validate();
  return p;
}

// Query bit 0 for constant functions, 1 for balanced; the ancilla always
// reads 1.
inline std::vector<int> deutsch_expected_bits(DeutschFunction f) {
  const bool balanced = f == DeutschFunction::f3 || f == DeutschFunction::f4;
  return {balanced ? 1 : 0, 1};
}

// ---------------------------------------------------------------------------
// The angle grids the experiments were characterized on.

// (alpha, beta) pairs read out on the polarization side.
inline std::vector<std::pair<double, double>> rotation_test_angles_a() {
  const double pi = std::numbers::pi;
  return {{0.0, pi / 2}, {-pi / 2, 0.0}, {-pi / 2, pi / 2}, {-pi / 2, -pi / 4}};
}

// (alpha, beta) pairs read out on the momentum side; equatorial rotations only.
inline std::vector<std::pair<double, double>> rotation_test_angles_b() {
  const double pi = std::numbers::pi;
  return {{0.0, 0.0}, {pi / 2, 0.0}, {pi / 4, 0.0}, {-pi / 4, 0.0}};
}

inline std::vector<double> cnot_test_angles() {
  const double pi = std::numbers::pi;
  return {pi / 2, pi / 4};
}

inline std::vector<std::pair<double, double>> cphase_test_angles() {
  const double pi = std::numbers::pi;
  return {{0.0, 0.0},      {pi, 0.0},           {pi / 2, 0.0},      {-pi / 2, 0.0},
          {pi / 2, pi / 2}, {pi / 2, -pi / 2},  {pi / 4, pi / 2}};
}

}  // namespace oneway
