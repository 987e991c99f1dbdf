#pragma once

// Dense state vectors for small registers, single/two-qubit gates, controlled-Z,
// and projective measurement in the computational or equatorial bases.
//
// Conventions used throughout:
//   * qubit 0 owns the most significant bit of the basis index, so
//     |q0 q1 ... q_{n-1}> maps to index (q0 << (n-1)) | ... | q_{n-1};
//   * the equatorial basis B(phi) consists of
//     |phi_+-> = (e^{i phi/2}|0> +- e^{-i phi/2}|1>)/sqrt(2),
//     and outcome bit 0 corresponds to |phi_+>;
//   * R_z(a) = diag(e^{-ia/2}, e^{ia/2}), R_x(b) = e^{-i b X / 2}.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "oneway/core.hpp"

namespace oneway {

class State {
 public:
  State() : n_(0), amp_(1, cx(1.0, 0.0)) {}

  State(int n, std::vector<cx> amplitudes) : n_(n), amp_(std::move(amplitudes)) {
    check_qubit_count(n);
    if (amp_.size() != dim(n)) throw error("amplitude count does not match qubit count");
  }

  static std::size_t dim(int n) { return std::size_t{1} << n; }

  static void check_qubit_count(int n) {
    if (n < 0) throw error("negative qubit count");
    if (n > kMaxQubits) {
      throw capacity_error("register of " + std::to_string(n) + " qubits exceeds the dense limit of " +
                           std::to_string(kMaxQubits));
    }
  }

  // |x> for a basis index given as bits, qubit 0 first.
  static State basis(const std::vector<int>& bits) {
    const int n = static_cast<int>(bits.size());
    check_qubit_count(n);
    std::size_t index = 0;
    for (int b : bits) {
      if (b != 0 && b != 1) throw error("basis bits must be 0 or 1");
      index = (index << 1) | static_cast<std::size_t>(b);
    }
    std::vector<cx> amp(dim(n), cx(0.0, 0.0));
    amp[index] = cx(1.0, 0.0);
    return State(n, std::move(amp));
  }

  int num_qubits() const { return n_; }
  std::size_t size() const { return amp_.size(); }
  const std::vector<cx>& amplitudes() const { return amp_; }
  const cx& operator[](std::size_t i) const { return amp_[i]; }

  double norm() const {
    double s = 0.0;
    for (const cx& a : amp_) s += std::norm(a);
    return std::sqrt(s);
  }

  State normalized() const {
    const double nrm = norm();
    if (nrm < kBranchCutoff) throw error("cannot normalize a null vector");
    std::vector<cx> amp = amp_;
    for (cx& a : amp) a /= nrm;
    return State(n_, std::move(amp));
  }

  // Bit of qubit q inside basis index i.
  int bit(std::size_t index, int q) const { return static_cast<int>((index >> (n_ - 1 - q)) & 1u); }

  void check_qubit(int q) const {
    if (q < 0 || q >= n_) throw error("qubit index " + std::to_string(q) + " out of range");
  }

 private:
  int n_;
  std::vector<cx> amp_;
};

// |+>^n, the resource before any entangling operation.
inline State plus_state(int n) {
  State::check_qubit_count(n);
  const std::size_t d = State::dim(n);
  const cx a(1.0 / std::sqrt(static_cast<double>(d)), 0.0);
  return State(n, std::vector<cx>(d, a));
}

struct Gate {
  int arity;            // 1 or 2
  std::vector<cx> m;    // row-major, 2x2 or 4x4

  Gate(int arity_, std::vector<cx> matrix) : arity(arity_), m(std::move(matrix)) {
    if (arity != 1 && arity != 2) throw error("gate arity must be 1 or 2");
    const std::size_t d = arity == 1 ? 2 : 4;
    if (m.size() != d * d) throw error("gate matrix has wrong shape");
    // U U^dag = 1 within tolerance.
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        cx s(0.0, 0.0);
        for (std::size_t k = 0; k < d; ++k) s += m[r * d + k] * std::conj(m[c * d + k]);
        const cx want = r == c ? cx(1.0, 0.0) : cx(0.0, 0.0);
        if (std::abs(s - want) > kAlgebraTol) throw error("gate matrix is not unitary");
      }
    }
  }
};

namespace gates {

inline Gate identity() { return Gate(1, {cx(1, 0), cx(0, 0), cx(0, 0), cx(1, 0)}); }
inline Gate x() { return Gate(1, {cx(0, 0), cx(1, 0), cx(1, 0), cx(0, 0)}); }
inline Gate y() { return Gate(1, {cx(0, 0), cx(0, -1), cx(0, 1), cx(0, 0)}); }
inline Gate z() { return Gate(1, {cx(1, 0), cx(0, 0), cx(0, 0), cx(-1, 0)}); }

inline Gate h() {
  const double s = 1.0 / std::sqrt(2.0);
  return Gate(1, {cx(s, 0), cx(s, 0), cx(s, 0), cx(-s, 0)});
}

inline Gate rz(double angle) {
  const cx lo = std::polar(1.0, -angle / 2.0);
  const cx hi = std::polar(1.0, angle / 2.0);
  return Gate(1, {lo, cx(0, 0), cx(0, 0), hi});
}

inline Gate rx(double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  return Gate(1, {cx(c, 0), cx(0, -s), cx(0, -s), cx(c, 0)});
}

inline Gate phase(double angle) {  // diag(1, e^{i angle})
  return Gate(1, {cx(1, 0), cx(0, 0), cx(0, 0), std::polar(1.0, angle)});
}

inline Gate cz() {
  std::vector<cx> m(16, cx(0, 0));
  m[0] = m[5] = m[10] = cx(1, 0);
  m[15] = cx(-1, 0);
  return Gate(2, m);
}

inline Gate cnot() {  // first qubit controls
  std::vector<cx> m(16, cx(0, 0));
  m[0] = m[5] = cx(1, 0);
  m[2 * 4 + 3] = m[3 * 4 + 2] = cx(1, 0);
  return Gate(2, m);
}

}  // namespace gates

// Apply a gate on the given target qubits; two-qubit gates read the first
// target as the more significant row/column bit.
inline State apply_gate(const State& psi, const Gate& g, const std::vector<int>& targets) {
  if (static_cast<int>(targets.size()) != g.arity) throw error("target count does not match gate arity");
  for (int q : targets) psi.check_qubit(q);

  const int n = psi.num_qubits();
  std::vector<cx> amp = psi.amplitudes();

  if (g.arity == 1) {
    const int q = targets[0];
    const std::size_t stride = std::size_t{1} << (n - 1 - q);
    for (std::size_t i = 0; i < amp.size(); ++i) {
      if (i & stride) continue;
      const cx a0 = amp[i];
      const cx a1 = amp[i | stride];
      amp[i] = g.m[0] * a0 + g.m[1] * a1;
      amp[i | stride] = g.m[2] * a0 + g.m[3] * a1;
    }
    return State(n, std::move(amp));
  }

  if (targets[0] == targets[1]) throw error("two-qubit gate needs distinct targets");
  const std::size_t s0 = std::size_t{1} << (n - 1 - targets[0]);
  const std::size_t s1 = std::size_t{1} << (n - 1 - targets[1]);
  for (std::size_t i = 0; i < amp.size(); ++i) {
    if ((i & s0) || (i & s1)) continue;
    std::array<cx, 4> in = {amp[i], amp[i | s1], amp[i | s0], amp[i | s0 | s1]};
    std::array<cx, 4> out{};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) out[r] += g.m[r * 4 + c] * in[c];
    amp[i] = out[0];
    amp[i | s1] = out[1];
    amp[i | s0] = out[2];
    amp[i | s0 | s1] = out[3];
  }
  return State(n, std::move(amp));
}

// Controlled-Z is symmetric and diagonal, so applications commute exactly.
inline State apply_cz(const State& psi, int a, int b) {
  psi.check_qubit(a);
  psi.check_qubit(b);
  if (a == b) throw error("controlled-Z needs two distinct qubits");
  std::vector<cx> amp = psi.amplitudes();
  for (std::size_t i = 0; i < amp.size(); ++i) {
    if (psi.bit(i, a) && psi.bit(i, b)) amp[i] = -amp[i];
  }
  return State(psi.num_qubits(), std::move(amp));
}

// Reorder qubits: result qubit i is source qubit perm[i].
inline State permute_qubits(const State& psi, const std::vector<int>& perm) {
  const int n = psi.num_qubits();
  if (static_cast<int>(perm.size()) != n) throw error("permutation size does not match register");
  std::vector<bool> seen(n, false);
  for (int q : perm) {
    psi.check_qubit(q);
    if (seen[q]) throw error("permutation repeats a qubit");
    seen[q] = true;
  }
  std::vector<cx> amp(psi.size());
  for (std::size_t i = 0; i < amp.size(); ++i) {
    std::size_t j = 0;
    for (int q = 0; q < n; ++q) j |= static_cast<std::size_t>(psi.bit(i, perm[q])) << (n - 1 - q);
    amp[j] = psi[i];
  }
  return State(n, std::move(amp));
}

inline State tensor(const State& a, const State& b) {
  State::check_qubit_count(a.num_qubits() + b.num_qubits());
  std::vector<cx> amp(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) amp[i * b.size() + j] = a[i] * b[j];
  return State(a.num_qubits() + b.num_qubits(), std::move(amp));
}

inline cx inner_product(const State& a, const State& b) {
  if (a.num_qubits() != b.num_qubits()) throw error("inner product needs equal register sizes");
  cx s(0.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// |<target|psi>|^2 for normalized inputs.
inline double fidelity(const State& psi, const State& target) {
  return std::norm(inner_product(target, psi));
}

// Equality up to a global phase.
inline bool approx_equal_up_to_phase(const State& a, const State& b, double tol = kAlgebraTol) {
  if (a.num_qubits() != b.num_qubits()) return false;
  return std::abs(inner_product(a, b)) >= 1.0 - tol;
}

inline bool approx_equal(const State& a, const State& b, double tol = kAlgebraTol) {
  if (a.num_qubits() != b.num_qubits()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

// A single-qubit measurement basis: computational {|0>,|1>}, equatorial
// B(phi), or an explicit orthonormal pair.
struct MeasurementBasis {
  // state_for(0) and state_for(1) are the two orthonormal basis vectors.
  std::array<cx, 2> states[2];

  static MeasurementBasis computational() {
    MeasurementBasis b;
    b.states[0] = {cx(1, 0), cx(0, 0)};
    b.states[1] = {cx(0, 0), cx(1, 0)};
    return b;
  }

  static MeasurementBasis equatorial(double phi) {
    const double s = 1.0 / std::sqrt(2.0);
    const cx e_plus = std::polar(s, phi / 2.0);
    const cx e_minus = std::polar(s, -phi / 2.0);
    MeasurementBasis b;
    b.states[0] = {e_plus, e_minus};
    b.states[1] = {e_plus, -e_minus};
    return b;
  }

  static MeasurementBasis from_states(std::array<cx, 2> zero, std::array<cx, 2> one) {
    auto dot = [](const std::array<cx, 2>& u, const std::array<cx, 2>& v) {
      return std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1];
    };
    if (std::abs(dot(zero, zero) - cx(1, 0)) > kAlgebraTol || std::abs(dot(one, one) - cx(1, 0)) > kAlgebraTol ||
        std::abs(dot(zero, one)) > kAlgebraTol) {
      throw error("measurement basis states must be orthonormal");
    }
    MeasurementBasis b;
    b.states[0] = zero;
    b.states[1] = one;
    return b;
  }
};

struct MeasurementResult {
  int outcome;         // 0 or 1
  double probability;  // Born probability of that outcome
  State post;          // remaining register, measured qubit removed
};

// Probability of each outcome without collapsing.
inline std::array<double, 2> outcome_probabilities(const State& psi, int q, const MeasurementBasis& basis) {
  psi.check_qubit(q);
  const int n = psi.num_qubits();
  const std::size_t stride = std::size_t{1} << (n - 1 - q);
  std::array<double, 2> p = {0.0, 0.0};
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (i & stride) continue;
    const cx a0 = psi[i];
    const cx a1 = psi[i | stride];
    for (int s = 0; s < 2; ++s) {
      const cx amp = std::conj(basis.states[s][0]) * a0 + std::conj(basis.states[s][1]) * a1;
      p[s] += std::norm(amp);
    }
  }
  return p;
}

// Project qubit q onto basis state `outcome`, renormalize, and drop the qubit.
inline MeasurementResult measure(const State& psi, int q, const MeasurementBasis& basis, int outcome) {
  psi.check_qubit(q);
  if (outcome != 0 && outcome != 1) throw error("outcome must be 0 or 1");
  const int n = psi.num_qubits();
  const std::size_t stride = std::size_t{1} << (n - 1 - q);

  std::vector<cx> reduced(psi.size() >> 1);
  double prob = 0.0;
  std::size_t w = 0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (i & stride) continue;
    const cx amp = std::conj(basis.states[outcome][0]) * psi[i] + std::conj(basis.states[outcome][1]) * psi[i | stride];
    prob += std::norm(amp);
    reduced[w++] = amp;
  }
  if (prob < kBranchCutoff) {
    throw impossible_branch_error("forced outcome " + std::to_string(outcome) + " on qubit " + std::to_string(q) +
                                  " has zero probability");
  }
  const double scale = 1.0 / std::sqrt(prob);
  for (cx& a : reduced) a *= scale;
  return MeasurementResult{outcome, prob, State(n - 1, std::move(reduced))};
}

// Sample an outcome with the supplied uniform draw in [0, 1).
inline MeasurementResult measure_random(const State& psi, int q, const MeasurementBasis& basis, double u) {
  const auto p = outcome_probabilities(psi, q, basis);
  const int s = u < p[0] ? 0 : 1;
  return measure(psi, q, basis, s);
}

}  // namespace oneway
