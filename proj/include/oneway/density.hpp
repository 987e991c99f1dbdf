#pragma once

// Density matrices for the same small registers, single-qubit Kraus channels
// (depolarizing and dephasing), partial trace, and mixed-state expectations.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "oneway/core.hpp"
#include "oneway/pauli.hpp"
#include "oneway/state.hpp"

namespace oneway {

class DensityMatrix {
 public:
  DensityMatrix() : n_(0), m_(1, cx(1, 0)) {}

  DensityMatrix(int n, std::vector<cx> entries) : n_(n), m_(std::move(entries)) {
    State::check_qubit_count(n);
    if (m_.size() != dim() * dim()) throw error("density matrix has wrong shape");
  }

  static DensityMatrix from_state(const State& psi) {
    const std::size_t d = psi.size();
    std::vector<cx> m(d * d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) m[r * d + c] = psi[r] * std::conj(psi[c]);
    return DensityMatrix(psi.num_qubits(), std::move(m));
  }

  static DensityMatrix maximally_mixed(int n) {
    State::check_qubit_count(n);
    const std::size_t d = State::dim(n);
    std::vector<cx> m(d * d, cx(0, 0));
    for (std::size_t i = 0; i < d; ++i) m[i * d + i] = cx(1.0 / static_cast<double>(d), 0.0);
    return DensityMatrix(n, std::move(m));
  }

  int num_qubits() const { return n_; }
  std::size_t dim() const { return State::dim(n_); }
  const std::vector<cx>& entries() const { return m_; }
  cx at(std::size_t r, std::size_t c) const { return m_[r * dim() + c]; }

  cx trace() const {
    cx t(0, 0);
    for (std::size_t i = 0; i < dim(); ++i) t += at(i, i);
    return t;
  }

  double hermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim(); ++r)
      for (std::size_t c = 0; c < dim(); ++c) worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
    return worst;
  }

 private:
  int n_;
  std::vector<cx> m_;
};

// Trace out every qubit not listed in `keep`; `keep` gives the qubit order of
// the reduced register.
inline DensityMatrix reduce(const DensityMatrix& rho, const std::vector<int>& keep) {
  const int n = rho.num_qubits();
  std::vector<bool> kept(n, false);
  for (int q : keep) {
    if (q < 0 || q >= n) throw error("reduce: qubit index out of range");
    if (kept[q]) throw error("reduce: qubit listed twice");
    kept[q] = true;
  }
  std::vector<int> traced;
  for (int q = 0; q < n; ++q)
    if (!kept[q]) traced.push_back(q);

  const int nk = static_cast<int>(keep.size());
  const std::size_t dk = State::dim(nk);
  const std::size_t dt = State::dim(static_cast<int>(traced.size()));
  auto full_index = [&](std::size_t keep_bits, std::size_t traced_bits) {
    std::size_t idx = 0;
    for (int i = 0; i < nk; ++i)
      if (keep_bits & (std::size_t{1} << (nk - 1 - i))) idx |= std::size_t{1} << (n - 1 - keep[i]);
    for (std::size_t i = 0; i < traced.size(); ++i)
      if (traced_bits & (std::size_t{1} << (traced.size() - 1 - i))) idx |= std::size_t{1} << (n - 1 - traced[i]);
    return idx;
  };

  std::vector<cx> out(dk * dk, cx(0, 0));
  for (std::size_t r = 0; r < dk; ++r)
    for (std::size_t c = 0; c < dk; ++c)
      for (std::size_t t = 0; t < dt; ++t) out[r * dk + c] += rho.at(full_index(r, t), full_index(c, t));
  return DensityMatrix(nk, std::move(out));
}

inline DensityMatrix reduce(const State& psi, const std::vector<int>& keep) {
  return reduce(DensityMatrix::from_state(psi), keep);
}

// Single-qubit Kraus channel. The factory methods build the two channels the
// toolkit needs; custom Kraus sets are validated for trace preservation.
class NoiseChannel {
 public:
  using Kraus = std::array<cx, 4>;  // row-major 2x2

  static NoiseChannel depolarizing(double p) {
    check_probability(p);
    // rho -> (1-p) rho + p * I/2, via the standard four-operator form.
    NoiseChannel ch;
    ch.name_ = "depolarizing";
    ch.p_ = p;
    const double a = std::sqrt(1.0 - 3.0 * p / 4.0);
    const double b = std::sqrt(p / 4.0);
    ch.kraus_.push_back({cx(a, 0), cx(0, 0), cx(0, 0), cx(a, 0)});
    ch.kraus_.push_back({cx(0, 0), cx(b, 0), cx(b, 0), cx(0, 0)});
    ch.kraus_.push_back({cx(0, 0), cx(0, -b), cx(0, b), cx(0, 0)});
    ch.kraus_.push_back({cx(b, 0), cx(0, 0), cx(0, 0), cx(-b, 0)});
    return ch;
  }

  static NoiseChannel dephasing(double p) {
    check_probability(p);
    // rho -> (1-p) rho + p Z rho Z; kills off-diagonals by (1-2p).
    NoiseChannel ch;
    ch.name_ = "dephasing";
    ch.p_ = p;
    const double a = std::sqrt(1.0 - p);
    const double b = std::sqrt(p);
    ch.kraus_.push_back({cx(a, 0), cx(0, 0), cx(0, 0), cx(a, 0)});
    ch.kraus_.push_back({cx(b, 0), cx(0, 0), cx(0, 0), cx(-b, 0)});
    return ch;
  }

  static NoiseChannel from_kraus(std::vector<Kraus> ops, std::string name = "custom") {
    NoiseChannel ch;
    ch.name_ = std::move(name);
    ch.kraus_ = std::move(ops);
    ch.validate();
    return ch;
  }

  const std::vector<Kraus>& kraus() const { return kraus_; }
  const std::string& name() const { return name_; }
  double probability() const { return p_; }

  // sum_k K_k^dag K_k must be the identity.
  void validate() const {
    cx sum[4] = {cx(0, 0), cx(0, 0), cx(0, 0), cx(0, 0)};
    for (const Kraus& k : kraus_) {
      sum[0] += std::conj(k[0]) * k[0] + std::conj(k[2]) * k[2];
      sum[1] += std::conj(k[0]) * k[1] + std::conj(k[2]) * k[3];
      sum[2] += std::conj(k[1]) * k[0] + std::conj(k[3]) * k[2];
      sum[3] += std::conj(k[1]) * k[1] + std::conj(k[3]) * k[3];
    }
    if (std::abs(sum[0] - cx(1, 0)) > kAlgebraTol || std::abs(sum[3] - cx(1, 0)) > kAlgebraTol ||
        std::abs(sum[1]) > kAlgebraTol || std::abs(sum[2]) > kAlgebraTol) {
      throw error("Kraus operators do not preserve trace");
    }
  }

 private:
  static void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw error("channel probability must lie in [0, 1]");
  }

  std::string name_;
  double p_ = 0.0;
  std::vector<Kraus> kraus_;
};

// rho -> sum_k (K_k on qubit q) rho (K_k on qubit q)^dag.
inline DensityMatrix apply_channel(const DensityMatrix& rho, const NoiseChannel& ch, int q) {
  const int n = rho.num_qubits();
  if (q < 0 || q >= n) throw error("channel target out of range");
  const std::size_t d = rho.dim();
  const std::size_t stride = std::size_t{1} << (n - 1 - q);

  std::vector<cx> out(d * d, cx(0, 0));
  for (const NoiseChannel::Kraus& k : ch.kraus()) {
    // left = K rho; then out += left K^dag.
    std::vector<cx> left(rho.entries());
    for (std::size_t c = 0; c < d; ++c) {
      for (std::size_t r = 0; r < d; ++r) {
        if (r & stride) continue;
        const cx a0 = left[r * d + c];
        const cx a1 = left[(r | stride) * d + c];
        left[r * d + c] = k[0] * a0 + k[1] * a1;
        left[(r | stride) * d + c] = k[2] * a0 + k[3] * a1;
      }
    }
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        if (c & stride) continue;
        const cx a0 = left[r * d + c];
        const cx a1 = left[r * d + (c | stride)];
        out[r * d + c] += a0 * std::conj(k[0]) + a1 * std::conj(k[1]);
        out[r * d + (c | stride)] += a0 * std::conj(k[2]) + a1 * std::conj(k[3]);
      }
    }
  }
  return DensityMatrix(n, std::move(out));
}

// tr(rho * prefactor * letters).
inline double pauli_expectation(const DensityMatrix& rho, const PauliString& pauli) {
  if (pauli.num_qubits() != rho.num_qubits()) throw error("Pauli length does not match register");
  const int n = rho.num_qubits();
  const std::size_t d = rho.dim();
  // tr(rho P) = sum_r <r| rho P |r>; P maps |r> to phase * |r'>.
  cx value(0, 0);
  for (std::size_t r = 0; r < d; ++r) {
    std::size_t col = r;
    cx phase = pauli.prefactor();
    for (int q = 0; q < n; ++q) {
      const std::size_t mask = std::size_t{1} << (n - 1 - q);
      const int bit = (r & mask) ? 1 : 0;
      switch (pauli.letter(q)) {
        case Pauli::I:
          break;
        case Pauli::X:
          col ^= mask;
          break;
        case Pauli::Y:
          col ^= mask;
          phase *= bit ? cx(0, -1) : cx(0, 1);  // P|col'> component feeding |r>
          break;
        case Pauli::Z:
          if (bit) phase = -phase;
          break;
      }
    }
    value += rho.at(r, col) * phase;
  }
  if (std::abs(value.imag()) > kAlgebraTol) throw error("Pauli expectation came out complex");
  return value.real();
}

// <target| rho |target> for a pure target.
inline double fidelity(const DensityMatrix& rho, const State& target) {
  if (rho.num_qubits() != target.num_qubits()) throw error("fidelity needs equal register sizes");
  const std::size_t d = rho.dim();
  cx value(0, 0);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) value += std::conj(target[r]) * rho.at(r, c) * target[c];
  if (value.real() < -kAlgebraTol) throw error("fidelity came out negative");
  return std::max(0.0, value.real());
}

}  // namespace oneway
