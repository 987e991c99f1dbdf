#pragma once

// Pauli words with a tracked phase, the algebra needed for stabilizer
// bookkeeping, and expectation values on dense states.

#include <cstddef>
#include <string>
#include <vector>

#include "oneway/core.hpp"
#include "oneway/state.hpp"

namespace oneway {

enum class Pauli : int { I = 0, X = 1, Y = 2, Z = 3 };

inline char pauli_letter(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

inline Pauli pauli_from_letter(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw error(std::string("unknown Pauli letter '") + c + "'");
  }
}

// Signed tensor product of single-qubit Paulis. `phase_power` counts factors
// of i, so the overall prefactor is i^phase_power; stabilizer elements always
// end up with a real prefactor of +-1.
class PauliString {
 public:
  PauliString() = default;

  PauliString(std::vector<Pauli> letters, int phase_power = 0)
      : letters_(std::move(letters)), phase_(((phase_power % 4) + 4) % 4) {}

  // "XZYI" or "-XZYI" or "+iXZ"; sign prefix then letters.
  static PauliString parse(const std::string& text) {
    std::size_t pos = 0;
    int phase = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      if (text[pos] == '-') phase = 2;
      ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
      phase += 1;
      ++pos;
    }
    std::vector<Pauli> letters;
    for (; pos < text.size(); ++pos) letters.push_back(pauli_from_letter(text[pos]));
    return PauliString(std::move(letters), phase);
  }

  static PauliString identity(int n) { return PauliString(std::vector<Pauli>(n, Pauli::I)); }

  int num_qubits() const { return static_cast<int>(letters_.size()); }
  const std::vector<Pauli>& letters() const { return letters_; }
  Pauli letter(int q) const { return letters_.at(q); }
  int phase_power() const { return phase_; }

  bool phase_is_real() const { return phase_ % 2 == 0; }

  // +1 or -1; only meaningful for real phases.
  int sign() const {
    if (!phase_is_real()) throw error("Pauli string has an imaginary prefactor");
    return phase_ == 0 ? 1 : -1;
  }

  cx prefactor() const {
    static const cx table[4] = {cx(1, 0), cx(0, 1), cx(-1, 0), cx(0, -1)};
    return table[phase_];
  }

  PauliString operator*(const PauliString& other) const {
    if (letters_.size() != other.letters_.size()) throw error("Pauli product needs equal lengths");
    // i-phase of a*b per letter pair; row = left, column = right.
    static const int phase_table[4][4] = {
        {0, 0, 0, 0},  // I*
        {0, 0, 1, 3},  // X*: XY=iZ, XZ=-iY
        {0, 3, 0, 1},  // Y*: YX=-iZ, YZ=iX
        {0, 1, 3, 0},  // Z*: ZX=iY, ZY=-iX
    };
    std::vector<Pauli> letters(letters_.size());
    int phase = phase_ + other.phase_;
    for (std::size_t q = 0; q < letters_.size(); ++q) {
      const int a = static_cast<int>(letters_[q]);
      const int b = static_cast<int>(other.letters_[q]);
      letters[q] = static_cast<Pauli>(a ^ b);
      phase += phase_table[a][b];
    }
    return PauliString(std::move(letters), phase);
  }

  bool operator==(const PauliString& other) const {
    return phase_ == other.phase_ && letters_ == other.letters_;
  }
  bool operator!=(const PauliString& other) const { return !(*this == other); }

  bool same_letters(const PauliString& other) const { return letters_ == other.letters_; }

  std::string str() const {
    std::string out;
    switch (phase_) {
      case 0: out = "+"; break;
      case 1: out = "+i"; break;
      case 2: out = "-"; break;
      case 3: out = "-i"; break;
    }
    for (Pauli p : letters_) out += pauli_letter(p);
    return out;
  }

  std::string word() const {
    std::string out;
    for (Pauli p : letters_) out += pauli_letter(p);
    return out;
  }

 private:
  std::vector<Pauli> letters_;
  int phase_ = 0;
};

// (prefactor * P)|psi>, applied letter by letter.
inline State apply_pauli(const PauliString& pauli, const State& psi) {
  if (pauli.num_qubits() != psi.num_qubits()) throw error("Pauli length does not match register");
  const int n = psi.num_qubits();
  std::vector<cx> amp = psi.amplitudes();
  for (int q = 0; q < n; ++q) {
    const std::size_t stride = std::size_t{1} << (n - 1 - q);
    switch (pauli.letter(q)) {
      case Pauli::I:
        break;
      case Pauli::X:
        for (std::size_t i = 0; i < amp.size(); ++i) {
          if (i & stride) continue;
          std::swap(amp[i], amp[i | stride]);
        }
        break;
      case Pauli::Y:
        for (std::size_t i = 0; i < amp.size(); ++i) {
          if (i & stride) continue;
          const cx a0 = amp[i];
          amp[i] = cx(0, -1) * amp[i | stride];
          amp[i | stride] = cx(0, 1) * a0;
        }
        break;
      case Pauli::Z:
        for (std::size_t i = 0; i < amp.size(); ++i) {
          if (i & stride) amp[i] = -amp[i];
        }
        break;
    }
  }
  if (pauli.phase_power() != 0) {
    const cx f = pauli.prefactor();
    for (cx& a : amp) a *= f;
  }
  return State(n, std::move(amp));
}

// <psi| sign * letters |psi>; real for real prefactors.
inline double pauli_expectation(const State& psi, const PauliString& pauli) {
  const cx value = inner_product(psi, apply_pauli(pauli, psi));
  if (std::abs(value.imag()) > kAlgebraTol) throw error("Pauli expectation came out complex");
  return value.real();
}

}  // namespace oneway
