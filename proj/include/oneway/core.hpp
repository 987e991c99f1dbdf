#pragma once

// Shared basics: complex alias, tolerances, error types, deterministic RNG.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace oneway {

using cx = std::complex<double>;

inline constexpr double kAlgebraTol = 1e-9;   // algebraic identities in double precision
inline constexpr double kExactTol = 1e-12;    // checks reachable by exact arithmetic
inline constexpr double kBranchCutoff = 1e-12;
inline constexpr int kMaxQubits = 10;
inline constexpr int kMaxStabilizerSites = 6;   // full 2^n group materialized up to here
inline constexpr std::size_t kMaxBranches = 1u << 16;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Register or group size beyond what the dense kernels support.
struct capacity_error : error {
  using error::error;
};

// A forced measurement outcome whose Born probability is (numerically) zero.
struct impossible_branch_error : error {
  using error::error;
};

// Invalid document; `locus` identifies the offending line or field.
struct parse_error : error {
  std::string locus;
  parse_error(const std::string& what, std::string where)
      : error(what + " (at " + where + ")"), locus(std::move(where)) {}
};

// Counter-based deterministic RNG. Each consumer derives an independent
// stream from (seed, counter), so shots can be evaluated in any order and
// still reproduce the sequential result bit for bit.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of mantissa.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  static SplitMix64 for_counter(std::uint64_t seed, std::uint64_t counter) {
    SplitMix64 mix(seed ^ (0x2545f4914f6cdd1dULL * (counter + 1)));
    mix.next_u64();
    return mix;
  }

 private:
  std::uint64_t state_;
};

}  // namespace oneway
