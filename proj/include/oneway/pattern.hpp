#pragma once

// Measurement patterns and their execution. A pattern names a graph, optional
// non-default site preparations, an ordered list of single-site measurements
// with outcome-dependent angles, the sites kept as quantum outputs, and the
// classical post-processing (byproduct operators and readout relabeling).
//
// Outcome labels are "s<site>", e.g. "s2" for the measurement on site 2.
// An adaptive angle evaluates to
//   (-1)^(xor of sign_deps outcomes) * base + sum of offsets whose outcome is 1.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "oneway/core.hpp"
#include "oneway/graph.hpp"
#include "oneway/state.hpp"

namespace oneway {

struct AngleExpression {
  double base = 0.0;
  std::vector<std::string> sign_deps;
  std::vector<std::pair<std::string, double>> offsets;

  bool operator==(const AngleExpression& o) const {
    return base == o.base && sign_deps == o.sign_deps && offsets == o.offsets;
  }
};

struct Step {
  int site = 0;
  bool computational = false;  // true: {|0>,|1>}; false: equatorial B(angle)
  AngleExpression angle;

  bool operator==(const Step& o) const {
    return site == o.site && computational == o.computational && (computational || angle == o.angle);
  }
};

struct ByproductExpr {
  std::vector<std::string> x;  // outcomes whose xor gives the sigma_x power
  std::vector<std::string> z;

  bool operator==(const ByproductExpr& o) const { return x == o.x && z == o.z; }
};

inline std::string outcome_label(int site) { return "s" + std::to_string(site); }

struct MeasurementPattern {
  std::string name;
  Graph graph;
  std::map<int, char> inputs;  // site -> '+', '-', '0', '1'; '+' when absent
  std::vector<Step> steps;
  std::vector<int> outputs;  // sites kept as quantum outputs, in logical order
  // One entry per logical output, same order as `outputs`.
  std::vector<std::pair<std::string, ByproductExpr>> byproducts;
  // Classical outputs: each entry is a name and the outcome labels whose xor
  // forms the corrected bit. The first label is conventionally the raw readout.
  std::vector<std::pair<std::string, std::vector<std::string>>> relabel;

  bool operator==(const MeasurementPattern& o) const {
    return name == o.name && graph == o.graph && inputs == o.inputs && steps == o.steps && outputs == o.outputs &&
           byproducts == o.byproducts && relabel == o.relabel;
  }

  int step_position(int site) const {
    for (std::size_t i = 0; i < steps.size(); ++i)
      if (steps[i].site == site) return static_cast<int>(i);
    return -1;
  }

  void validate() const {
    const int n = graph.num_sites();
    std::vector<int> role(n, 0);  // 0 unused, 1 measured, 2 output
    for (const Step& s : steps) {
      graph.check_site(s.site);
      if (role[s.site] != 0) throw error("site " + std::to_string(s.site) + " measured twice");
      role[s.site] = 1;
    }
    for (int site : outputs) {
      graph.check_site(site);
      if (role[site] == 1) throw error("output site " + std::to_string(site) + " is also measured");
      if (role[site] == 2) throw error("output site " + std::to_string(site) + " listed twice");
      role[site] = 2;
    }
    for (int site = 0; site < n; ++site) {
      if (role[site] == 0) throw error("site " + std::to_string(site) + " is neither measured nor an output");
    }
    for (auto [site, prep] : inputs) {
      graph.check_site(site);
      single_site_state(prep);  // throws on an unknown preparation
    }

    // Angle dependencies must refer to strictly earlier steps.
    for (std::size_t i = 0; i < steps.size(); ++i) {
      if (steps[i].computational) continue;
      auto check_dep = [&](const std::string& label) {
        const int pos = position_of_label(label);
        if (pos < 0) throw error("step on site " + std::to_string(steps[i].site) + " depends on unknown outcome '" +
                                 label + "'");
        if (pos >= static_cast<int>(i)) {
          throw error("step on site " + std::to_string(steps[i].site) + " depends on the later outcome '" + label +
                      "'");
        }
      };
      for (const std::string& label : steps[i].angle.sign_deps) check_dep(label);
      for (const auto& [label, unused] : steps[i].angle.offsets) check_dep(label);
    }

    if (!byproducts.empty() && byproducts.size() != outputs.size()) {
      throw error("byproducts must have one entry per output");
    }
    auto check_label = [&](const std::string& label, const char* what) {
      if (position_of_label(label) < 0) throw error(std::string(what) + " references unknown outcome '" + label + "'");
    };
    for (const auto& [logical, expr] : byproducts) {
      for (const std::string& label : expr.x) check_label(label, "byproduct");
      for (const std::string& label : expr.z) check_label(label, "byproduct");
    }
    for (const auto& [logical, labels] : relabel) {
      for (const std::string& label : labels) check_label(label, "relabel");
    }
  }

 private:
  int position_of_label(const std::string& label) const {
    for (std::size_t i = 0; i < steps.size(); ++i)
      if (outcome_label(steps[i].site) == label) return static_cast<int>(i);
    return -1;
  }
};

struct OutcomeRecord {
  std::map<std::string, int> bits;  // label -> outcome
  double probability = 1.0;

  int bit(const std::string& label) const {
    auto it = bits.find(label);
    if (it == bits.end()) throw error("unknown outcome label '" + label + "'");
    return it->second;
  }

  int xor_of(const std::vector<std::string>& labels) const {
    int v = 0;
    for (const std::string& label : labels) v ^= bit(label);
    return v;
  }
};

struct BranchResult {
  OutcomeRecord record;
  State output;                                     // on `outputs`, logical order
  std::vector<std::pair<int, int>> byproduct_bits;  // (x, z) per logical output
  std::vector<int> corrected;                       // relabeled classical bits
};

enum class RunMode { exhaustive, sample, forced };

struct RunOptions {
  RunMode mode = RunMode::exhaustive;
  std::uint64_t seed = 0;
  std::vector<int> forced;  // one bit per step
};

inline double resolve_angle(const AngleExpression& expr, const OutcomeRecord& record) {
  double angle = record.xor_of(expr.sign_deps) ? -expr.base : expr.base;
  for (const auto& [label, offset] : expr.offsets) {
    if (record.bit(label)) angle += offset;
  }
  return angle;
}

namespace detail {

struct PatternExecutor {
  const MeasurementPattern& pattern;
  std::vector<BranchResult> results;

  explicit PatternExecutor(const MeasurementPattern& p) : pattern(p) {}

  State initial_state() const { return build_cluster(pattern.graph, pattern.inputs); }

  // Register position of each still-present site given the set of removed ones.
  static int position(const std::vector<int>& removed_sites, int site) {
    int pos = site;
    for (int r : removed_sites) {
      if (r == site) throw error("site already removed");
      if (r < site) --pos;
    }
    return pos;
  }

  MeasurementBasis basis_for(const Step& step, const OutcomeRecord& record) const {
    if (step.computational) return MeasurementBasis::computational();
    return MeasurementBasis::equatorial(resolve_angle(step.angle, record));
  }

  void finish(State psi, OutcomeRecord record, std::vector<int> removed) {
    std::vector<int> perm(pattern.outputs.size());
    for (std::size_t i = 0; i < pattern.outputs.size(); ++i) perm[i] = position(removed, pattern.outputs[i]);
    BranchResult branch;
    branch.output = permute_qubits(psi, perm);
    for (const auto& [logical, expr] : pattern.byproducts) {
      branch.byproduct_bits.emplace_back(record.xor_of(expr.x), record.xor_of(expr.z));
    }
    for (const auto& [logical, labels] : pattern.relabel) branch.corrected.push_back(record.xor_of(labels));
    branch.record = std::move(record);
    results.push_back(std::move(branch));
  }

  void run_exhaustive(const State& psi, std::size_t next_step, OutcomeRecord record, std::vector<int> removed) {
    if (next_step == pattern.steps.size()) {
      finish(psi, std::move(record), std::move(removed));
      return;
    }
    const Step& step = pattern.steps[next_step];
    const MeasurementBasis basis = basis_for(step, record);
    const int pos = position(removed, step.site);
    const auto probs = outcome_probabilities(psi, pos, basis);
    for (int s = 0; s < 2; ++s) {
      if (probs[s] < kBranchCutoff) continue;
      MeasurementResult m = measure(psi, pos, basis, s);
      OutcomeRecord next = record;
      next.bits[outcome_label(step.site)] = s;
      next.probability = record.probability * m.probability;
      std::vector<int> next_removed = removed;
      next_removed.push_back(step.site);
      run_exhaustive(m.post, next_step + 1, std::move(next), std::move(next_removed));
    }
  }

  // Single trajectory; `draw` supplies a uniform [0,1) number per step, or is
  // ignored in forced mode.
  template <typename DrawFn>
  void run_single(DrawFn&& draw, const std::vector<int>* forced) {
    State psi = initial_state();
    OutcomeRecord record;
    std::vector<int> removed;
    for (std::size_t i = 0; i < pattern.steps.size(); ++i) {
      const Step& step = pattern.steps[i];
      const MeasurementBasis basis = basis_for(step, record);
      const int pos = position(removed, step.site);
      MeasurementResult m = forced ? measure(psi, pos, basis, (*forced)[i]) : measure_random(psi, pos, basis, draw());
      record.bits[outcome_label(step.site)] = m.outcome;
      record.probability *= m.probability;
      removed.push_back(step.site);
      psi = std::move(m.post);
    }
    finish(std::move(psi), std::move(record), std::move(removed));
  }
};

}  // namespace detail

// Execute a pattern. Exhaustive mode returns every branch with probability
// above the cutoff, outcomes enumerated 0-first; sample and forced modes
// return exactly one branch.
inline std::vector<BranchResult> run_pattern(const MeasurementPattern& pattern, const RunOptions& options = {}) {
  pattern.validate();
  detail::PatternExecutor exec(pattern);
  switch (options.mode) {
    case RunMode::exhaustive: {
      if (pattern.steps.size() > 16) {
        throw capacity_error("exhaustive mode is limited to 16 measurement steps");
      }
      OutcomeRecord record;
      exec.run_exhaustive(exec.initial_state(), 0, std::move(record), {});
      break;
    }
    case RunMode::sample: {
      SplitMix64 rng = SplitMix64::for_counter(options.seed, 0);
      exec.run_single([&rng] { return rng.next_double(); }, nullptr);
      break;
    }
    case RunMode::forced: {
      if (options.forced.size() != pattern.steps.size()) {
        throw error("forced mode needs one outcome bit per step");
      }
      for (int b : options.forced)
        if (b != 0 && b != 1) throw error("forced outcomes must be 0 or 1");
      exec.run_single([] { return 0.0; }, &options.forced);
      break;
    }
  }
  return std::move(exec.results);
}

// Undo the accumulated Pauli byproducts on a logical register: for each
// logical qubit apply sigma_x^x then sigma_z^z. The result matches the
// byproduct-free output up to a global phase.
inline State correct_byproducts(const State& output, const std::vector<std::pair<int, int>>& byproduct_bits) {
  if (static_cast<int>(byproduct_bits.size()) != output.num_qubits()) {
    throw error("need one (x, z) byproduct pair per output qubit");
  }
  State psi = output;
  for (std::size_t q = 0; q < byproduct_bits.size(); ++q) {
    const auto [x, z] = byproduct_bits[q];
    if ((x != 0 && x != 1) || (z != 0 && z != 1)) throw error("byproduct powers must be 0 or 1");
    if (x) psi = apply_gate(psi, gates::x(), {static_cast<int>(q)});
    if (z) psi = apply_gate(psi, gates::z(), {static_cast<int>(q)});
  }
  return psi;
}

inline State correct_byproducts(const BranchResult& branch) {
  return correct_byproducts(branch.output, branch.byproduct_bits);
}

// Flip raw readout bits by the xor of the listed outcomes; readout and
// expressions pair up positionally.
inline std::vector<int> relabel_readout(const std::vector<int>& readout,
                                        const std::vector<std::vector<std::string>>& expressions,
                                        const OutcomeRecord& record) {
  if (readout.size() != expressions.size()) throw error("need one relabel expression per readout bit");
  std::vector<int> corrected(readout.size());
  for (std::size_t i = 0; i < readout.size(); ++i) {
    if (readout[i] != 0 && readout[i] != 1) throw error("readout bits must be 0 or 1");
    corrected[i] = readout[i] ^ record.xor_of(expressions[i]);
  }
  return corrected;
}

inline std::string bits_to_string(const std::vector<int>& bits) {
  std::string out;
  for (int b : bits) out += static_cast<char>('0' + b);
  return out;
}

// Repeated single-shot execution. Each shot derives an independent RNG stream
// from (seed, shot index), so the histogram is reproducible and independent
// of evaluation order. Keys are the corrected classical bits when the pattern
// relabels; otherwise the computational readout of the output qubits with the
// sigma_x byproducts absorbed as bit flips; otherwise the raw step outcomes.
inline std::map<std::string, std::uint64_t> sample_shots(const MeasurementPattern& pattern, std::uint64_t shots,
                                                         std::uint64_t seed) {
  pattern.validate();
  std::map<std::string, std::uint64_t> counts;
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    SplitMix64 rng = SplitMix64::for_counter(seed, shot);
    detail::PatternExecutor exec(pattern);
    exec.run_single([&rng] { return rng.next_double(); }, nullptr);
    const BranchResult& branch = exec.results.front();

    std::string key;
    if (!pattern.relabel.empty()) {
      key = bits_to_string(branch.corrected);
    } else if (!pattern.outputs.empty()) {
      State psi = branch.output;
      std::vector<int> bits;
      for (std::size_t q = 0; q < pattern.outputs.size(); ++q) {
        MeasurementResult m = measure_random(psi, 0, MeasurementBasis::computational(), rng.next_double());
        int bit = m.outcome;
        if (!branch.byproduct_bits.empty()) bit ^= branch.byproduct_bits[q].first;
        bits.push_back(bit);
        psi = std::move(m.post);
      }
      key = bits_to_string(bits);
    } else {
      std::vector<int> bits;
      for (const Step& step : pattern.steps) bits.push_back(branch.record.bit(outcome_label(step.site)));
      key = bits_to_string(bits);
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace oneway
