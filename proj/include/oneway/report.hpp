#pragma once

// Report assembly for the command-line tool: run reports (JSON or CSV),
// the witness table (CSV), and the noise calibration sweep. All numeric
// output is rounded to six decimal places so identical inputs produce
// byte-identical reports.

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "oneway/density.hpp"
#include "oneway/lab.hpp"
#include "oneway/pattern.hpp"
#include "oneway/pattern_io.hpp"

namespace oneway {

inline std::string format6(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return std::string(buffer);
}

inline double round6(double value) { return std::round(value * 1e6) / 1e6; }

// ---------------------------------------------------------------------------
// Run summaries.

// Probability of each corrected classical outcome. Patterns with relabel
// expressions aggregate branch probabilities; patterns with quantum outputs
// fold the computational readout distribution of the output register, with
// sigma_x byproducts absorbed as bit flips; bare patterns key on the raw
// step outcomes.
inline std::map<std::string, double> success_probabilities(const MeasurementPattern& pattern,
                                                           const std::vector<BranchResult>& branches) {
  std::map<std::string, double> out;
  for (const BranchResult& branch : branches) {
    if (!pattern.relabel.empty()) {
      out[bits_to_string(branch.corrected)] += branch.record.probability;
    } else if (!pattern.outputs.empty()) {
      const State& psi = branch.output;
      const int m = psi.num_qubits();
      for (std::size_t i = 0; i < psi.size(); ++i) {
        const double p = std::norm(psi[i]);
        if (p < kBranchCutoff) continue;
        std::vector<int> bits(m);
        for (int q = 0; q < m; ++q) {
          bits[q] = psi.bit(i, q);
          if (!branch.byproduct_bits.empty()) bits[q] ^= branch.byproduct_bits[q].first;
        }
        out[bits_to_string(bits)] += branch.record.probability * p;
      }
    } else {
      std::string key;
      for (const Step& step : pattern.steps) key += static_cast<char>('0' + branch.record.bit(outcome_label(step.site)));
      out[key] += branch.record.probability;
    }
  }
  return out;
}

// Worst overlap between byproduct-corrected branch outputs; 1 means the
// pattern is deterministic after feed-forward.
inline double determinism_fidelity(const std::vector<BranchResult>& branches) {
  if (branches.empty()) throw error("no branches to compare");
  const State reference = correct_byproducts(branches.front());
  double worst = 1.0;
  for (const BranchResult& branch : branches) {
    worst = std::min(worst, fidelity(correct_byproducts(branch), reference));
  }
  return worst;
}

namespace detail {

inline ordered_json branch_to_json(const MeasurementPattern& pattern, const BranchResult& branch,
                                   bool include_state) {
  ordered_json jb;
  jb["outcomes"] = ordered_json::object();
  for (const Step& step : pattern.steps) {
    const std::string label = outcome_label(step.site);
    jb["outcomes"][label] = branch.record.bit(label);
  }
  jb["probability"] = round6(branch.record.probability);
  if (!pattern.byproducts.empty()) {
    jb["byproducts"] = ordered_json::object();
    for (std::size_t i = 0; i < pattern.byproducts.size(); ++i) {
      jb["byproducts"][pattern.byproducts[i].first] = {{"x", branch.byproduct_bits[i].first},
                                                       {"z", branch.byproduct_bits[i].second}};
    }
  }
  if (!pattern.relabel.empty()) {
    jb["corrected"] = ordered_json::object();
    for (std::size_t i = 0; i < pattern.relabel.size(); ++i) {
      jb["corrected"][pattern.relabel[i].first] = branch.corrected[i];
    }
  }
  if (include_state && !pattern.outputs.empty()) {
    ordered_json amps = ordered_json::array();
    for (const cx& a : branch.output.amplitudes()) amps.push_back({a.real(), a.imag()});
    jb["output_amplitudes"] = std::move(amps);
  }
  return jb;
}

}  // namespace detail

inline ordered_json run_report_json(const MeasurementPattern& pattern, const std::vector<BranchResult>& branches,
                                    const RunOptions& options) {
  ordered_json doc;
  doc["pattern"] = pattern.name;
  switch (options.mode) {
    case RunMode::exhaustive: doc["mode"] = "exhaustive"; break;
    case RunMode::sample:
      doc["mode"] = "sample";
      doc["seed"] = options.seed;
      break;
    case RunMode::forced:
      doc["mode"] = "forced";
      doc["forced"] = bits_to_string(options.forced);
      break;
  }
  doc["branches"] = ordered_json::array();
  for (const BranchResult& branch : branches) {
    doc["branches"].push_back(detail::branch_to_json(pattern, branch, true));
  }
  ordered_json summary;
  for (const auto& [bits, p] : success_probabilities(pattern, branches)) {
    summary["success_probability"][bits] = round6(p);
  }
  if (!pattern.outputs.empty() && !pattern.byproducts.empty() && options.mode == RunMode::exhaustive) {
    summary["determinism_fidelity"] = round6(determinism_fidelity(branches));
  }
  doc["summary"] = std::move(summary);
  return doc;
}

inline std::string run_report_csv(const MeasurementPattern& pattern, const std::vector<BranchResult>& branches) {
  std::string out = "branch,outcomes,probability,corrected\n";
  for (std::size_t b = 0; b < branches.size(); ++b) {
    std::string outcomes;
    for (const Step& step : pattern.steps) {
      outcomes += static_cast<char>('0' + branches[b].record.bit(outcome_label(step.site)));
    }
    out += std::to_string(b) + "," + outcomes + "," + format6(branches[b].record.probability) + "," +
           bits_to_string(branches[b].corrected) + "\n";
  }
  for (const auto& [bits, p] : success_probabilities(pattern, branches)) {
    out += "success," + bits + "," + format6(p) + ",\n";
  }
  return out;
}

inline ordered_json sample_report_json(const MeasurementPattern& pattern,
                                       const std::map<std::string, std::uint64_t>& counts, std::uint64_t shots,
                                       std::uint64_t seed) {
  ordered_json doc;
  doc["pattern"] = pattern.name;
  doc["mode"] = "sample";
  doc["seed"] = seed;
  doc["shots"] = shots;
  doc["counts"] = ordered_json::object();
  doc["frequencies"] = ordered_json::object();
  for (const auto& [bits, count] : counts) {
    doc["counts"][bits] = count;
    doc["frequencies"][bits] = round6(static_cast<double>(count) / static_cast<double>(shots));
  }
  return doc;
}

inline std::string sample_report_csv(const std::map<std::string, std::uint64_t>& counts, std::uint64_t shots) {
  std::string out = "outcome,count,frequency\n";
  for (const auto& [bits, count] : counts) {
    out += bits + "," + std::to_string(count) + "," +
           format6(static_cast<double>(count) / static_cast<double>(shots)) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Witness table: one row per stabilizer, fidelity footer.

inline std::string witness_csv(const WitnessReport& report) {
  std::string out = "k,pauli_word,sign,expectation\n";
  for (const WitnessValue& v : report.values) {
    out += std::to_string(v.index) + "," + v.word + "," + (v.sign < 0 ? "-1" : "+1") + "," + format6(v.expectation) +
           "\n";
  }
  out += "fidelity,,," + format6(report.fidelity) + "\n";
  return out;
}

// Noise models selectable from the command line: "none", "depolarizing:p",
// "dephasing:p".
struct NoiseSpec {
  std::string family = "none";
  double p = 0.0;

  static NoiseSpec parse(const std::string& text) {
    NoiseSpec spec;
    const std::size_t colon = text.find(':');
    spec.family = text.substr(0, colon);
    if (spec.family == "none") {
      if (colon != std::string::npos) throw error("noise model 'none' takes no parameter");
      return spec;
    }
    if (spec.family != "depolarizing" && spec.family != "dephasing") {
      throw error("unknown noise model '" + spec.family + "'");
    }
    if (colon == std::string::npos) throw error("noise model '" + spec.family + "' needs a probability, e.g. " +
                                                spec.family + ":0.05");
    try {
      spec.p = std::stod(text.substr(colon + 1));
    } catch (const std::exception&) {
      throw error("cannot parse noise probability in '" + text + "'");
    }
    return spec;
  }

  NoiseChannel channel() const {
    if (family == "depolarizing") return NoiseChannel::depolarizing(p);
    if (family == "dephasing") return NoiseChannel::dephasing(p);
    throw error("noise model 'none' has no channel");
  }

  NoiseSpec with_probability(double probability) const {
    NoiseSpec spec = *this;
    spec.p = probability;
    return spec;
  }
};

inline WitnessReport witness_under_noise(const NoiseSpec& noise) {
  if (noise.family == "none") return c4_witness(make_c4());
  return c4_witness(noisy_c4(noise.channel()));
}

struct CalibrationResult {
  double p;         // smallest scanned probability reaching the target
  double fidelity;  // witness fidelity at that probability
};

// Scan the channel probability upward in steps of 0.001 until the witness
// fidelity drops to the target.
inline CalibrationResult calibrate_noise(const NoiseSpec& noise, double target_fidelity) {
  if (noise.family == "none") throw error("calibration needs a noise model");
  for (int k = 0; k <= 1000; ++k) {
    const double p = static_cast<double>(k) / 1000.0;
    const double f = witness_under_noise(noise.with_probability(p)).fidelity;
    if (f <= target_fidelity) return {p, f};
  }
  throw error("target fidelity not reached anywhere in the scan");
}

}  // namespace oneway
