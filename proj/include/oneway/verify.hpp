#pragma once

// Built-in consistency checks behind the `verify` subcommand: the encoding
// equivalences, the ideal witness, feed-forward determinism of every
// experiment pattern, and integrity of the shipped pattern files.

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "oneway/algorithms.hpp"
#include "oneway/lab.hpp"
#include "oneway/pattern.hpp"
#include "oneway/pattern_io.hpp"

namespace oneway {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;  // empty on success
};

namespace detail {

inline bool corrected_matches(const MeasurementPattern& pattern, const State& target, std::string& detail) {
  const auto branches = run_pattern(pattern, {});
  for (const BranchResult& branch : branches) {
    const State corrected = correct_byproducts(branch);
    if (!approx_equal_up_to_phase(corrected, target)) {
      detail = pattern.name + ": branch deviates from the corrected target";
      return false;
    }
  }
  return true;
}

using Builder = std::function<MeasurementPattern()>;

inline std::vector<std::pair<std::string, Builder>> shipped_builders() {
  return {
      {"rotation", [] { return rotation_pattern({0.0, std::numbers::pi / 2, InputState::plus}); }},
      {"cnot_h", [] { return cnot_pattern(ControlOp::hadamard, std::numbers::pi / 2); }},
      {"cnot_id", [] { return cnot_pattern(ControlOp::identity, std::numbers::pi / 2); }},
      {"cphase", [] { return cphase_pattern(std::numbers::pi / 2, std::numbers::pi / 2); }},
      {"grover_00", [] { return grover_pattern("00"); }},
      {"grover_01", [] { return grover_pattern("01"); }},
      {"grover_10", [] { return grover_pattern("10"); }},
      {"grover_11", [] { return grover_pattern("11"); }},
      {"deutsch_f1", [] { return deutsch_pattern(DeutschFunction::f1); }},
      {"deutsch_f3", [] { return deutsch_pattern(DeutschFunction::f3); }},
  };
}

}  // namespace detail

// Run all checks whose name contains `filter` (empty matches everything).
// `patterns_dir` locates the shipped pattern files.
inline std::vector<CheckResult> run_verification(const std::string& patterns_dir, const std::string& filter = "") {
  std::vector<std::pair<std::string, std::function<bool(std::string&)>>> checks;

  for (const QubitOrdering& ordering : standard_orderings()) {
    checks.emplace_back("ordering-" + ordering.name, [ordering](std::string& detail) {
      if (!verify_ordering(ordering)) {
        detail = "local-unitary image does not reproduce the physical cluster";
        return false;
      }
      return true;
    });
  }

  checks.emplace_back("witness-ideal", [](std::string& detail) {
    const WitnessReport report = c4_witness(make_c4());
    for (const WitnessValue& v : report.values) {
      if (std::abs(v.expectation - 1.0) > kAlgebraTol) {
        detail = "stabilizer " + std::to_string(v.index) + " expectation " + std::to_string(v.expectation);
        return false;
      }
    }
    if (std::abs(report.fidelity - 1.0) > kAlgebraTol) {
      detail = "witness fidelity " + std::to_string(report.fidelity);
      return false;
    }
    return true;
  });

  checks.emplace_back("rotation-determinism", [](std::string& detail) {
    auto grid = rotation_test_angles_a();
    const auto grid_b = rotation_test_angles_b();
    grid.insert(grid.end(), grid_b.begin(), grid_b.end());
    for (const auto& [alpha, beta] : grid) {
      for (InputState input : {InputState::plus, InputState::minus}) {
        const RotationSpec spec{alpha, beta, input};
        if (!detail::corrected_matches(rotation_pattern(spec), rotation_cluster_target(spec), detail)) return false;
      }
    }
    return true;
  });

  checks.emplace_back("cnot-determinism", [](std::string& detail) {
    for (ControlOp op : {ControlOp::identity, ControlOp::hadamard}) {
      for (double alpha : cnot_test_angles()) {
        if (!detail::corrected_matches(cnot_pattern(op, alpha), cnot_corrected_target(op, alpha), detail)) {
          return false;
        }
      }
    }
    return true;
  });

  checks.emplace_back("cphase-determinism", [](std::string& detail) {
    for (const auto& [alpha, beta] : cphase_test_angles()) {
      if (!detail::corrected_matches(cphase_pattern(alpha, beta), cphase_corrected_target(alpha, beta), detail)) {
        return false;
      }
    }
    return true;
  });

  checks.emplace_back("grover-determinism", [](std::string& detail) {
    for (const std::string tag : {"00", "01", "10", "11"}) {
      const auto branches = run_pattern(grover_pattern(tag), {});
      // The two readouts are fixed by the two tagging outcomes, so exactly
      // four of the sixteen outcome strings survive.
      if (branches.size() != 4) {
        detail = "tag " + tag + ": expected 4 branches, got " + std::to_string(branches.size());
        return false;
      }
      for (const BranchResult& branch : branches) {
        if (branch.corrected != grover_expected_bits(tag)) {
          detail = "tag " + tag + ": a branch relabels to " + bits_to_string(branch.corrected);
          return false;
        }
      }
    }
    return true;
  });

  checks.emplace_back("deutsch-determinism", [](std::string& detail) {
    for (DeutschFunction f :
         {DeutschFunction::f1, DeutschFunction::f2, DeutschFunction::f3, DeutschFunction::f4}) {
      const MeasurementPattern pattern = deutsch_pattern(f);
      for (const BranchResult& branch : run_pattern(pattern, {})) {
        if (branch.corrected != deutsch_expected_bits(f)) {
          detail = pattern.name + ": a branch relabels to " + bits_to_string(branch.corrected);
          return false;
        }
      }
    }
    return true;
  });

  checks.emplace_back("patterns-files", [patterns_dir](std::string& detail) {
    for (const auto& [name, builder] : detail::shipped_builders()) {
      const std::string path = patterns_dir + "/" + name + ".json";
      if (!std::filesystem::exists(path)) {
        detail = "missing " + path;
        return false;
      }
      MeasurementPattern loaded;
      try {
        loaded = load_pattern(path);
      } catch (const error& e) {
        detail = e.what();
        return false;
      }
      if (!(loaded == builder())) {
        detail = path + " does not match its builder";
        return false;
      }
      if (!(parse_pattern(pattern_to_string(loaded)) == loaded)) {
        detail = path + " does not survive a serialization round trip";
        return false;
      }
    }
    return true;
  });

  std::vector<CheckResult> results;
  for (auto& [name, fn] : checks) {
    if (!filter.empty() && name.find(filter) == std::string::npos) continue;
    CheckResult result{name, true, ""};
    try {
      result.passed = fn(result.detail);
    } catch (const std::exception& e) {
      result.passed = false;
      result.detail = e.what();
    }
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace oneway
