// Command-line front end: run measurement patterns, evaluate the cluster
// witness, run the built-in verification checks, and list shipped patterns.
//
// Exit codes: 0 success, 1 usage or parse problems, 2 execution failures,
// 3 failed verification checks.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oneway/pattern.hpp"
#include "oneway/pattern_io.hpp"
#include "oneway/report.hpp"
#include "oneway/verify.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitExecution = 2;
constexpr int kExitVerifyFailed = 3;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw oneway::error("cannot write '" + out_path + "'");
  out << text;
}

std::vector<int> parse_bits(const std::string& text) {
  std::vector<int> bits;
  for (char c : text) {
    if (c != '0' && c != '1') throw oneway::error("bit string must contain only 0 and 1");
    bits.push_back(c - '0');
  }
  return bits;
}

struct RunArgs {
  std::string pattern_path;
  std::string mode = "exhaustive";
  std::uint64_t shots = 1;
  std::uint64_t seed = 0;
  std::string forced;
  std::string format = "json";
  std::string out_path;
};

int cmd_run(const RunArgs& args) {
  oneway::MeasurementPattern pattern;
  try {
    pattern = oneway::load_pattern(args.pattern_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (args.mode == "sample" && args.shots > 1) {
      const auto counts = oneway::sample_shots(pattern, args.shots, args.seed);
      const std::string text = args.format == "csv"
                                   ? oneway::sample_report_csv(counts, args.shots)
                                   : oneway::sample_report_json(pattern, counts, args.shots, args.seed).dump(2) + "\n";
      write_output(text, args.out_path);
      return 0;
    }

    oneway::RunOptions options;
    if (args.mode == "exhaustive") {
      options.mode = oneway::RunMode::exhaustive;
    } else if (args.mode == "sample") {
      options.mode = oneway::RunMode::sample;
      options.seed = args.seed;
    } else if (args.mode == "forced") {
      options.mode = oneway::RunMode::forced;
      options.forced = parse_bits(args.forced);
    } else {
      std::cerr << "error: unknown mode '" << args.mode << "'\n";
      return kExitUsage;
    }
    const auto branches = oneway::run_pattern(pattern, options);
    const std::string text = args.format == "csv"
                                 ? oneway::run_report_csv(pattern, branches)
                                 : oneway::run_report_json(pattern, branches, options).dump(2) + "\n";
    write_output(text, args.out_path);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitExecution;
  }
}

struct WitnessArgs {
  std::string noise = "none";
  double calibrate_target = -1.0;
  std::string out_path;
};

int cmd_witness(const WitnessArgs& args) {
  oneway::NoiseSpec noise;
  try {
    noise = oneway::NoiseSpec::parse(args.noise);
    if (noise.family != "none") noise.channel();  // validates the probability range
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (args.calibrate_target >= 0.0) {
      if (noise.family == "none") noise.family = "depolarizing";
      const oneway::CalibrationResult result = oneway::calibrate_noise(noise, args.calibrate_target);
      std::string text = "family,target,p,fidelity\n";
      text += noise.family + "," + oneway::format6(args.calibrate_target) + "," + oneway::format6(result.p) + "," +
              oneway::format6(result.fidelity) + "\n";
      write_output(text, args.out_path);
      return 0;
    }
    write_output(oneway::witness_csv(oneway::witness_under_noise(noise)), args.out_path);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitExecution;
  }
}

int cmd_verify(const std::string& patterns_dir, const std::string& filter) {
  const auto results = oneway::run_verification(patterns_dir, filter);
  if (results.empty()) {
    std::cerr << "error: no check matches filter '" << filter << "'\n";
    return kExitUsage;
  }
  bool all_passed = true;
  for (const oneway::CheckResult& r : results) {
    if (r.passed) {
      std::cout << "PASS " << r.name << "\n";
    } else {
      std::cout << "FAIL " << r.name << ": " << r.detail << "\n";
      all_passed = false;
    }
  }
  return all_passed ? 0 : kExitVerifyFailed;
}

int cmd_list_patterns(const std::string& patterns_dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(patterns_dir)) {
    std::cerr << "error: '" << patterns_dir << "' is not a directory\n";
    return kExitUsage;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(patterns_dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  bool ok = true;
  for (const fs::path& file : files) {
    try {
      const oneway::MeasurementPattern p = oneway::load_pattern(file.string());
      std::cout << p.name << "  (" << file.string() << "): " << p.graph.num_sites() << " sites, "
                << p.steps.size() << " steps, " << p.outputs.size() << " quantum outputs";
      if (!p.relabel.empty()) std::cout << ", " << p.relabel.size() << " classical bits";
      std::cout << "\n";
    } catch (const std::exception& e) {
      std::cout << file.string() << ": invalid (" << e.what() << ")\n";
      ok = false;
    }
  }
  return ok ? 0 : kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-way quantum computing toolkit"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "execute a measurement pattern file");
  run->add_option("pattern", run_args.pattern_path, "pattern JSON file")->required();
  run->add_option("--mode", run_args.mode, "exhaustive, sample, or forced")->default_str("exhaustive");
  run->add_option("--shots", run_args.shots, "number of samples (sample mode)");
  run->add_option("--seed", run_args.seed, "RNG seed (sample mode)");
  run->add_option("--forced", run_args.forced, "outcome bits, one per step (forced mode)");
  run->add_option("--format", run_args.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--out", run_args.out_path, "write the report here instead of stdout");

  WitnessArgs witness_args;
  CLI::App* witness = app.add_subcommand("witness", "evaluate the cluster stabilizer witness");
  witness->add_option("--noise", witness_args.noise, "none, depolarizing:p, or dephasing:p");
  witness->add_option("--calibrate", witness_args.calibrate_target,
                      "scan the channel probability until the witness fidelity drops to this target");
  witness->add_option("--out", witness_args.out_path, "write the report here instead of stdout");

  std::string patterns_dir = "patterns";
  std::string filter;
  CLI::App* verify = app.add_subcommand("verify", "run the built-in consistency checks");
  verify->add_option("--filter", filter, "run only checks whose name contains this substring");
  verify->add_option("--patterns-dir", patterns_dir, "directory holding the shipped pattern files");

  CLI::App* list = app.add_subcommand("list-patterns", "list the pattern files in a directory");
  list->add_option("--patterns-dir", patterns_dir, "directory to scan");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (run->parsed()) return cmd_run(run_args);
  if (witness->parsed()) return cmd_witness(witness_args);
  if (verify->parsed()) return cmd_verify(patterns_dir, filter);
  if (list->parsed()) return cmd_list_patterns(patterns_dir);
  return kExitUsage;
}
