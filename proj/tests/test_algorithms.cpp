#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "oneway/algorithms.hpp"
#include "oneway/pattern_io.hpp"

using namespace oneway;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

State pauli_frame(const State& psi, int x, int z) {
  State out = psi;
  if (z) out = apply_gate(out, gates::z(), {0});
  if (x) out = apply_gate(out, gates::x(), {0});
  return out;
}

std::vector<RotationSpec> rotation_specs() {
  std::vector<RotationSpec> specs;
  for (InputState input : {InputState::plus, InputState::minus}) {
    for (auto [alpha, beta] : rotation_test_angles_a()) specs.push_back({alpha, beta, input});
    for (auto [alpha, beta] : rotation_test_angles_b()) specs.push_back({alpha, beta, input});
  }
  return specs;
}

}  // namespace

TEST_CASE("rotation pattern: every branch carries the rotated input under a Pauli frame") {
  for (const RotationSpec& spec : rotation_specs()) {
    INFO("alpha " << spec.alpha << " beta " << spec.beta << " input "
                  << (spec.input == InputState::plus ? "+" : "-"));
    const State target = rotation_cluster_target(spec);
    const auto branches = run_pattern(rotation_pattern(spec));
    REQUIRE(branches.size() == 4);
    for (const BranchResult& b : branches) {
      REQUIRE(b.record.probability == Approx(0.25).margin(kAlgebraTol));
      // The pinned first site always reports its preparation.
      REQUIRE(b.record.bit("s0") == (spec.input == InputState::plus ? 0 : 1));
      const int s1 = b.record.bit("s1");
      const int s2 = b.record.bit("s2");
      REQUIRE(b.byproduct_bits == std::vector<std::pair<int, int>>{{s2, s1}});
      REQUIRE(approx_equal_up_to_phase(b.output, pauli_frame(target, s2, s1), kAlgebraTol));
      REQUIRE(approx_equal_up_to_phase(correct_byproducts(b), target, kAlgebraTol));
    }
  }
}

TEST_CASE("rotation targets, frozen values") {
  // alpha = 0, beta = pi/2 leaves |+> fixed (it is an X rotation of an X
  // eigenstate), and |-> as well.
  REQUIRE(approx_equal_up_to_phase(rotation_cluster_target({0.0, kPi / 2, InputState::plus}),
                                   single_site_state('+'), kAlgebraTol));
  REQUIRE(approx_equal_up_to_phase(rotation_cluster_target({0.0, kPi / 2, InputState::minus}),
                                   single_site_state('-'), kAlgebraTol));
  // alpha = -pi/2, beta = 0 on |+>: amplitudes (e^{i pi/4}, e^{-i pi/4})/sqrt(2).
  const State turned = rotation_cluster_target({-kPi / 2, 0.0, InputState::plus});
  const double s = 1.0 / std::sqrt(2.0);
  REQUIRE(std::abs(turned[0] - std::polar(s, kPi / 4)) < kAlgebraTol);
  REQUIRE(std::abs(turned[1] - std::polar(s, -kPi / 4)) < kAlgebraTol);
}

TEST_CASE("rotation outputs in the laboratory frame") {
  // The output site carries a local factor that depends on the ordering: H
  // for ordering a, ZH for ordering b.
  const RotationSpec spec{-kPi / 2, kPi / 2, InputState::plus};
  const State cluster = rotation_cluster_target(spec);
  const QubitOrdering a = ordering_by_name("a");
  const QubitOrdering b = ordering_by_name("b");
  REQUIRE(approx_equal(rotation_lab_target(spec, a), apply1(gates::h(), cluster), kAlgebraTol));
  REQUIRE(approx_equal(rotation_lab_target(spec, b),
                       apply1(gates::z(), apply1(gates::h(), cluster)), kAlgebraTol));
  // Orderings a and b send the output site to different photons.
  REQUIRE(a.physical[3] == kPolB);
  REQUIRE(b.physical[3] == kMomB);
}

TEST_CASE("cnot pattern: corrected output is branch-independent") {
  for (ControlOp op : {ControlOp::hadamard, ControlOp::identity}) {
    for (double alpha : cnot_test_angles()) {
      INFO("op " << (op == ControlOp::hadamard ? "H" : "1") << " alpha " << alpha);
      const State target = cnot_corrected_target(op, alpha);
      const auto branches = run_pattern(cnot_pattern(op, alpha));
      REQUIRE(branches.size() == 4);
      double total = 0.0;
      for (const BranchResult& b : branches) {
        total += b.record.probability;
        REQUIRE(approx_equal_up_to_phase(correct_byproducts(b), target, kAlgebraTol));
      }
      REQUIRE(total == Approx(1.0).margin(kAlgebraTol));
    }
  }
}

TEST_CASE("cnot pattern: per-branch laboratory outputs") {
  for (ControlOp op : {ControlOp::hadamard, ControlOp::identity}) {
    for (double alpha : cnot_test_angles()) {
      for (const BranchResult& b : run_pattern(cnot_pattern(op, alpha))) {
        const int s0 = b.record.bit("s0");
        const int s3 = b.record.bit("s3");
        INFO("op " << (op == ControlOp::hadamard ? "H" : "1") << " alpha " << alpha << " s0 " << s0 << " s3 "
                   << s3);
        REQUIRE(approx_equal_up_to_phase(cnot_to_lab(b.output), cnot_lab_output(op, alpha, s0, s3),
                                         kAlgebraTol));
      }
    }
  }
}

TEST_CASE("cnot laboratory output, frozen branch") {
  // op = H, alpha = pi/2, no errors: control flips to |1>, target keeps its
  // equatorial phase.
  const State psi = cnot_lab_output(ControlOp::hadamard, kPi / 2, 0, 0);
  const double s = 1.0 / std::sqrt(2.0);
  REQUIRE(std::abs(psi[0]) < kAlgebraTol);
  REQUIRE(std::abs(psi[1]) < kAlgebraTol);
  REQUIRE(std::abs(psi[2] - std::polar(s, -kPi / 4)) < kAlgebraTol);
  REQUIRE(std::abs(psi[3] - std::polar(s, kPi / 4)) < kAlgebraTol);
}

TEST_CASE("controlled-phase pattern over the published angle grid") {
  REQUIRE(cphase_test_angles().size() == 7);
  for (auto [alpha, beta] : cphase_test_angles()) {
    INFO("alpha " << alpha << " beta " << beta);
    const State target = cphase_corrected_target(alpha, beta);
    const auto branches = run_pattern(cphase_pattern(alpha, beta));
    REQUIRE(branches.size() == 4);
    for (const BranchResult& b : branches) {
      REQUIRE(b.record.probability == Approx(0.25).margin(kAlgebraTol));
      REQUIRE(approx_equal_up_to_phase(correct_byproducts(b), target, kAlgebraTol));
    }
  }
}

TEST_CASE("controlled-phase entangles exactly when both angles allow it") {
  // beta = 0 leaves R_x trivial; alpha = 0 then gives CZ|++>, the two-site
  // cluster itself.
  testutil::expect_equal_exact(cphase_corrected_target(0.0, 0.0), build_cluster(path_graph(2)));
  // There the reduced control is maximally mixed.
  const DensityMatrix half = reduce(cphase_corrected_target(0.0, 0.0), {0});
  REQUIRE(std::abs(half.at(0, 0) - cx(0.5, 0)) < kAlgebraTol);
  REQUIRE(std::abs(half.at(1, 1) - cx(0.5, 0)) < kAlgebraTol);
  REQUIRE(std::abs(half.at(0, 1)) < kAlgebraTol);
  // alpha = beta = pi/2 rotates the target to |0>, which a CZ ignores: the
  // output stays a product.
  REQUIRE(approx_equal_up_to_phase(cphase_corrected_target(kPi / 2, kPi / 2),
                                   tensor(single_site_state('+'), State::basis({0})), kAlgebraTol));
}

TEST_CASE("controlled-phase laboratory display state") {
  for (auto [alpha, beta] : cphase_test_angles()) {
    RunOptions options;
    options.mode = RunMode::forced;
    options.forced = {0, 0};
    const auto branch = run_pattern(cphase_pattern(alpha, beta), options);
    REQUIRE(approx_equal_up_to_phase(cphase_to_lab(branch[0].output), cphase_lab_display(alpha, beta),
                                     kAlgebraTol));
  }
}

TEST_CASE("search pattern finds the tagged item in every branch") {
  for (const std::string tag : {"00", "01", "10", "11"}) {
    INFO("tag " << tag);
    const auto expected = grover_expected_bits(tag);
    const auto branches = run_pattern(grover_pattern(tag));
    // The two readouts are determined by the two tagging outcomes, so only
    // four of the sixteen outcome strings survive.
    REQUIRE(branches.size() == 4);
    double total = 0.0;
    for (const BranchResult& b : branches) {
      REQUIRE(b.record.probability == Approx(0.25).margin(kAlgebraTol));
      total += b.record.probability;
      REQUIRE(b.corrected == expected);
    }
    REQUIRE(total == Approx(1.0).margin(kAlgebraTol));

    // Sampling agrees: one histogram key, equal to the tag.
    const auto counts = sample_shots(grover_pattern(tag), 64, 5);
    REQUIRE(counts.size() == 1);
    REQUIRE(counts.at(tag) == 64);
  }
  REQUIRE_THROWS_AS(grover_angles("2"), error);
  REQUIRE_THROWS_AS(grover_expected_bits("012"), error);
}

TEST_CASE("search operator reference recovers the tagged basis state") {
  for (const std::string tag : {"00", "01", "10", "11"}) {
    const auto bits = grover_expected_bits(tag);
    const State expected = State::basis({bits[0], bits[1]});
    REQUIRE(approx_equal_up_to_phase(grover_operator_output(tag), expected, kAlgebraTol));
  }
}

TEST_CASE("oracle discrimination: one query separates constant from balanced") {
  for (DeutschFunction f :
       {DeutschFunction::f1, DeutschFunction::f2, DeutschFunction::f3, DeutschFunction::f4}) {
    INFO("function " << static_cast<int>(f) + 1);
    const auto expected = deutsch_expected_bits(f);
    const auto branches = run_pattern(deutsch_pattern(f));
    REQUIRE(branches.size() == 4);
    double total = 0.0;
    for (const BranchResult& b : branches) {
      REQUIRE(b.record.probability == Approx(0.25).margin(kAlgebraTol));
      total += b.record.probability;
      REQUIRE(b.corrected == expected);
    }
    REQUIRE(total == Approx(1.0).margin(kAlgebraTol));
  }
  REQUIRE(deutsch_expected_bits(DeutschFunction::f1) == std::vector<int>{0, 1});
  REQUIRE(deutsch_expected_bits(DeutschFunction::f2) == std::vector<int>{0, 1});
  REQUIRE(deutsch_expected_bits(DeutschFunction::f3) == std::vector<int>{1, 1});
  REQUIRE(deutsch_expected_bits(DeutschFunction::f4) == std::vector<int>{1, 1});

  const auto constant = sample_shots(deutsch_pattern(DeutschFunction::f1), 32, 11);
  REQUIRE(constant.size() == 1);
  REQUIRE(constant.at("01") == 32);
  const auto balanced = sample_shots(deutsch_pattern(DeutschFunction::f3), 32, 11);
  REQUIRE(balanced.size() == 1);
  REQUIRE(balanced.at("11") == 32);
}

TEST_CASE("experiment builders serialize and parse back unchanged") {
  std::vector<MeasurementPattern> patterns = {
      rotation_pattern({0.0, kPi / 2, InputState::plus}),
      rotation_pattern({-kPi / 4, 0.0, InputState::minus}),
      cnot_pattern(ControlOp::hadamard, kPi / 2),
      cnot_pattern(ControlOp::identity, kPi / 4),
      cphase_pattern(kPi / 2, -kPi / 2),
      grover_pattern("10"),
      deutsch_pattern(DeutschFunction::f1),
      deutsch_pattern(DeutschFunction::f3),
  };
  for (const MeasurementPattern& p : patterns) {
    REQUIRE(parse_pattern(pattern_to_string(p)) == p);
  }
}

TEST_CASE("published angle grids") {
  REQUIRE(rotation_test_angles_a().size() == 4);
  REQUIRE(rotation_test_angles_b().size() == 4);
  REQUIRE(cnot_test_angles() == std::vector<double>{kPi / 2, kPi / 4});
  REQUIRE(rotation_test_angles_a()[0].first == 0.0);
  REQUIRE(rotation_test_angles_a()[0].second == Approx(kPi / 2));
  REQUIRE(rotation_test_angles_b()[3].first == Approx(-kPi / 4));
  REQUIRE(cphase_test_angles()[1].first == Approx(kPi));
}
