#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "qaelab/cqae.hpp"
#include "qaelab/transpile.hpp"
#include "qaelab/verify.hpp"
#include "test_support.hpp"

using namespace qaelab;
using qaelab::testing::approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Closed-form phase-estimation mass on reading y for an eigenphase phi (as a
// fraction of a turn): |(1/M) sum_x e^{2 pi i x (phi - y/M)}|^2.
double qpe_mass(double phi, std::uint64_t y, int m) {
  const double big_m = std::pow(2.0, m);
  const double delta = phi - static_cast<double>(y) / big_m;
  const double num = std::sin(kPi * big_m * delta);
  const double den = std::sin(kPi * delta);
  if (std::abs(den) < 1e-14) return 1.0;
  return (num * num) / (big_m * big_m * den * den);
}

}  // namespace

TEST_SUITE_BEGIN("cqae");

TEST_CASE("single-qubit inverse QFT is a Hadamard") {
  const Circuit iqft = inverse_qft({0});
  const StateVector out = run_circuit(iqft, StateVector::zero_state(1));
  CHECK(approx(out.amplitudes[0], 1.0 / std::sqrt(2.0)));
  CHECK(approx(out.amplitudes[1], 1.0 / std::sqrt(2.0)));
}

TEST_CASE("two-qubit inverse QFT of |0> is the uniform positive state") {
  const StateVector out = run_circuit(inverse_qft({0, 1}), StateVector::zero_state(2));
  for (const complex_t& amp : out.amplitudes) CHECK(approx(amp, 0.5, 1e-12));
}

TEST_CASE("three-qubit inverse QFT equals the conjugate DFT matrix") {
  const verify::Matrix m = verify::circuit_matrix(inverse_qft({0, 1, 2}));
  const double inv = 1.0 / std::sqrt(8.0);
  for (std::uint64_t j = 0; j < 8; ++j) {
    for (std::uint64_t k = 0; k < 8; ++k) {
      const double angle = -2.0 * kPi * static_cast<double>(j * k) / 8.0;
      const complex_t want = inv * std::exp(complex_t{0.0, angle});
      CHECK(approx(m.at(j, k), want, 1e-9));
    }
  }
}

TEST_CASE("circuit structure: 2^m - 1 controlled-Q blocks") {
  const ProblemSpec spec = ProblemSpec::from_bitstrings(2, {"01"});
  const AOperator a_op = build_a(spec);
  const GroverOperator q_op = build_q(a_op);
  const std::size_t q_size = q_op.circuit.ops.size();
  const std::size_t a_size = a_op.circuit.ops.size();

  for (int m : {1, 3}) {
    CQAEConfig config;
    config.spec = spec;
    config.ancillae = m;
    const Circuit circuit = build_cqae_circuit(config);
    std::vector<int> anc(m);
    for (int j = 0; j < m; ++j) anc[j] = 3 + j;
    const std::size_t iqft_size = inverse_qft(anc).ops.size();
    const std::size_t expected =
        m + a_size + static_cast<std::size_t>(cqae_controlled_q_count(m)) * q_size +
        iqft_size;
    CHECK(circuit.ops.size() == expected);

    // Per-ancilla block structure: ancilla j controls 2^j full copies of Q.
    for (int j = 0; j < m; ++j) {
      const int anc = 3 + j;
      std::size_t count = 0;
      for (const GateOp& op : circuit.ops) {
        bool controls_anc = false;
        for (int c : op.controls) controls_anc |= c == anc;
        if (controls_anc && op.targets[0] <= 2) ++count;
      }
      CHECK(count == (std::size_t{1} << j) * q_size);
    }
  }
  CHECK(cqae_controlled_q_count(3) == 7);
  CHECK(cqae_controlled_q_count(1) == 1);
}

TEST_CASE("ancilla-zero branch carries an untouched A|0>") {
  const ProblemSpec spec = ProblemSpec::from_bitstrings(2, {"01"});
  const AOperator a_op = build_a(spec);
  const GroverOperator q_op = build_q(a_op);
  const int m = 2;
  const int width = 3 + m;

  Circuit circuit(width);
  for (int j = 0; j < m; ++j) circuit.append(GateOp::h(3 + j));
  circuit.append(a_op.circuit);
  for (int j = 0; j < m; ++j) {
    const Circuit cq = q_op.circuit.controlled(3 + j);
    for (int rep = 0; rep < (1 << j); ++rep) circuit.append(cq);
  }

  const StateVector full = run_circuit(circuit, StateVector::zero_state(width));
  const StateVector target = run_circuit(a_op.circuit, StateVector::zero_state(3));
  const double scale = 1.0 / std::sqrt(std::pow(2.0, m));
  for (std::uint64_t x = 0; x < 8; ++x)
    CHECK(approx(full.amplitudes[x], scale * target.amplitudes[x], 1e-9));
}

TEST_CASE("on-grid instance reads exactly") {
  CQAEConfig config;
  config.spec = ProblemSpec::from_bitstrings(2, {"00", "01"});  // a = 1/2
  config.ancillae = 2;
  config.exact = true;
  const CQAEResult result = run_cqae(config);
  CHECK(result.theta_estimate == doctest::Approx(kPi / 4.0).epsilon(1e-12));
  CHECK(result.amplitude_estimate == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(result.exact_distribution[1] + result.exact_distribution[3] ==
        doctest::Approx(1.0).epsilon(1e-9));

  config.exact = false;
  config.shots = 512;
  config.seed = 5;
  const CQAEResult sampled = run_cqae(config);
  CHECK(sampled.theta_estimate == doctest::Approx(kPi / 4.0).epsilon(1e-12));
  for (const auto& [bits, count] : sampled.histogram)
    CHECK((bits == "01" || bits == "11"));
}

TEST_CASE("off-grid distribution matches the closed-form mixture and brackets theta") {
  CQAEConfig config;
  config.spec = ProblemSpec::from_bitstrings(2, {"01"});  // theta = pi/6
  config.ancillae = 3;
  config.exact = true;
  const CQAEResult result = run_cqae(config);

  const double theta = kPi / 6.0;
  const double phi_plus = theta / kPi;         // eigenphase +2 theta as a turn fraction
  const double phi_minus = 1.0 - theta / kPi;  // conjugate branch
  for (std::uint64_t y = 0; y < 8; ++y) {
    const double expected =
        0.5 * qpe_mass(phi_plus, y, 3) + 0.5 * qpe_mass(phi_minus, y, 3);
    CHECK(result.exact_distribution[y] == doctest::Approx(expected).epsilon(1e-9));
  }

  const auto& dist = result.exact_distribution;
  CHECK(dist[1] + dist[7] + dist[2] + dist[6] > 0.8);
  const bool bracketed = std::abs(result.theta_estimate - kPi / 8.0) < 1e-12 ||
                         std::abs(result.theta_estimate - kPi / 4.0) < 1e-12;
  CHECK(bracketed);
}

TEST_CASE("a = 0 reads theta = 0 deterministically") {
  CQAEConfig config;
  config.spec.num_domain_qubits = 2;
  config.ancillae = 2;
  config.exact = true;
  const CQAEResult result = run_cqae(config);
  CHECK(result.exact_distribution[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(result.theta_estimate == doctest::Approx(0.0));
  CHECK(result.amplitude_estimate == doctest::Approx(0.0));
}

TEST_CASE("folding symmetry") {
  for (int m : {2, 3, 4}) {
    const std::uint64_t grid = 1ULL << m;
    for (std::uint64_t y = 1; y < grid; ++y)
      CHECK(fold_grid_angle(y, m) == doctest::Approx(fold_grid_angle(grid - y, m)));
  }
}

TEST_CASE("simulator cap and config validation") {
  CQAEConfig config;
  config.spec.num_domain_qubits = 10;
  config.ancillae = 4;  // 10 + 1 + 4 = 15 > 14
  CHECK_THROWS_AS(build_cqae_circuit(config), std::invalid_argument);
  config.ancillae = 0;
  CHECK_THROWS_AS(build_cqae_circuit(config), std::invalid_argument);
}

TEST_SUITE_END();
