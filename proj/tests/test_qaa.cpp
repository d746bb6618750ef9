#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qaelab/qaa.hpp"
#include "qaelab/transpile.hpp"
#include "qaelab/verify.hpp"
#include "test_support.hpp"

using namespace qaelab;
using qaelab::testing::approx;
using qaelab::testing::random_state;

namespace {
constexpr double kPi = std::numbers::pi;

ProblemSpec instance_01() { return ProblemSpec::from_bitstrings(2, {"01"}); }
}  // namespace

TEST_SUITE_BEGIN("qaa");

TEST_CASE("A prepares the flagged superposition for the two-qubit instance") {
  const ProblemSpec spec = instance_01();
  CHECK(spec.amplitude() == doctest::Approx(0.25));
  CHECK(spec.theta() == doctest::Approx(kPi / 6.0));

  const AOperator a_op = build_a(spec);
  const StateVector state = run_circuit(a_op.circuit, StateVector::zero_state(3));
  CHECK(probability_of(state, a_op.flag_qubit(), 1) == doctest::Approx(0.25).epsilon(1e-12));
  // |01>|1> lives at index 1 + 4.
  CHECK(approx(state.amplitudes[5], 0.5, 1e-12));
}

TEST_CASE("empty good set leaves the flag at |0>") {
  ProblemSpec spec;
  spec.num_domain_qubits = 2;
  const AOperator a_op = build_a(spec);
  const StateVector state = run_circuit(a_op.circuit, StateVector::zero_state(3));
  CHECK(probability_of(state, 2, 1) == doctest::Approx(0.0));
}

TEST_CASE("three good states out of eight") {
  const ProblemSpec spec = ProblemSpec::from_bitstrings(3, {"011", "101", "110"});
  const AOperator a_op = build_a(spec);
  const StateVector state = run_circuit(a_op.circuit, StateVector::zero_state(4));
  CHECK(probability_of(state, a_op.flag_qubit(), 1) ==
        doctest::Approx(3.0 / 8.0).epsilon(1e-12));
}

TEST_CASE("A inverse undoes A") {
  const AOperator a_op = build_a(instance_01());
  const Circuit inv = build_a_inverse(a_op);

  StateVector state = run_circuit(a_op.circuit, StateVector::zero_state(3));
  state = run_circuit(inv, std::move(state));
  CHECK(approx(state.amplitudes[0], 1.0, 1e-10));

  CounterRng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const StateVector initial = random_state(rng, 3);
    const StateVector round =
        run_circuit(a_op.circuit, run_circuit(inv, initial));
    for (std::size_t k = 0; k < initial.amplitudes.size(); ++k)
      CHECK(approx(round.amplitudes[k], initial.amplitudes[k], 1e-9));
  }

  CHECK(depth(inv) == depth(a_op.circuit));
}

TEST_CASE("Q is the composition from its components and matches the reflections") {
  const AOperator a_op = build_a(instance_01());
  const GroverOperator q_op = build_q(a_op);

  const verify::Matrix m_q = verify::circuit_matrix(q_op.circuit);
  const verify::Matrix m_a = verify::circuit_matrix(q_op.a);
  const verify::Matrix m_ainv = verify::circuit_matrix(q_op.a_inverse);

  // Definitional S_chi = I (x) Z and S_0 = I - 2|0><0| built directly.
  verify::Matrix s_chi = verify::Matrix::identity(8);
  for (std::uint64_t k = 0; k < 8; ++k)
    if (k & 4ULL) s_chi.at(k, k) = -1.0;
  verify::Matrix s_zero = verify::Matrix::identity(8);
  s_zero.at(0, 0) = -1.0;

  const verify::Matrix product = verify::multiply(
      m_a, verify::multiply(s_zero, verify::multiply(m_ainv, s_chi)));
  // The realized S_0 carries a global -1 relative to I - 2|0><0|, chosen so
  // that Q's eigenphases on the amplified plane are +-2 theta.
  CHECK(verify::max_abs_diff_up_to_phase(m_q, product) < 1e-9);
  verify::Matrix negated = product;
  for (auto& e : negated.e) e = -e;
  CHECK(verify::max_abs_diff(m_q, negated) < 1e-9);

  CHECK(verify::is_unitary(m_q, 1e-9));
}

TEST_CASE("realized S0 reflects everything but |0...0> up to one shared phase") {
  const AOperator a_op = build_a(instance_01());
  const GroverOperator q_op = build_q(a_op);
  for (std::uint64_t x = 0; x < 8; ++x) {
    const StateVector out =
        run_circuit(q_op.s_zero, StateVector::basis_state(3, x));
    const double expected = x == 0 ? 1.0 : -1.0;  // global phase -1 included
    CHECK(approx(out.amplitudes[x], expected, 1e-10));
  }
}

TEST_CASE("unitarity for a three-qubit domain") {
  const ProblemSpec spec = ProblemSpec::from_bitstrings(3, {"101"});
  const GroverOperator q_op = build_q(build_a(spec));
  CHECK(verify::is_unitary(verify::circuit_matrix(q_op.circuit), 1e-9));
}

TEST_CASE("amplified probabilities follow sin^2((2m+1) theta)") {
  const ProblemSpec spec = instance_01();
  const AOperator a_op = build_a(spec);
  const GroverOperator q_op = build_q(a_op);

  const double expected[] = {0.25, 1.00, 0.25, 1.00};
  const int powers[] = {0, 1, 2, 4};
  for (int k = 0; k < 4; ++k) {
    const StateVector state = apply_q_power(a_op, q_op, powers[k]);
    CHECK(std::abs(probability_of(state, a_op.flag_qubit(), 1) - expected[k]) < 1e-9);
  }

  // Sweep good-state subsets (all for n <= 2, a stride for n = 3).
  for (int n = 1; n <= 3; ++n) {
    const std::uint64_t domain = 1ULL << n;
    const std::uint64_t subsets = 1ULL << domain;
    for (std::uint64_t mask = 0; mask < subsets; mask += (n == 3 ? 7 : 1)) {
      ProblemSpec sweep;
      sweep.num_domain_qubits = n;
      for (std::uint64_t g = 0; g < domain; ++g)
        if ((mask >> g) & 1ULL) sweep.good_states.insert(g);
      const AOperator a_sweep = build_a(sweep);
      const GroverOperator q_sweep = build_q(a_sweep);
      for (int m = 0; m <= 8; m += 2) {
        const StateVector state = apply_q_power(a_sweep, q_sweep, m);
        const double p = probability_of(state, a_sweep.flag_qubit(), 1);
        CHECK(std::abs(p - analytic_success_probability(sweep, m)) < 1e-9);
      }
    }
  }
}

TEST_CASE("a = 0 makes Q a fixed point up to global phase") {
  ProblemSpec spec;
  spec.num_domain_qubits = 2;
  const AOperator a_op = build_a(spec);
  const GroverOperator q_op = build_q(a_op);
  const StateVector base = apply_q_power(a_op, q_op, 0);
  const StateVector once = apply_q_power(a_op, q_op, 1);
  CHECK(verify::state_diff_up_to_phase(once, base) < 1e-9);
}

TEST_CASE("amplification strictly beats direct measurement for small theta") {
  ProblemSpec spec;
  spec.num_domain_qubits = 4;
  spec.good_states = {3};  // a = 1/16, theta ~ 0.2527 < pi/6
  const AOperator a_op = build_a(spec);
  const GroverOperator q_op = build_q(a_op);
  const double a = spec.amplitude();
  for (int m = 1; m <= 2; ++m) {  // (2m+1) theta stays below pi/2
    const StateVector state = apply_q_power(a_op, q_op, m);
    CHECK(probability_of(state, a_op.flag_qubit(), 1) > a);
  }
}

TEST_CASE("analytic success probability") {
  ProblemSpec quarter;
  quarter.num_domain_qubits = 2;
  quarter.good_states = {1};
  CHECK(analytic_success_probability(quarter, 1) == doctest::Approx(1.0).epsilon(1e-12));

  ProblemSpec zero;
  zero.num_domain_qubits = 2;
  CHECK(analytic_success_probability(zero, 3) == doctest::Approx(0.0));

  ProblemSpec three_eighths;
  three_eighths.num_domain_qubits = 3;
  three_eighths.good_states = {1, 4, 6};
  const AOperator a_op = build_a(three_eighths);
  const GroverOperator q_op = build_q(a_op);
  const StateVector state = apply_q_power(a_op, q_op, 3);
  CHECK(std::abs(probability_of(state, a_op.flag_qubit(), 1) -
                 analytic_success_probability(three_eighths, 3)) < 1e-9);
}

TEST_CASE("instance parsing and validation") {
  CHECK(ProblemSpec::from_bitstrings(2, {"01"}).good_states == std::set<std::uint64_t>{1});
  CHECK(ProblemSpec::from_bitstrings(2, {"10"}).good_states == std::set<std::uint64_t>{2});
  CHECK_THROWS_AS(ProblemSpec::from_bitstrings(2, {"011"}), std::invalid_argument);
  ProblemSpec bad;
  bad.num_domain_qubits = 2;
  bad.good_states = {9};
  CHECK_THROWS_AS(build_a(bad), std::invalid_argument);
}

TEST_SUITE_END();
