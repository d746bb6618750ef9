#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qaelab/qaa.hpp"
#include "qaelab/repro.hpp"
#include "qaelab/statevec.hpp"
#include "qaelab/verify.hpp"
#include "test_support.hpp"

using namespace qaelab;
using qaelab::testing::approx;
using qaelab::testing::random_state;

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
}

TEST_SUITE_BEGIN("statevec");

TEST_CASE("pauli and hadamard definitions") {
  StateVector s = apply_gate(StateVector::zero_state(1), GateOp::x(0));
  CHECK(approx(s.amplitudes[0], 0.0));
  CHECK(approx(s.amplitudes[1], 1.0));

  s = apply_gate(StateVector::zero_state(1), GateOp::h(0));
  CHECK(approx(s.amplitudes[0], kInvSqrt2));
  CHECK(approx(s.amplitudes[1], kInvSqrt2));

  s = apply_gate(s, GateOp::z(0));
  CHECK(approx(s.amplitudes[0], kInvSqrt2));
  CHECK(approx(s.amplitudes[1], -kInvSqrt2));
}

TEST_CASE("run_circuit identity and bell state") {
  const Circuit empty(2);
  const StateVector unchanged = run_circuit(empty, StateVector::zero_state(2));
  CHECK(approx(unchanged.amplitudes[0], 1.0));

  Circuit bell(2);
  bell.append(GateOp::h(0));
  bell.append(GateOp::cnot(0, 1));
  const StateVector out = run_circuit(bell, StateVector::zero_state(2));
  CHECK(approx(out.amplitudes[0], kInvSqrt2));
  CHECK(approx(out.amplitudes[1], 0.0));
  CHECK(approx(out.amplitudes[2], 0.0));
  CHECK(approx(out.amplitudes[3], kInvSqrt2));
}

TEST_CASE("circuit followed by its adjoint restores random states") {
  CounterRng rng(404);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(3));
    const Circuit circuit = repro::random_circuit(rng, n, 18);
    const StateVector initial = random_state(rng, n);
    const StateVector forth = run_circuit(circuit, initial);
    const StateVector back = run_circuit(circuit.adjoint(), forth);
    for (std::size_t k = 0; k < initial.amplitudes.size(); ++k)
      CHECK(approx(back.amplitudes[k], initial.amplitudes[k], 1e-9));
  }
}

TEST_CASE("norm preserved through random circuits") {
  CounterRng rng(77);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(4));
    const Circuit circuit = repro::random_circuit(rng, n, 30);
    StateVector state = random_state(rng, n);
    for (const GateOp& op : circuit.ops) {
      state = apply_gate(std::move(state), op);
      CHECK(std::abs(state.norm() - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("matrix-chain oracle agrees with the statevector path") {
  CounterRng rng(1234);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(3));  // up to 4 qubits
    const Circuit circuit = repro::random_circuit(rng, n, 12 + trial);
    const StateVector initial = random_state(rng, n);
    const StateVector fast = run_circuit(circuit, initial);
    const StateVector slow =
        verify::apply_matrix(verify::circuit_matrix(circuit), initial);
    for (std::size_t k = 0; k < fast.amplitudes.size(); ++k)
      CHECK(approx(fast.amplitudes[k], slow.amplitudes[k], 1e-9));
  }
}

TEST_CASE("controls gate nothing when any control is 0") {
  CounterRng rng(55);
  const StateVector state = random_state(rng, 3);
  const StateVector out = apply_gate(state, GateOp::toffoli(0, 1, 2));
  for (std::uint64_t i = 0; i < 8; ++i)
    if ((i & 3ULL) != 3ULL) CHECK(approx(out.amplitudes[i], state.amplitudes[i]));
}

TEST_CASE("sampling statistics and determinism") {
  const StateVector plus = apply_gate(StateVector::zero_state(1), GateOp::h(0));
  const MeasurementRecord rec = sample(plus, {0}, 100000, 99);
  const double frac = static_cast<double>(rec.counts.at("1")) / 100000.0;
  CHECK(frac > 0.494);
  CHECK(frac < 0.506);

  const StateVector one = apply_gate(StateVector::zero_state(1), GateOp::x(0));
  const MeasurementRecord sure = sample(one, {0}, 1024, 7);
  CHECK(sure.counts.at("1") == 1024);
  CHECK(sure.counts.size() == 1);

  const MeasurementRecord again = sample(plus, {0}, 100000, 99);
  CHECK(rec.counts == again.counts);
}

TEST_CASE("flag counts for the two-qubit instance sit near N/4") {
  // 1024 shots at a = 1/4: expect ~256 hits (a device run saw 248).
  const AOperator a_op = build_a(ProblemSpec::from_bitstrings(2, {"01"}));
  const StateVector state =
      run_circuit(a_op.circuit, StateVector::zero_state(3));
  const MeasurementRecord rec = sample(state, {a_op.flag_qubit()}, 1024, 2020);
  const std::int64_t hits = rec.counts.at("1");
  CHECK(hits > 194);  // 256 +- 4.5 sigma, sigma = 13.9
  CHECK(hits < 318);
}

TEST_CASE("exact marginals") {
  const StateVector plus = apply_gate(StateVector::zero_state(1), GateOp::h(0));
  CHECK(probability_of(plus, 0, 1) == doctest::Approx(0.5).epsilon(1e-12));

  Circuit bell(2);
  bell.append(GateOp::h(0));
  bell.append(GateOp::cnot(0, 1));
  const StateVector out = run_circuit(bell, StateVector::zero_state(2));
  const std::vector<double> joint = marginal_probabilities(out, {0, 1});
  CHECK(joint[0] == doctest::Approx(0.5));
  CHECK(joint[3] == doctest::Approx(0.5));
  CHECK(joint[1] == doctest::Approx(0.0));
}

TEST_CASE("precondition failures") {
  CHECK_THROWS_AS(apply_gate(StateVector::zero_state(2), GateOp::x(5)), std::out_of_range);
  CHECK_THROWS_AS(apply_gate(StateVector::zero_state(2), GateOp::cnot(1, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_circuit(Circuit(3), StateVector::zero_state(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(sample(StateVector::zero_state(1), {}, 10, 0), std::invalid_argument);
  CHECK_THROWS_AS(sample(StateVector::zero_state(1), {0}, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(StateVector::zero_state(15), std::invalid_argument);
}

TEST_CASE("bitstrings render most significant bit first") {
  CHECK(bitstring(1, 3) == "001");
  CHECK(bitstring(6, 3) == "110");
  CHECK(bitstring_index("110") == 6);
  CHECK(bitstring_index("001") == 1);
}

TEST_CASE("text format round-trips circuits") {
  CounterRng rng(31337);
  for (int trial = 0; trial < 6; ++trial) {
    Circuit circuit = repro::random_circuit(rng, 3, 14);
    circuit.measured_qubits = {0, 2};
    const Circuit parsed = circuit_from_text(circuit_to_text(circuit));
    CHECK(parsed.num_qubits == circuit.num_qubits);
    CHECK(parsed.measured_qubits == circuit.measured_qubits);
    REQUIRE(parsed.ops.size() == circuit.ops.size());
    for (std::size_t k = 0; k < circuit.ops.size(); ++k) {
      CHECK(parsed.ops[k].kind == circuit.ops[k].kind);
      CHECK(parsed.ops[k].targets == circuit.ops[k].targets);
      CHECK(parsed.ops[k].controls == circuit.ops[k].controls);
      for (int a = 0; a < angle_count(circuit.ops[k].kind); ++a)
        CHECK(parsed.ops[k].angles[a] == doctest::Approx(circuit.ops[k].angles[a]));
    }
  }
  CHECK_THROWS(circuit_from_text("BOGUS 0\n"));
}

TEST_SUITE_END();
