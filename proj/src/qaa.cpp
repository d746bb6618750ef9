#include "qaelab/qaa.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qaelab {

namespace {
constexpr double kPi = std::numbers::pi;
}

double ProblemSpec::amplitude() const {
  return static_cast<double>(good_states.size()) / static_cast<double>(domain_size());
}

double ProblemSpec::theta() const { return std::asin(std::sqrt(amplitude())); }

ProblemSpec ProblemSpec::from_bitstrings(int num_domain_qubits,
                                         const std::vector<std::string>& bits) {
  ProblemSpec spec;
  spec.num_domain_qubits = num_domain_qubits;
  for (const std::string& b : bits) {
    if (static_cast<int>(b.size()) != num_domain_qubits)
      throw std::invalid_argument("good-state bitstring width mismatch: " + b);
    spec.good_states.insert(bitstring_index(b));
  }
  return spec;
}

AOperator build_a(const ProblemSpec& spec) {
  const int n = spec.num_domain_qubits;
  if (n < 1 || n + 1 > kMaxQubits) throw std::invalid_argument("domain size out of range");
  for (std::uint64_t g : spec.good_states)
    if (g >= spec.domain_size()) throw std::invalid_argument("good state outside domain");

  Circuit circuit(n + 1);
  const int flag = n;
  for (int q = 0; q < n; ++q) circuit.append(GateOp::h(q));
  std::vector<int> domain(n);
  for (int q = 0; q < n; ++q) domain[q] = q;
  // One marker per good state: X-conjugate the zero bits, then flip the flag
  // on the all-ones pattern. good_states iterates in ascending order.
  for (std::uint64_t g : spec.good_states) {
    std::vector<int> flipped;
    for (int q = 0; q < n; ++q)
      if (((g >> q) & 1ULL) == 0) flipped.push_back(q);
    for (int q : flipped) circuit.append(GateOp::x(q));
    circuit.append(GateOp::mcx(domain, flag));
    for (int q : flipped) circuit.append(GateOp::x(q));
  }
  return AOperator{std::move(circuit), spec};
}

Circuit build_a_inverse(const AOperator& a_op) { return a_op.circuit.adjoint(); }

GroverOperator build_q(const AOperator& a_op) {
  const int n = a_op.spec.num_domain_qubits;
  const int width = n + 1;
  const int flag = n;

  Circuit s_chi(width);
  s_chi.append(GateOp::z(flag));

  // Reflection about |0...0> with an overall -1: X-conjugated multi-controlled
  // Z gives I - 2|0><0|, and the RZ(2pi) flips the global sign so that the
  // composed Q has eigenvalues exp(+-2i*theta) on the amplified plane (and
  // fixes the a = 0 state exactly).
  Circuit s_zero(width);
  for (int q = 0; q < width; ++q) s_zero.append(GateOp::x(q));
  std::vector<int> domain(n);
  for (int q = 0; q < n; ++q) domain[q] = q;
  GateOp mcz = GateOp::z(flag);
  for (int q : domain) mcz = mcz.controlled(q);
  s_zero.append(mcz);
  for (int q = 0; q < width; ++q) s_zero.append(GateOp::x(q));
  s_zero.append(GateOp::rz(flag, 2.0 * kPi));

  Circuit a_inverse = build_a_inverse(a_op);

  Circuit circuit(width);
  circuit.append(s_chi);
  circuit.append(a_inverse);
  circuit.append(s_zero);
  circuit.append(a_op.circuit);

  return GroverOperator{std::move(circuit), std::move(s_chi), std::move(a_inverse),
                        std::move(s_zero), a_op.circuit};
}

StateVector apply_q_power(const AOperator& a_op, const GroverOperator& q_op, int power) {
  if (power < 0) throw std::invalid_argument("negative Q power");
  StateVector state = StateVector::zero_state(a_op.num_qubits());
  state = run_circuit(a_op.circuit, std::move(state));
  for (int k = 0; k < power; ++k) state = run_circuit(q_op.circuit, std::move(state));
  return state;
}

double analytic_success_probability(const ProblemSpec& spec, int power) {
  const double angle = (2.0 * power + 1.0) * spec.theta();
  const double s = std::sin(angle);
  return s * s;
}

}  // namespace qaelab
