#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "qaelab/statevec.hpp"

namespace qaelab {

// Marked-states instance: n domain qubits, N = 2^n basis states, k of them
// good; a = k/N and theta = asin(sqrt(a)).
struct ProblemSpec {
  int num_domain_qubits = 0;
  std::set<std::uint64_t> good_states;

  std::uint64_t domain_size() const { return std::uint64_t{1} << num_domain_qubits; }
  double amplitude() const;  // a = k/N
  double theta() const;      // asin(sqrt(a)), in [0, pi/2]

  // Bitstrings are most-significant-left ("01" with n=2 marks index 1).
  static ProblemSpec from_bitstrings(int num_domain_qubits,
                                     const std::vector<std::string>& bits);
};

// State preparation operator on n+1 qubits (domain + flag). The flag is the
// highest-index qubit. A|0...0> puts amplitude sqrt(a) on the flagged good
// superposition and sqrt(1-a) on the unflagged bad one.
struct AOperator {
  Circuit circuit;
  ProblemSpec spec;

  int num_qubits() const { return spec.num_domain_qubits + 1; }
  int flag_qubit() const { return spec.num_domain_qubits; }
};

// Amplification operator Q applied as: flag phase flip, then A^-1, then the
// reflection about |0...0>, then A. Components are kept in application order.
struct GroverOperator {
  Circuit circuit;
  Circuit s_chi;
  Circuit a_inverse;
  Circuit s_zero;
  Circuit a;
};

// Hadamards on the domain register, then one X-conjugated multi-controlled
// NOT onto the flag per good state.
AOperator build_a(const ProblemSpec& spec);

// Gate-wise reversed, element-wise inverted A circuit.
Circuit build_a_inverse(const AOperator& a_op);

GroverOperator build_q(const AOperator& a_op);

// Q^m * A |0...0>.
StateVector apply_q_power(const AOperator& a_op, const GroverOperator& q_op, int power);

// sin^2((2m+1) * asin(sqrt(k/N))).
double analytic_success_probability(const ProblemSpec& spec, int power);

}  // namespace qaelab
