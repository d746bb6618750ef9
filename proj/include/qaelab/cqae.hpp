#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qaelab/qaa.hpp"
#include "qaelab/statevec.hpp"

namespace qaelab {

struct CQAEConfig {
  int ancillae = 1;  // m; readout grid is {pi*y/2^m}
  ProblemSpec spec;
  std::int64_t shots = 1024;
  std::uint64_t seed = 0;
  bool exact = false;  // bypass sampling, use the exact ancilla distribution
};

struct CQAEResult {
  std::map<std::string, std::int64_t> histogram;  // ancilla bitstring -> count
  std::vector<double> exact_distribution;         // indexed by y; empty unless exact
  double theta_estimate = 0.0;
  double amplitude_estimate = 0.0;
};

// Standard inverse QFT: on input |k> the output amplitude on |j> is
// (1/sqrt(M)) * exp(-2*pi*i*j*k/M), with bit b of the register index carried
// by qubits[b].
Circuit inverse_qft(const std::vector<int>& qubits);
Circuit qft(const std::vector<int>& qubits);

// H on each ancilla; A on the target register; 2^j ancilla-j-controlled Q
// blocks; inverse QFT on the ancillae; ancillae measured. Ancilla j lives at
// qubit index n+1+j. Controlled Q adds one control to every gate of Q.
Circuit build_cqae_circuit(const CQAEConfig& config);

// Total controlled-Q applications in the circuit for m ancillae: 2^m - 1.
std::int64_t cqae_controlled_q_count(int ancillae);

// Reading y on the m-ancilla grid maps to theta = pi*y/2^m folded into
// [0, pi/2]; y and 2^m - y are equivalent readings.
double fold_grid_angle(std::uint64_t y, int ancillae);

// Simulates, reads the ancillae, and returns the modal folded grid angle
// (ties broken toward the smaller angle) with amplitude sin^2(theta).
CQAEResult run_cqae(const CQAEConfig& config);

}  // namespace qaelab
