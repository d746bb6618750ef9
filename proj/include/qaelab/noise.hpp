#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qaelab/statevec.hpp"

namespace qaelab {

// Per-gate stochastic Pauli injection. Probabilities are per basis gate:
// single_qubit_error for PHASE/U2/U3, two_qubit_error per CNOT, applied
// independently per touched qubit. scale = 0 disables the channel.
struct NoiseModel {
  double single_qubit_error = 0.0;  // in [0, 0.5]
  double two_qubit_error = 0.0;     // in [0, 0.5]
  double scale = 1.0;               // nonnegative multiplier

  double effective(double base) const;
  static NoiseModel validated(double single_q, double two_q, double scale);
};

// Runs `shots` noisy executions of a circuit already lowered to the default
// basis gate set and samples circuit.measured_qubits once per shot. After
// each gate, each touched qubit independently suffers a uniformly random
// non-identity Pauli with the model probability. Per-shot RNG substreams
// derive from (seed, shot), so shots can be partitioned without changing
// results.
MeasurementRecord noisy_run(const Circuit& circuit, const NoiseModel& model,
                            std::int64_t shots, std::uint64_t seed);

// Calibration presets stored as {"presets": {name: {"u2_error": [lo,hi],
// "cnot_error": [lo,hi]}}}. A bare name uses the midpoints; "<name>-min" and
// "<name>-max" pick the endpoints.
NoiseModel noise_preset(const std::string& name, double scale,
                        const std::string& calibration_path);

// Parses "preset" or "preset:scale".
std::pair<std::string, double> parse_noise_spec(const std::string& spec);

}  // namespace qaelab
