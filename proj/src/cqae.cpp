#include "qaelab/cqae.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qaelab {

namespace {
constexpr double kPi = std::numbers::pi;
}

Circuit qft(const std::vector<int>& qubits) {
  if (qubits.empty()) throw std::invalid_argument("qft needs at least one qubit");
  const int m = static_cast<int>(qubits.size());
  Circuit circuit(*std::max_element(qubits.begin(), qubits.end()) + 1);
  // qubits[b] carries bit b of the register value; process the most
  // significant bit first, then undo the implicit bit reversal with swaps.
  for (int i = m - 1; i >= 0; --i) {
    circuit.append(GateOp::h(qubits[i]));
    for (int j = i - 1; j >= 0; --j) {
      const double angle = 2.0 * kPi / std::pow(2.0, i - j + 1);
      circuit.append(GateOp::phase(qubits[i], angle).controlled(qubits[j]));
    }
  }
  for (int k = 0; k < m / 2; ++k)
    circuit.append(GateOp::swap(qubits[k], qubits[m - 1 - k]));
  return circuit;
}

Circuit inverse_qft(const std::vector<int>& qubits) { return qft(qubits).adjoint(); }

Circuit build_cqae_circuit(const CQAEConfig& config) {
  if (config.ancillae < 1) throw std::invalid_argument("need at least one ancilla");
  const int n = config.spec.num_domain_qubits;
  const int m = config.ancillae;
  const int width = n + 1 + m;
  if (width > kMaxQubits) throw std::invalid_argument("qubit count exceeds simulator cap");

  const AOperator a_op = build_a(config.spec);
  const GroverOperator q_op = build_q(a_op);

  Circuit circuit(width);
  std::vector<int> ancillae(m);
  for (int j = 0; j < m; ++j) ancillae[j] = n + 1 + j;

  for (int j = 0; j < m; ++j) circuit.append(GateOp::h(ancillae[j]));
  circuit.append(a_op.circuit);
  // Ancilla j controls 2^j copies of Q; every gate of Q gains one control.
  for (int j = 0; j < m; ++j) {
    const Circuit controlled_q = q_op.circuit.controlled(ancillae[j]);
    for (std::int64_t rep = 0; rep < (std::int64_t{1} << j); ++rep)
      circuit.append(controlled_q);
  }
  circuit.append(inverse_qft(ancillae));
  circuit.measured_qubits = ancillae;
  return circuit;
}

std::int64_t cqae_controlled_q_count(int ancillae) {
  if (ancillae < 0) throw std::invalid_argument("negative ancilla count");
  return (std::int64_t{1} << ancillae) - 1;
}

double fold_grid_angle(std::uint64_t y, int ancillae) {
  const double m_size = std::pow(2.0, ancillae);
  const double theta = kPi * static_cast<double>(y) / m_size;
  return theta > kPi / 2.0 ? kPi - theta : theta;
}

CQAEResult run_cqae(const CQAEConfig& config) {
  const Circuit circuit = build_cqae_circuit(config);
  const StateVector state =
      run_circuit(circuit, StateVector::zero_state(circuit.num_qubits));

  const int m = config.ancillae;
  const std::uint64_t grid = std::uint64_t{1} << m;
  std::vector<double> weights(grid, 0.0);

  CQAEResult result;
  if (config.exact) {
    result.exact_distribution = marginal_probabilities(state, circuit.measured_qubits);
    weights = result.exact_distribution;
  } else {
    const MeasurementRecord rec =
        sample(state, circuit.measured_qubits, config.shots, config.seed);
    result.histogram = rec.counts;
    for (const auto& [bits, count] : rec.counts)
      weights[bitstring_index(bits)] = static_cast<double>(count);
  }

  // Readings y and grid - y alias the same angle; pick the heaviest folded
  // angle, ties toward the smaller one.
  double best_mass = -1.0;
  std::uint64_t best_y = 0;
  for (std::uint64_t y = 0; y <= grid / 2; ++y) {
    double mass = weights[y];
    const std::uint64_t mirror = (grid - y) % grid;
    if (mirror != y) mass += weights[mirror];
    if (mass > best_mass + 1e-15) {
      best_mass = mass;
      best_y = y;
    }
  }
  result.theta_estimate = fold_grid_angle(best_y, m);
  const double s = std::sin(result.theta_estimate);
  result.amplitude_estimate = s * s;
  return result;
}

}  // namespace qaelab
