#include "qaelab/noise.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qaelab/rng.hpp"
#include "qaelab/transpile.hpp"

namespace qaelab {

double NoiseModel::effective(double base) const {
  return std::clamp(base * scale, 0.0, 1.0);
}

NoiseModel NoiseModel::validated(double single_q, double two_q, double scale) {
  if (single_q < 0.0 || single_q > 0.5 || two_q < 0.0 || two_q > 0.5)
    throw std::invalid_argument("gate error probabilities must lie in [0, 0.5]");
  if (scale < 0.0) throw std::invalid_argument("noise scale must be nonnegative");
  return NoiseModel{single_q, two_q, scale};
}

MeasurementRecord noisy_run(const Circuit& circuit, const NoiseModel& model,
                            std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (circuit.measured_qubits.empty())
    throw std::invalid_argument("circuit has no measured qubits");
  const BasisGateSet basis = BasisGateSet::default_basis();
  for (const GateOp& op : circuit.ops)
    if (!basis.allows(op))
      throw std::invalid_argument("noisy_run requires a circuit lowered to basis gates");

  const double p1 = model.effective(model.single_qubit_error);
  const double p2 = model.effective(model.two_qubit_error);

  // A vanishing channel is exactly noiseless sampling, same seed semantics.
  if (p1 <= 0.0 && p2 <= 0.0) {
    const StateVector state = run_circuit(circuit, StateVector::zero_state(circuit.num_qubits));
    return sample(state, circuit.measured_qubits, shots, seed);
  }

  MeasurementRecord record;
  record.shots = shots;
  record.seed = seed;
  const CounterRng base(seed);
  const int width = static_cast<int>(circuit.measured_qubits.size());
  std::vector<std::int64_t> raw(std::uint64_t{1} << width, 0);

  for (std::int64_t shot = 0; shot < shots; ++shot) {
    CounterRng rng = base.substream(static_cast<std::uint64_t>(shot));
    StateVector state = StateVector::zero_state(circuit.num_qubits);
    for (const GateOp& op : circuit.ops) {
      state = apply_gate(std::move(state), op);
      const double p = op.kind == GateKind::CNOT ? p2 : p1;
      if (p <= 0.0) continue;
      for (int q : op.qubits()) {
        if (rng.next_double() >= p) continue;
        switch (rng.next_below(3)) {
          case 0: state = apply_gate(std::move(state), GateOp::x(q)); break;
          case 1: state = apply_gate(std::move(state), GateOp::y(q)); break;
          default: state = apply_gate(std::move(state), GateOp::z(q)); break;
        }
      }
    }
    const std::vector<double> probs = marginal_probabilities(state, circuit.measured_qubits);
    const double u = rng.next_double();
    double acc = 0.0;
    std::uint64_t outcome = probs.size() - 1;
    for (std::uint64_t y = 0; y < probs.size(); ++y) {
      acc += probs[y];
      if (u < acc) {
        outcome = y;
        break;
      }
    }
    raw[outcome] += 1;
  }

  for (std::uint64_t y = 0; y < raw.size(); ++y)
    if (raw[y] > 0) record.counts[bitstring(y, width)] = raw[y];
  return record;
}

NoiseModel noise_preset(const std::string& name, double scale,
                        const std::string& calibration_path) {
  std::ifstream in(calibration_path);
  if (!in) throw std::runtime_error("cannot open calibration file: " + calibration_path);
  std::ostringstream os;
  os << in.rdbuf();
  const nlohmann::json j = nlohmann::json::parse(os.str());

  // "<preset>", "<preset>-min" or "<preset>-max"; bare names use midpoints of
  // the calibrated (min, max) error pairs.
  std::string key = name;
  int pick = 0;  // 0 = midpoint, -1 = min, +1 = max
  if (key.ends_with("-min")) {
    pick = -1;
    key.resize(key.size() - 4);
  } else if (key.ends_with("-max")) {
    pick = 1;
    key.resize(key.size() - 4);
  }

  const auto& presets = j.at("presets");
  if (!presets.contains(key)) throw std::invalid_argument("unknown noise preset: " + name);
  const auto& entry = presets.at(key);
  const auto select = [pick](const nlohmann::json& pair) {
    const double lo = pair.at(0).get<double>();
    const double hi = pair.at(1).get<double>();
    if (pick < 0) return lo;
    if (pick > 0) return hi;
    return (lo + hi) / 2.0;
  };
  return NoiseModel::validated(select(entry.at("u2_error")), select(entry.at("cnot_error")),
                               scale);
}

std::pair<std::string, double> parse_noise_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return {spec, 1.0};
  return {spec.substr(0, colon), std::stod(spec.substr(colon + 1))};
}

}  // namespace qaelab
