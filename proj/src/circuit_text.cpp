#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qaelab/statevec.hpp"

namespace qaelab {

namespace {

std::string format_angle(double a) {
  std::ostringstream os;
  os.precision(17);
  os << a;
  return os.str();
}

}  // namespace

std::string circuit_to_text(const Circuit& circuit) {
  std::ostringstream os;
  os << "# qubits " << circuit.num_qubits << "\n";
  for (const GateOp& op : circuit.ops) {
    os << kind_name(op.kind);
    for (int t : op.targets) os << ' ' << t;
    for (int c : op.controls) os << ' ' << c;
    for (int k = 0; k < angle_count(op.kind); ++k) os << ' ' << format_angle(op.angles[k]);
    os << "\n";
  }
  if (!circuit.measured_qubits.empty()) {
    os << "MEASURE";
    for (int q : circuit.measured_qubits) os << ' ' << q;
    os << "\n";
  }
  return os.str();
}

Circuit circuit_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<GateOp> ops;
  std::vector<int> measured;
  int declared_qubits = 0;
  int max_qubit = -1;
  while (std::getline(is, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      // "# qubits N" declares width; other comments are ignored.
      std::istringstream cs(line.substr(hash + 1));
      std::string word;
      int n = 0;
      if (cs >> word >> n && word == "qubits") declared_qubits = n;
      line.resize(hash);
    }
    std::istringstream ls(line);
    std::string name;
    if (!(ls >> name)) continue;
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);

    if (name == "MEASURE") {
      for (const std::string& t : tokens) measured.push_back(std::stoi(t));
      continue;
    }

    GateOp op;
    op.kind = kind_from_name(name);
    const int n_targets = op.kind == GateKind::SWAP ? 2 : 1;
    const int n_angles = angle_count(op.kind);
    if (static_cast<int>(tokens.size()) < n_targets + n_angles)
      throw std::invalid_argument("too few fields on line: " + line);
    const int n_controls = static_cast<int>(tokens.size()) - n_targets - n_angles;
    int idx = 0;
    for (int k = 0; k < n_targets; ++k) op.targets.push_back(std::stoi(tokens[idx++]));
    for (int k = 0; k < n_controls; ++k) op.controls.push_back(std::stoi(tokens[idx++]));
    for (int k = 0; k < n_angles; ++k) op.angles[k] = std::stod(tokens[idx++]);
    ops.push_back(std::move(op));
  }

  for (const GateOp& op : ops)
    for (int q : op.qubits()) max_qubit = std::max(max_qubit, q);
  for (int q : measured) max_qubit = std::max(max_qubit, q);

  Circuit circuit(std::max(declared_qubits, max_qubit + 1));
  for (GateOp& op : ops) circuit.append(std::move(op));
  circuit.measured_qubits = std::move(measured);
  return circuit;
}

Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open circuit file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return circuit_from_text(os.str());
}

void save_circuit(const Circuit& circuit, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write circuit file: " + path);
  out << circuit_to_text(circuit);
}

}  // namespace qaelab
