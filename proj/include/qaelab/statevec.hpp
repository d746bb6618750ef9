#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qaelab {

using complex_t = std::complex<double>;

inline constexpr int kMaxQubits = 14;  // dense vectors only

enum class GateKind {
  X,
  Y,
  Z,
  H,
  S,
  T,
  RZ,
  CNOT,
  CZ,
  TOFFOLI,
  MCX,
  SWAP,
  PHASE,
  U2,
  U3,
};

std::string_view kind_name(GateKind kind);
GateKind kind_from_name(std::string_view name);

// Number of angle parameters a kind carries (RZ/PHASE: 1, U2: 2, U3: 3).
int angle_count(GateKind kind);

// One gate application: `kind` names the base unitary acting on `targets`;
// `controls` condition it on all listed qubits being |1>. CNOT/CZ/TOFFOLI/MCX
// are the canonical names for controlled X/Z; their base matrix is X or Z.
struct GateOp {
  GateKind kind = GateKind::X;
  std::vector<int> targets;
  std::vector<int> controls;
  std::array<double, 3> angles{0.0, 0.0, 0.0};

  static GateOp x(int target);
  static GateOp y(int target);
  static GateOp z(int target);
  static GateOp h(int target);
  static GateOp s(int target);
  static GateOp t(int target);
  static GateOp rz(int target, double angle);
  static GateOp phase(int target, double angle);
  static GateOp cnot(int control, int target);
  static GateOp cz(int control, int target);
  static GateOp toffoli(int control0, int control1, int target);
  static GateOp mcx(std::vector<int> controls, int target);
  static GateOp swap(int a, int b);
  static GateOp u2(int target, double phi, double lam);
  static GateOp u3(int target, double theta, double phi, double lam);

  // Exact gate inverse (same kind family; angles negated/swapped as needed).
  GateOp adjoint() const;

  // Same unitary with one more control qubit; kind is renamed to the
  // canonical controlled form where one exists (X -> CNOT -> TOFFOLI -> MCX,
  // Z -> CZ).
  GateOp controlled(int control) const;

  // The single-qubit base kind behind canonical controlled names
  // (CNOT/TOFFOLI/MCX -> X, CZ -> Z); other kinds map to themselves.
  GateKind base_kind() const;

  // targets + controls, in that order.
  std::vector<int> qubits() const;

  bool operator==(const GateOp&) const = default;
};

struct Circuit {
  int num_qubits = 0;
  std::vector<GateOp> ops;
  std::vector<int> measured_qubits;

  Circuit() = default;
  explicit Circuit(int n) : num_qubits(n) {}

  // Validates qubit indices and target/control disjointness.
  void append(GateOp op);
  void append(const Circuit& sub);

  // Gate-wise reversed, element-wise inverted circuit.
  Circuit adjoint() const;

  // Every gate conditioned on one extra control qubit.
  Circuit controlled(int control) const;
};

struct StateVector {
  int num_qubits = 0;
  std::vector<complex_t> amplitudes;

  static StateVector zero_state(int num_qubits);
  static StateVector basis_state(int num_qubits, std::uint64_t index);

  std::uint64_t dim() const { return std::uint64_t{1} << num_qubits; }
  double norm() const;
};

struct MeasurementRecord {
  std::int64_t shots = 0;
  std::map<std::string, std::int64_t> counts;  // bitstring (msb left) -> count
  std::uint64_t seed = 0;
};

// Applies op's unitary (controls honored); preserves the norm.
StateVector apply_gate(StateVector state, const GateOp& op);

// Sequential application of all ops; deterministic.
StateVector run_circuit(const Circuit& circuit, StateVector initial);

// Exact marginal distribution over the listed qubits; entry y has bit j of y
// equal to the value of qubits[j].
std::vector<double> marginal_probabilities(const StateVector& state,
                                           const std::vector<int>& qubits);

// Exact marginal probability that `qubit` reads `value`.
double probability_of(const StateVector& state, int qubit, int value);

// Seeded i.i.d. draws from the marginal distribution on the given qubits
// (inverse-CDF over a counter-based stream); equal seeds give equal counts.
MeasurementRecord sample(const StateVector& state, const std::vector<int>& qubits,
                         std::int64_t shots, std::uint64_t seed);

// Renders y as a bitstring of `width` characters, most significant bit left.
std::string bitstring(std::uint64_t y, int width);

// Inverse of bitstring().
std::uint64_t bitstring_index(std::string_view bits);

// Line-oriented text format: `GATE target [controls...] [angles...]`, one op
// per line, `#` comments, optional trailing `MEASURE q...` line.
std::string circuit_to_text(const Circuit& circuit);
Circuit circuit_from_text(const std::string& text);
Circuit load_circuit(const std::string& path);
void save_circuit(const Circuit& circuit, const std::string& path);

}  // namespace qaelab
