#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qaelab/statevec.hpp"

namespace qaelab {

// Gate kinds a device accepts. The default is the U1/U2/U3-style single-qubit
// family (PHASE, U2, U3) plus CNOT.
struct BasisGateSet {
  std::set<GateKind> kinds;

  bool allows(const GateOp& op) const;
  static BasisGateSet default_basis();
};

// Undirected device connectivity graph.
struct CouplingMap {
  std::string name;
  int num_qubits = 0;
  std::set<std::pair<int, int>> edges;  // normalized u < v

  void add_edge(int u, int v);
  bool coupled(int u, int v) const;
  bool connected() const;

  // BFS shortest path with deterministic lowest-index tie-break.
  std::vector<int> shortest_path(int from, int to) const;

  static CouplingMap fully_connected(int num_qubits, std::string name = "full");
  static CouplingMap from_json_text(const std::string& text);
  std::string to_json_text() const;
  static CouplingMap load(const std::string& path);

  // Shipped device presets.
  static CouplingMap ibmqx2();
  static CouplingMap vigo();
};

struct LoweredCircuit {
  Circuit circuit;                  // over physical qubits
  std::vector<int> initial_layout;  // logical -> physical
  std::vector<int> final_layout;    // logical -> physical after routing swaps
  int depth = 0;
  std::map<std::string, int> gate_counts;
  int swaps_inserted = 0;
};

// Critical path length under greedy layering on disjoint qubit support;
// measurement excluded.
int depth(const Circuit& circuit);

std::map<std::string, int> gate_counts(const Circuit& circuit);

// Standard 6-CNOT + H/T/Tdg network on qubits (0, 1 -> 2).
Circuit decompose_toffoli();

enum class McxMode { Basic, Advanced };

// Multi-controlled NOT with k = num_controls controls (0..k-1) and target k.
// Advanced: ancilla-free recursive construction (controlled roots of X).
// Basic: Toffoli V-chain through k-2 ancillae appended after the target;
// ancillae are restored to |0>.
Circuit decompose_mcx(int num_controls, McxMode mode);

// Rewrites every op into basis kinds; matrix-equivalent up to global phase.
Circuit lower(const Circuit& circuit, const BasisGateSet& basis = BasisGateSet::default_basis());

// SWAP insertion along shortest paths so every two-qubit gate acts on a
// coupled pair; inserted SWAPs are emitted as 3 CNOTs. Requires ops on at
// most 2 qubits (lower() first). The routed circuit equals the original
// composed with the layout permutations, up to global phase.
LoweredCircuit route(const Circuit& circuit, const CouplingMap& coupling,
                     std::optional<std::vector<int>> initial_layout = std::nullopt);

}  // namespace qaelab
