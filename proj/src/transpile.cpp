#include "qaelab/transpile.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qaelab {

namespace {

constexpr double kPi = std::numbers::pi;
using Mat2 = std::array<complex_t, 4>;

// --- small 2x2 helpers for controlled-unitary synthesis ---

Mat2 kind_matrix(const GateOp& op) {
  const complex_t i{0.0, 1.0};
  const double r = 1.0 / std::sqrt(2.0);
  switch (op.base_kind()) {
    case GateKind::X: return {0, 1, 1, 0};
    case GateKind::Y: return {0, -i, i, 0};
    case GateKind::Z: return {1, 0, 0, -1};
    case GateKind::H: return {r, r, r, -r};
    case GateKind::S: return {1, 0, 0, i};
    case GateKind::T: return {1, 0, 0, std::exp(i * kPi / 4.0)};
    case GateKind::RZ:
      return {std::exp(-i * op.angles[0] / 2.0), 0, 0, std::exp(i * op.angles[0] / 2.0)};
    case GateKind::PHASE: return {1, 0, 0, std::exp(i * op.angles[0])};
    case GateKind::U2: {
      const double phi = op.angles[0], lam = op.angles[1];
      return {r, -r * std::exp(i * lam), r * std::exp(i * phi), r * std::exp(i * (phi + lam))};
    }
    case GateKind::U3: {
      const double c = std::cos(op.angles[0] / 2.0), s = std::sin(op.angles[0] / 2.0);
      const double phi = op.angles[1], lam = op.angles[2];
      return {complex_t{c, 0}, -s * std::exp(i * lam), s * std::exp(i * phi),
              c * std::exp(i * (phi + lam))};
    }
    default:
      throw std::logic_error("no 2x2 matrix for this kind");
  }
}

Mat2 mat_adjoint(const Mat2& m) {
  return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

// Principal square root of a 2x2 unitary via spectral projectors.
Mat2 mat_sqrt(const Mat2& u) {
  const complex_t i{0.0, 1.0};
  const complex_t tr = u[0] + u[3];
  const complex_t det = u[0] * u[3] - u[1] * u[2];
  const complex_t disc = std::sqrt(tr * tr - 4.0 * det);
  const complex_t l1 = (tr + disc) / 2.0;
  const complex_t l2 = (tr - disc) / 2.0;
  const auto principal = [&](complex_t l) { return std::exp(i * (std::arg(l) / 2.0)); };
  if (std::abs(l1 - l2) < 1e-12) {
    const complex_t s = principal(l1);
    return {s * u[0] / l1, s * u[1] / l1, s * u[2] / l1, s * u[3] / l1};
  }
  const complex_t s1 = principal(l1), s2 = principal(l2);
  // P1 = (u - l2 I)/(l1 - l2), P2 = I - P1
  Mat2 out;
  const Mat2 id{1, 0, 0, 1};
  for (int k = 0; k < 4; ++k) {
    const complex_t p1 = (u[k] - l2 * id[k]) / (l1 - l2);
    const complex_t p2 = id[k] - p1;
    out[k] = s1 * p1 + s2 * p2;
  }
  return out;
}

// u = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta)
struct Zyz {
  double alpha, beta, gamma, delta;
};

Zyz zyz_decompose(const Mat2& u) {
  const complex_t i{0.0, 1.0};
  const complex_t det = u[0] * u[3] - u[1] * u[2];
  const double alpha = std::arg(det) / 2.0;
  const complex_t v00 = u[0] * std::exp(-i * alpha);
  const complex_t v10 = u[2] * std::exp(-i * alpha);
  const double gamma = 2.0 * std::atan2(std::abs(v10), std::abs(v00));
  double beta = 0.0, delta = 0.0;
  if (std::abs(v10) < 1e-12) {
    beta = -2.0 * std::arg(v00);
  } else if (std::abs(v00) < 1e-12) {
    beta = 2.0 * std::arg(v10);
  } else {
    const double sum = -2.0 * std::arg(v00);
    const double diff = 2.0 * std::arg(v10);
    beta = (sum + diff) / 2.0;
    delta = (sum - diff) / 2.0;
  }
  return {alpha, beta, gamma, delta};
}

using Ops = std::vector<GateOp>;

void extend(Ops& ops, Ops more) {
  for (GateOp& op : more) ops.push_back(std::move(op));
}

// Controlled phase, exact: diag(1,1,1,e^{i angle}).
Ops cphase_ops(int c, int t, double angle) {
  return {GateOp::phase(c, angle / 2.0), GateOp::cnot(c, t), GateOp::phase(t, -angle / 2.0),
          GateOp::cnot(c, t), GateOp::phase(t, angle / 2.0)};
}

// Controlled X^alpha, exact: X^alpha = H PHASE(pi*alpha) H.
Ops cxpow_ops(int c, int t, double alpha) {
  Ops ops{GateOp::h(t)};
  extend(ops, cphase_ops(c, t, kPi * alpha));
  ops.push_back(GateOp::h(t));
  return ops;
}

// Standard 6-CNOT Toffoli network; exact.
Ops toffoli_ops(int c0, int c1, int t) {
  const double q = kPi / 4.0;
  return {GateOp::h(t),          GateOp::cnot(c1, t),    GateOp::phase(t, -q),
          GateOp::cnot(c0, t),   GateOp::t(t),           GateOp::cnot(c1, t),
          GateOp::phase(t, -q),  GateOp::cnot(c0, t),    GateOp::t(c1),
          GateOp::t(t),          GateOp::h(t),           GateOp::cnot(c0, c1),
          GateOp::t(c0),         GateOp::phase(c1, -q),  GateOp::cnot(c0, c1)};
}

Ops mcx_advanced_ops(const std::vector<int>& controls, int target);

// Multi-controlled X^alpha via the controlled-root recursion.
Ops mc_xpow_ops(const std::vector<int>& controls, int target, double alpha) {
  if (controls.size() == 1) return cxpow_ops(controls[0], target, alpha);
  const int c = controls.back();
  const std::vector<int> rest(controls.begin(), controls.end() - 1);
  Ops ops = cxpow_ops(c, target, alpha / 2.0);
  const Ops inner = rest.size() == 1
                        ? Ops{GateOp::cnot(rest[0], c)}
                        : (rest.size() == 2 ? Ops{GateOp::toffoli(rest[0], rest[1], c)}
                                            : mcx_advanced_ops(rest, c));
  extend(ops, inner);
  extend(ops, cxpow_ops(c, target, -alpha / 2.0));
  extend(ops, inner);
  extend(ops, mc_xpow_ops(rest, target, alpha / 2.0));
  return ops;
}

// Ancilla-free multi-controlled NOT: C^k(X) = C(V) MCX_{k-1} C(V^-1) MCX_{k-1}
// C^{k-1}(V) with V = sqrt(X), recursing on the roots. Emits H/PHASE/CNOT
// plus atomic TOFFOLIs.
Ops mcx_advanced_ops(const std::vector<int>& controls, int target) {
  const std::size_t k = controls.size();
  if (k == 1) return {GateOp::cnot(controls[0], target)};
  if (k == 2) return toffoli_ops(controls[0], controls[1], target);
  const int c = controls.back();
  const std::vector<int> rest(controls.begin(), controls.end() - 1);
  Ops ops = cxpow_ops(c, target, 0.5);
  const Ops inner = rest.size() == 2 ? Ops{GateOp::toffoli(rest[0], rest[1], c)}
                                     : mcx_advanced_ops(rest, c);
  extend(ops, inner);
  extend(ops, cxpow_ops(c, target, -0.5));
  extend(ops, inner);
  extend(ops, mc_xpow_ops(rest, target, 0.5));
  return ops;
}

// One-control generic unitary via the ZYZ "ABC" split:
// CU = PHASE(alpha)_c . A . CX . B . CX . C with A B C = I.
Ops controlled_u_ops(int c, int t, const Mat2& u) {
  const auto [alpha, beta, gamma, delta] = zyz_decompose(u);
  Ops ops;
  ops.push_back(GateOp::phase(t, (delta - beta) / 2.0));  // C
  ops.push_back(GateOp::cnot(c, t));
  ops.push_back(GateOp::u3(t, -gamma / 2.0, 0.0, -(delta + beta) / 2.0));  // B
  ops.push_back(GateOp::cnot(c, t));
  ops.push_back(GateOp::u3(t, gamma / 2.0, beta, 0.0));  // A
  ops.push_back(GateOp::phase(c, alpha));
  return ops;
}

// Generic k-controlled unitary; controls shrink through sqrt recursion.
Ops mcu_ops(const std::vector<int>& controls, int target, const Mat2& u) {
  if (controls.empty()) {
    const auto [alpha, beta, gamma, delta] = zyz_decompose(u);
    return {GateOp::u3(target, gamma, beta, delta)};
  }
  if (controls.size() == 1) return controlled_u_ops(controls[0], target, u);
  const Mat2 v = mat_sqrt(u);
  const int c = controls.back();
  const std::vector<int> rest(controls.begin(), controls.end() - 1);
  Ops ops = mcu_ops(rest, target, v);
  const Ops inner = rest.size() == 1
                        ? Ops{GateOp::cnot(rest[0], c)}
                        : (rest.size() == 2 ? Ops{GateOp::toffoli(rest[0], rest[1], c)}
                                            : mcx_advanced_ops(rest, c));
  extend(ops, inner);
  extend(ops, controlled_u_ops(c, target, mat_adjoint(v)));
  extend(ops, inner);
  extend(ops, controlled_u_ops(c, target, v));
  return ops;
}

// Phase angle for diagonal kinds diag(1, e^{i a}) (RZ handled separately).
double diagonal_angle(const GateOp& op) {
  switch (op.base_kind()) {
    case GateKind::Z: return kPi;
    case GateKind::S: return kPi / 2.0;
    case GateKind::T: return kPi / 4.0;
    case GateKind::PHASE: return op.angles[0];
    default: throw std::logic_error("not a plain diagonal kind");
  }
}

bool is_plain_diagonal(GateKind base) {
  return base == GateKind::Z || base == GateKind::S || base == GateKind::T ||
         base == GateKind::PHASE;
}

// One rewrite step toward the basis set. Emitted ops may need further steps.
Ops expand_op(const GateOp& op) {
  const GateKind base = op.base_kind();
  const std::size_t nc = op.controls.size();

  if (op.kind == GateKind::SWAP) {
    const int a = op.targets[0], b = op.targets[1];
    if (nc == 0)
      return {GateOp::cnot(a, b), GateOp::cnot(b, a), GateOp::cnot(a, b)};
    std::vector<int> ctl = op.controls;
    ctl.push_back(a);
    return {GateOp::cnot(b, a), GateOp::mcx(ctl, b), GateOp::cnot(b, a)};
  }

  const int t = op.targets[0];
  if (base == GateKind::X) {
    switch (nc) {
      case 0: return {GateOp::u3(t, kPi, 0.0, kPi)};
      case 1: return {GateOp::cnot(op.controls[0], t)};
      case 2: return toffoli_ops(op.controls[0], op.controls[1], t);
      default: return mcx_advanced_ops(op.controls, t);
    }
  }

  if (base == GateKind::RZ) {
    if (nc == 0) return {GateOp::phase(t, op.angles[0])};  // global phase dropped
    if (nc == 1) {
      Ops ops{GateOp::phase(op.controls[0], -op.angles[0] / 2.0)};
      extend(ops, cphase_ops(op.controls[0], t, op.angles[0]));
      return ops;
    }
    return mcu_ops(op.controls, t, kind_matrix(op));
  }

  if (is_plain_diagonal(base)) {
    const double a = diagonal_angle(op);
    if (nc == 0) return {GateOp::phase(t, a)};
    if (nc == 1) return cphase_ops(op.controls[0], t, a);
    if (base == GateKind::Z) {
      // Multi-controlled Z as an H-conjugated multi-controlled NOT.
      Ops ops{GateOp::h(t)};
      std::vector<int> ctl = op.controls;
      ops.push_back(GateOp::mcx(ctl, t));
      ops.push_back(GateOp::h(t));
      return ops;
    }
    return mcu_ops(op.controls, t, kind_matrix(op));
  }

  // Generic single-qubit unitaries (H, Y, U2, U3).
  if (nc == 0) {
    switch (base) {
      case GateKind::H: return {GateOp::u2(t, 0.0, kPi)};
      case GateKind::Y: return {GateOp::u3(t, kPi, kPi / 2.0, kPi / 2.0)};
      default: {
        const auto [alpha, beta, gamma, delta] = zyz_decompose(kind_matrix(op));
        return {GateOp::u3(t, gamma, beta, delta)};
      }
    }
  }
  if (nc == 1) return controlled_u_ops(op.controls[0], t, kind_matrix(op));
  return mcu_ops(op.controls, t, kind_matrix(op));
}

void lower_into(const GateOp& op, Circuit& out, const BasisGateSet& basis) {
  if (basis.allows(op)) {
    out.append(op);
    return;
  }
  Ops expanded;
  try {
    expanded = expand_op(op);
  } catch (const std::logic_error&) {
    throw std::invalid_argument(std::string("no decomposition rule for gate ") +
                                std::string(kind_name(op.kind)));
  }
  if (expanded.size() == 1 && expanded[0] == op)
    throw std::invalid_argument(std::string("gate not expressible in basis: ") +
                                std::string(kind_name(op.kind)));
  for (const GateOp& sub : expanded) lower_into(sub, out, basis);
}

}  // namespace

bool BasisGateSet::allows(const GateOp& op) const {
  if (!kinds.contains(op.kind)) return false;
  switch (op.kind) {
    case GateKind::CNOT:
    case GateKind::CZ:
      return op.controls.size() == 1;
    case GateKind::TOFFOLI:
      return op.controls.size() == 2;
    case GateKind::MCX:
      return op.controls.size() >= 3;
    default:
      return op.controls.empty();
  }
}

BasisGateSet BasisGateSet::default_basis() {
  return BasisGateSet{{GateKind::PHASE, GateKind::U2, GateKind::U3, GateKind::CNOT}};
}

void CouplingMap::add_edge(int u, int v) {
  if (u == v) throw std::invalid_argument("self edge");
  if (u < 0 || v < 0 || u >= num_qubits || v >= num_qubits)
    throw std::out_of_range("edge endpoint out of range");
  edges.insert({std::min(u, v), std::max(u, v)});
}

bool CouplingMap::coupled(int u, int v) const {
  return edges.contains({std::min(u, v), std::max(u, v)});
}

bool CouplingMap::connected() const {
  if (num_qubits <= 0) return false;
  std::vector<char> seen(num_qubits, 0);
  std::deque<int> frontier{0};
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop_front();
    for (int v = 0; v < num_qubits; ++v) {
      if (!seen[v] && coupled(u, v)) {
        seen[v] = 1;
        ++reached;
        frontier.push_back(v);
      }
    }
  }
  return reached == num_qubits;
}

std::vector<int> CouplingMap::shortest_path(int from, int to) const {
  std::vector<int> parent(num_qubits, -1);
  std::deque<int> frontier{from};
  parent[from] = from;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop_front();
    if (u == to) break;
    for (int v = 0; v < num_qubits; ++v) {  // ascending: lowest-index tie-break
      if (parent[v] == -1 && coupled(u, v)) {
        parent[v] = u;
        frontier.push_back(v);
      }
    }
  }
  if (parent[to] == -1) throw std::runtime_error("no path in coupling map");
  std::vector<int> path{to};
  while (path.back() != from) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

CouplingMap CouplingMap::fully_connected(int num_qubits, std::string name) {
  CouplingMap map;
  map.name = std::move(name);
  map.num_qubits = num_qubits;
  for (int u = 0; u < num_qubits; ++u)
    for (int v = u + 1; v < num_qubits; ++v) map.edges.insert({u, v});
  return map;
}

CouplingMap CouplingMap::from_json_text(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  CouplingMap map;
  map.name = j.at("name").get<std::string>();
  map.num_qubits = j.at("qubits").get<int>();
  for (const auto& e : j.at("edges")) map.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
  return map;
}

std::string CouplingMap::to_json_text() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["qubits"] = num_qubits;
  j["edges"] = nlohmann::json::array();
  for (const auto& [u, v] : edges) j["edges"].push_back({u, v});
  return j.dump(2) + "\n";
}

CouplingMap CouplingMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open coupling map: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return from_json_text(os.str());
}

CouplingMap CouplingMap::ibmqx2() {
  CouplingMap map;
  map.name = "ibmqx2";
  map.num_qubits = 5;
  for (auto [u, v] : {std::pair{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}})
    map.add_edge(u, v);
  return map;
}

CouplingMap CouplingMap::vigo() {
  CouplingMap map;
  map.name = "vigo";
  map.num_qubits = 5;
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {1, 3}, {3, 4}}) map.add_edge(u, v);
  return map;
}

int depth(const Circuit& circuit) {
  std::vector<int> frontier(circuit.num_qubits, 0);
  int deepest = 0;
  for (const GateOp& op : circuit.ops) {
    int layer = 0;
    for (int q : op.qubits()) layer = std::max(layer, frontier[q]);
    ++layer;
    for (int q : op.qubits()) frontier[q] = layer;
    deepest = std::max(deepest, layer);
  }
  return deepest;
}

std::map<std::string, int> gate_counts(const Circuit& circuit) {
  std::map<std::string, int> counts;
  for (const GateOp& op : circuit.ops) counts[std::string(kind_name(op.kind))] += 1;
  return counts;
}

Circuit decompose_toffoli() {
  Circuit circuit(3);
  for (GateOp& op : toffoli_ops(0, 1, 2)) circuit.append(std::move(op));
  return circuit;
}

Circuit decompose_mcx(int num_controls, McxMode mode) {
  if (num_controls < 2) throw std::invalid_argument("mcx needs at least 2 controls");
  if (num_controls == 2) return decompose_toffoli();

  std::vector<int> controls(num_controls);
  for (int k = 0; k < num_controls; ++k) controls[k] = k;
  const int target = num_controls;

  if (mode == McxMode::Advanced) {
    Circuit circuit(num_controls + 1);
    for (GateOp& op : mcx_advanced_ops(controls, target)) circuit.append(std::move(op));
    return circuit;
  }

  // Basic: Toffoli V-chain through k-2 ancillae appended after the target.
  const int k = num_controls;
  Circuit circuit(2 * k - 1);
  const int first_anc = k + 1;
  std::vector<GateOp> forward;
  forward.push_back(GateOp::toffoli(0, 1, first_anc));
  for (int j = 1; j < k - 2; ++j)
    forward.push_back(GateOp::toffoli(j + 1, first_anc + j - 1, first_anc + j));
  for (const GateOp& op : forward) circuit.append(op);
  circuit.append(GateOp::toffoli(k - 1, first_anc + k - 3, target));
  for (auto it = forward.rbegin(); it != forward.rend(); ++it) circuit.append(*it);
  return circuit;
}

Circuit lower(const Circuit& circuit, const BasisGateSet& basis) {
  Circuit out(circuit.num_qubits);
  out.measured_qubits = circuit.measured_qubits;
  for (const GateOp& op : circuit.ops) lower_into(op, out, basis);
  return out;
}

LoweredCircuit route(const Circuit& circuit, const CouplingMap& coupling,
                     std::optional<std::vector<int>> initial_layout) {
  if (!coupling.connected()) throw std::invalid_argument("coupling map must be connected");
  if (circuit.num_qubits > coupling.num_qubits)
    throw std::invalid_argument("circuit wider than coupling map");

  const int np = coupling.num_qubits;
  std::vector<int> phys_of(np);  // extended logical -> physical
  if (initial_layout) {
    if (static_cast<int>(initial_layout->size()) != circuit.num_qubits)
      throw std::invalid_argument("initial layout size mismatch");
    std::vector<char> used(np, 0);
    for (int p : *initial_layout) {
      if (p < 0 || p >= np || used[p]) throw std::invalid_argument("bad initial layout");
      used[p] = 1;
    }
    int next_free = 0;
    for (int l = 0; l < np; ++l) {
      if (l < circuit.num_qubits) {
        phys_of[l] = (*initial_layout)[l];
      } else {
        while (used[next_free]) ++next_free;
        phys_of[l] = next_free;
        used[next_free] = 1;
      }
    }
  } else {
    for (int l = 0; l < np; ++l) phys_of[l] = l;
  }
  std::vector<int> log_at(np);
  for (int l = 0; l < np; ++l) log_at[phys_of[l]] = l;

  LoweredCircuit result;
  result.initial_layout = phys_of;
  result.circuit = Circuit(np);
  result.swaps_inserted = 0;

  const auto swap_physical = [&](int a, int b) {
    result.circuit.append(GateOp::cnot(a, b));
    result.circuit.append(GateOp::cnot(b, a));
    result.circuit.append(GateOp::cnot(a, b));
    std::swap(log_at[a], log_at[b]);
    phys_of[log_at[a]] = a;
    phys_of[log_at[b]] = b;
    result.swaps_inserted += 1;
  };

  for (const GateOp& op : circuit.ops) {
    const std::vector<int> qs = op.qubits();
    if (qs.size() > 2)
      throw std::invalid_argument("route requires gates on at most 2 qubits; lower() first");
    if (qs.size() == 2) {
      int u = phys_of[qs[0]], v = phys_of[qs[1]];
      if (!coupling.coupled(u, v)) {
        const std::vector<int> path = coupling.shortest_path(u, v);
        for (std::size_t k = 0; k + 2 < path.size(); ++k)
          swap_physical(path[k], path[k + 1]);
      }
    }
    GateOp remapped = op;
    for (int& q : remapped.targets) q = phys_of[q];
    for (int& q : remapped.controls) q = phys_of[q];
    result.circuit.append(std::move(remapped));
  }
  for (int q : circuit.measured_qubits)
    result.circuit.measured_qubits.push_back(phys_of[q]);

  result.final_layout = phys_of;
  result.depth = depth(result.circuit);
  result.gate_counts = gate_counts(result.circuit);
  return result;
}

}  // namespace qaelab
