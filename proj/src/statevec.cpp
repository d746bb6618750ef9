#include "qaelab/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qaelab/rng.hpp"

namespace qaelab {

namespace {

constexpr double kPi = std::numbers::pi;

struct KindInfo {
  std::string_view name;
  int targets;
  int canonical_controls;
  int angles;
};

const KindInfo& info(GateKind kind) {
  static const KindInfo table[] = {
      {"X", 1, 0, 0},    {"Y", 1, 0, 0},       {"Z", 1, 0, 0},   {"H", 1, 0, 0},
      {"S", 1, 0, 0},    {"T", 1, 0, 0},       {"RZ", 1, 0, 1},  {"CNOT", 1, 1, 0},
      {"CZ", 1, 1, 0},   {"TOFFOLI", 1, 2, 0}, {"MCX", 1, 3, 0}, {"SWAP", 2, 0, 0},
      {"PHASE", 1, 0, 1}, {"U2", 1, 0, 2},     {"U3", 1, 0, 3},
  };
  return table[static_cast<int>(kind)];
}

using Mat2 = std::array<complex_t, 4>;  // row-major [m00 m01; m10 m11]

Mat2 base_matrix(const GateOp& op) {
  const complex_t i{0.0, 1.0};
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  switch (op.kind) {
    case GateKind::X:
    case GateKind::CNOT:
    case GateKind::TOFFOLI:
    case GateKind::MCX:
      return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Y:
      return {0.0, -i, i, 0.0};
    case GateKind::Z:
    case GateKind::CZ:
      return {1.0, 0.0, 0.0, -1.0};
    case GateKind::H:
      return {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
    case GateKind::S:
      return {1.0, 0.0, 0.0, i};
    case GateKind::T:
      return {1.0, 0.0, 0.0, std::exp(i * (kPi / 4.0))};
    case GateKind::RZ:
      return {std::exp(-i * (op.angles[0] / 2.0)), 0.0, 0.0,
              std::exp(i * (op.angles[0] / 2.0))};
    case GateKind::PHASE:
      return {1.0, 0.0, 0.0, std::exp(i * op.angles[0])};
    case GateKind::U2: {
      const double phi = op.angles[0], lam = op.angles[1];
      return {inv_sqrt2, -std::exp(i * lam) * inv_sqrt2, std::exp(i * phi) * inv_sqrt2,
              std::exp(i * (phi + lam)) * inv_sqrt2};
    }
    case GateKind::U3: {
      const double th = op.angles[0], phi = op.angles[1], lam = op.angles[2];
      const double c = std::cos(th / 2.0), s = std::sin(th / 2.0);
      return {complex_t{c, 0.0}, -std::exp(i * lam) * s, std::exp(i * phi) * s,
              std::exp(i * (phi + lam)) * c};
    }
    case GateKind::SWAP:
      throw std::logic_error("SWAP has no 2x2 base matrix");
  }
  throw std::logic_error("unknown gate kind");
}

void validate_op(const GateOp& op, int num_qubits) {
  const auto check = [&](int q) {
    if (q < 0 || q >= num_qubits) throw std::out_of_range("qubit index out of range");
  };
  if (op.targets.size() != static_cast<std::size_t>(info(op.kind).targets))
    throw std::invalid_argument("wrong target count for gate kind");
  std::vector<int> seen;
  for (int q : op.targets) {
    check(q);
    seen.push_back(q);
  }
  for (int q : op.controls) {
    check(q);
    seen.push_back(q);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw std::invalid_argument("targets and controls must be disjoint");
}

}  // namespace

std::string_view kind_name(GateKind kind) { return info(kind).name; }

GateKind kind_from_name(std::string_view name) {
  for (int k = 0; k <= static_cast<int>(GateKind::U3); ++k) {
    if (info(static_cast<GateKind>(k)).name == name) return static_cast<GateKind>(k);
  }
  throw std::invalid_argument("unknown gate name: " + std::string(name));
}

int angle_count(GateKind kind) { return info(kind).angles; }

GateOp GateOp::x(int t) { return {GateKind::X, {t}, {}, {}}; }
GateOp GateOp::y(int t) { return {GateKind::Y, {t}, {}, {}}; }
GateOp GateOp::z(int t) { return {GateKind::Z, {t}, {}, {}}; }
GateOp GateOp::h(int t) { return {GateKind::H, {t}, {}, {}}; }
GateOp GateOp::s(int t) { return {GateKind::S, {t}, {}, {}}; }
GateOp GateOp::t(int t) { return {GateKind::T, {t}, {}, {}}; }
GateOp GateOp::rz(int t, double angle) { return {GateKind::RZ, {t}, {}, {angle, 0, 0}}; }
GateOp GateOp::phase(int t, double angle) { return {GateKind::PHASE, {t}, {}, {angle, 0, 0}}; }
GateOp GateOp::cnot(int c, int t) { return {GateKind::CNOT, {t}, {c}, {}}; }
GateOp GateOp::cz(int c, int t) { return {GateKind::CZ, {t}, {c}, {}}; }
GateOp GateOp::toffoli(int c0, int c1, int t) { return {GateKind::TOFFOLI, {t}, {c0, c1}, {}}; }

GateOp GateOp::mcx(std::vector<int> controls, int t) {
  if (controls.empty()) return x(t);
  if (controls.size() == 1) return cnot(controls[0], t);
  if (controls.size() == 2) return toffoli(controls[0], controls[1], t);
  return {GateKind::MCX, {t}, std::move(controls), {}};
}

GateOp GateOp::swap(int a, int b) { return {GateKind::SWAP, {a, b}, {}, {}}; }
GateOp GateOp::u2(int t, double phi, double lam) { return {GateKind::U2, {t}, {}, {phi, lam, 0}}; }
GateOp GateOp::u3(int t, double theta, double phi, double lam) {
  return {GateKind::U3, {t}, {}, {theta, phi, lam}};
}

GateOp GateOp::adjoint() const {
  GateOp out = *this;
  switch (kind) {
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
    case GateKind::H:
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::TOFFOLI:
    case GateKind::MCX:
    case GateKind::SWAP:
      return out;  // self-inverse
    case GateKind::S:
      out.kind = GateKind::PHASE;
      out.angles = {-kPi / 2.0, 0, 0};
      return out;
    case GateKind::T:
      out.kind = GateKind::PHASE;
      out.angles = {-kPi / 4.0, 0, 0};
      return out;
    case GateKind::RZ:
    case GateKind::PHASE:
      out.angles[0] = -angles[0];
      return out;
    case GateKind::U2:
      // U2(phi, lam) = U3(pi/2, phi, lam); inverse is U3(-pi/2, -lam, -phi).
      out.kind = GateKind::U3;
      out.angles = {-kPi / 2.0, -angles[1], -angles[0]};
      return out;
    case GateKind::U3:
      out.angles = {-angles[0], -angles[2], -angles[1]};
      return out;
  }
  throw std::logic_error("unknown gate kind");
}

GateKind GateOp::base_kind() const {
  switch (kind) {
    case GateKind::CNOT:
    case GateKind::TOFFOLI:
    case GateKind::MCX:
      return GateKind::X;
    case GateKind::CZ:
      return GateKind::Z;
    default:
      return kind;
  }
}

GateOp GateOp::controlled(int control) const {
  GateOp out = *this;
  out.kind = base_kind();
  out.controls.push_back(control);
  if (out.kind == GateKind::X) {
    switch (out.controls.size()) {
      case 1: out.kind = GateKind::CNOT; break;
      case 2: out.kind = GateKind::TOFFOLI; break;
      default: out.kind = GateKind::MCX; break;
    }
  } else if (out.kind == GateKind::Z && out.controls.size() == 1) {
    out.kind = GateKind::CZ;
  }
  return out;
}

std::vector<int> GateOp::qubits() const {
  std::vector<int> qs = targets;
  qs.insert(qs.end(), controls.begin(), controls.end());
  return qs;
}

void Circuit::append(GateOp op) {
  validate_op(op, num_qubits);
  ops.push_back(std::move(op));
}

void Circuit::append(const Circuit& sub) {
  if (sub.num_qubits > num_qubits) throw std::invalid_argument("subcircuit too wide");
  for (const GateOp& op : sub.ops) append(op);
}

Circuit Circuit::adjoint() const {
  Circuit out(num_qubits);
  out.measured_qubits = measured_qubits;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) out.append(it->adjoint());
  return out;
}

Circuit Circuit::controlled(int control) const {
  Circuit out(std::max(num_qubits, control + 1));
  out.measured_qubits = measured_qubits;
  for (const GateOp& op : ops) out.append(op.controlled(control));
  return out;
}

StateVector StateVector::zero_state(int num_qubits) { return basis_state(num_qubits, 0); }

StateVector StateVector::basis_state(int num_qubits, std::uint64_t index) {
  if (num_qubits < 1 || num_qubits > kMaxQubits)
    throw std::invalid_argument("qubit count out of range");
  StateVector sv;
  sv.num_qubits = num_qubits;
  sv.amplitudes.assign(std::uint64_t{1} << num_qubits, complex_t{0.0, 0.0});
  if (index >= sv.dim()) throw std::out_of_range("basis index out of range");
  sv.amplitudes[index] = 1.0;
  return sv;
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const complex_t& a : amplitudes) sum += std::norm(a);
  return std::sqrt(sum);
}

StateVector apply_gate(StateVector state, const GateOp& op) {
  validate_op(op, state.num_qubits);
  const std::uint64_t dim = state.dim();
  std::uint64_t cmask = 0;
  for (int c : op.controls) cmask |= std::uint64_t{1} << c;

  if (op.kind == GateKind::SWAP) {
    const std::uint64_t b0 = std::uint64_t{1} << op.targets[0];
    const std::uint64_t b1 = std::uint64_t{1} << op.targets[1];
    for (std::uint64_t i = 0; i < dim; ++i) {
      if ((i & cmask) != cmask) continue;
      if ((i & b0) != 0 || (i & b1) == 0) continue;  // visit b0=0, b1=1 once
      std::swap(state.amplitudes[i], state.amplitudes[i ^ b0 ^ b1]);
    }
    return state;
  }

  const Mat2 m = base_matrix(op);
  const std::uint64_t tbit = std::uint64_t{1} << op.targets[0];
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & tbit) != 0 || (i & cmask) != cmask) continue;
    const std::uint64_t j = i | tbit;
    const complex_t a0 = state.amplitudes[i];
    const complex_t a1 = state.amplitudes[j];
    state.amplitudes[i] = m[0] * a0 + m[1] * a1;
    state.amplitudes[j] = m[2] * a0 + m[3] * a1;
  }
  return state;
}

StateVector run_circuit(const Circuit& circuit, StateVector initial) {
  if (circuit.num_qubits != initial.num_qubits)
    throw std::invalid_argument("circuit/state dimension mismatch");
  for (const GateOp& op : circuit.ops) initial = apply_gate(std::move(initial), op);
  return initial;
}

std::vector<double> marginal_probabilities(const StateVector& state,
                                           const std::vector<int>& qubits) {
  if (qubits.empty()) throw std::invalid_argument("empty qubit set");
  for (int q : qubits)
    if (q < 0 || q >= state.num_qubits) throw std::out_of_range("qubit index out of range");
  std::vector<double> probs(std::uint64_t{1} << qubits.size(), 0.0);
  for (std::uint64_t i = 0; i < state.dim(); ++i) {
    std::uint64_t y = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j)
      y |= ((i >> qubits[j]) & 1ULL) << j;
    probs[y] += std::norm(state.amplitudes[i]);
  }
  return probs;
}

double probability_of(const StateVector& state, int qubit, int value) {
  if (qubit < 0 || qubit >= state.num_qubits)
    throw std::out_of_range("qubit index out of range");
  double p1 = 0.0;
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  for (std::uint64_t i = 0; i < state.dim(); ++i)
    if (i & bit) p1 += std::norm(state.amplitudes[i]);
  return value ? p1 : 1.0 - p1;
}

MeasurementRecord sample(const StateVector& state, const std::vector<int>& qubits,
                         std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const std::vector<double> probs = marginal_probabilities(state, qubits);
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t y = 0; y < probs.size(); ++y) {
    acc += probs[y];
    cdf[y] = acc;
  }
  cdf.back() = 1.0;

  MeasurementRecord rec;
  rec.shots = shots;
  rec.seed = seed;
  CounterRng rng(seed);
  const int width = static_cast<int>(qubits.size());
  std::vector<std::int64_t> raw(probs.size(), 0);
  for (std::int64_t s = 0; s < shots; ++s) {
    const double u = rng.next_double();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    raw[static_cast<std::size_t>(it - cdf.begin())] += 1;
  }
  for (std::size_t y = 0; y < raw.size(); ++y)
    if (raw[y] > 0) rec.counts[bitstring(y, width)] = raw[y];
  return rec;
}

std::string bitstring(std::uint64_t y, int width) {
  std::string s(width, '0');
  for (int j = 0; j < width; ++j)
    if ((y >> j) & 1ULL) s[width - 1 - j] = '1';
  return s;
}

std::uint64_t bitstring_index(std::string_view bits) {
  std::uint64_t y = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bad bitstring");
    y = (y << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return y;
}

}  // namespace qaelab
