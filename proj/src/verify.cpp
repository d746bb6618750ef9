#include "qaelab/verify.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qaelab::verify {

namespace {

// Gate matrices restated here from their textbook definitions; this file
// must not reuse the statevector update path it is checking.
using Mat2 = std::array<complex_t, 4>;
using Mat4 = std::array<complex_t, 16>;

constexpr double kPi = std::numbers::pi;

Mat2 one_qubit_matrix(const GateOp& op) {
  const complex_t i{0.0, 1.0};
  const double r = 1.0 / std::sqrt(2.0);
  switch (op.base_kind()) {
    case GateKind::X: return {0, 1, 1, 0};
    case GateKind::Y: return {0, -i, i, 0};
    case GateKind::Z: return {1, 0, 0, -1};
    case GateKind::H: return {r, r, r, -r};
    case GateKind::S: return {1, 0, 0, i};
    case GateKind::T: return {1, 0, 0, std::exp(i * (kPi / 4.0))};
    case GateKind::RZ:
      return {std::exp(-i * (op.angles[0] / 2.0)), 0, 0, std::exp(i * (op.angles[0] / 2.0))};
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
      throw std::logic_error("not a one-qubit base kind");
  }
}

}  // namespace

Matrix Matrix::identity(std::uint64_t d) {
  Matrix m(d);
  for (std::uint64_t k = 0; k < d; ++k) m.at(k, k) = 1.0;
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.dim != b.dim) throw std::invalid_argument("matrix dim mismatch");
  Matrix out(a.dim);
  for (std::uint64_t r = 0; r < a.dim; ++r)
    for (std::uint64_t k = 0; k < a.dim; ++k) {
      const complex_t arK = a.at(r, k);
      if (arK == complex_t{0.0, 0.0}) continue;
      for (std::uint64_t c = 0; c < a.dim; ++c) out.at(r, c) += arK * b.at(k, c);
    }
  return out;
}

Matrix adjoint(const Matrix& m) {
  Matrix out(m.dim);
  for (std::uint64_t r = 0; r < m.dim; ++r)
    for (std::uint64_t c = 0; c < m.dim; ++c) out.at(r, c) = std::conj(m.at(c, r));
  return out;
}

Matrix op_matrix(const GateOp& op, int num_qubits) {
  const std::uint64_t dim = std::uint64_t{1} << num_qubits;
  Matrix out(dim);
  std::uint64_t cmask = 0;
  for (int c : op.controls) cmask |= std::uint64_t{1} << c;

  if (op.kind == GateKind::SWAP) {
    const std::uint64_t b0 = std::uint64_t{1} << op.targets[0];
    const std::uint64_t b1 = std::uint64_t{1} << op.targets[1];
    for (std::uint64_t col = 0; col < dim; ++col) {
      std::uint64_t row = col;
      if ((col & cmask) == cmask) {
        const bool v0 = col & b0, v1 = col & b1;
        if (v0 != v1) row = col ^ b0 ^ b1;
      }
      out.at(row, col) = 1.0;
    }
    return out;
  }

  const Mat2 m = one_qubit_matrix(op);
  const std::uint64_t tbit = std::uint64_t{1} << op.targets[0];
  for (std::uint64_t col = 0; col < dim; ++col) {
    if ((col & cmask) != cmask) {
      out.at(col, col) = 1.0;
      continue;
    }
    const int tv = (col & tbit) ? 1 : 0;
    out.at(col & ~tbit, col) += m[0 * 2 + tv];
    out.at(col | tbit, col) += m[1 * 2 + tv];
  }
  return out;
}

Matrix circuit_matrix(const Circuit& circuit) {
  Matrix acc = Matrix::identity(std::uint64_t{1} << circuit.num_qubits);
  for (const GateOp& op : circuit.ops)
    acc = multiply(op_matrix(op, circuit.num_qubits), acc);
  return acc;
}

Matrix permutation_matrix(int num_qubits, const std::vector<int>& perm) {
  if (perm.size() != static_cast<std::size_t>(num_qubits))
    throw std::invalid_argument("permutation size mismatch");
  const std::uint64_t dim = std::uint64_t{1} << num_qubits;
  Matrix out(dim);
  for (std::uint64_t x = 0; x < dim; ++x) {
    std::uint64_t y = 0;
    for (int l = 0; l < num_qubits; ++l)
      y |= ((x >> l) & 1ULL) << perm[l];
    out.at(y, x) = 1.0;
  }
  return out;
}

Matrix apply_to_columns(const Matrix& m, const Matrix& rhs) { return multiply(m, rhs); }

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.dim != b.dim) throw std::invalid_argument("matrix dim mismatch");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.e.size(); ++k)
    worst = std::max(worst, std::abs(a.e[k] - b.e[k]));
  return worst;
}

double max_abs_diff_up_to_phase(const Matrix& a, const Matrix& b) {
  if (a.dim != b.dim) throw std::invalid_argument("matrix dim mismatch");
  // Align on the largest entry of b, then compare elementwise.
  std::size_t ref = 0;
  double best = 0.0;
  for (std::size_t k = 0; k < b.e.size(); ++k)
    if (std::abs(b.e[k]) > best) {
      best = std::abs(b.e[k]);
      ref = k;
    }
  if (best == 0.0) return max_abs_diff(a, b);
  const complex_t phase = a.e[ref] == complex_t{0.0, 0.0}
                              ? complex_t{1.0, 0.0}
                              : (a.e[ref] / b.e[ref]) / std::abs(a.e[ref] / b.e[ref]);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.e.size(); ++k)
    worst = std::max(worst, std::abs(a.e[k] - phase * b.e[k]));
  return worst;
}

bool is_unitary(const Matrix& m, double tol) {
  const Matrix prod = multiply(adjoint(m), m);
  return max_abs_diff(prod, Matrix::identity(m.dim)) <= tol;
}

double state_diff_up_to_phase(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("state dim mismatch");
  std::size_t ref = 0;
  double best = 0.0;
  for (std::size_t k = 0; k < b.amplitudes.size(); ++k)
    if (std::abs(b.amplitudes[k]) > best) {
      best = std::abs(b.amplitudes[k]);
      ref = k;
    }
  complex_t phase{1.0, 0.0};
  if (best > 0.0 && std::abs(a.amplitudes[ref]) > 0.0) {
    phase = (a.amplitudes[ref] / b.amplitudes[ref]);
    phase /= std::abs(phase);
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < a.amplitudes.size(); ++k)
    worst = std::max(worst, std::abs(a.amplitudes[k] - phase * b.amplitudes[k]));
  return worst;
}

StateVector apply_matrix(const Matrix& m, const StateVector& state) {
  if (m.dim != state.dim()) throw std::invalid_argument("matrix/state dim mismatch");
  StateVector out = state;
  for (std::uint64_t r = 0; r < m.dim; ++r) {
    complex_t acc{0.0, 0.0};
    for (std::uint64_t c = 0; c < m.dim; ++c) acc += m.at(r, c) * state.amplitudes[c];
    out.amplitudes[r] = acc;
  }
  return out;
}

}  // namespace qaelab::verify
