#pragma once

#include <vector>

#include "qaelab/statevec.hpp"

namespace qaelab::verify {

// Dense matrix checker used by tests and the reproduction driver. Matrices
// are built element-wise from the gate definitions, independently of the
// statevector update path, so agreement between the two is meaningful.
struct Matrix {
  std::uint64_t dim = 0;
  std::vector<complex_t> e;  // row-major

  Matrix() = default;
  explicit Matrix(std::uint64_t d) : dim(d), e(d * d, complex_t{0.0, 0.0}) {}

  complex_t& at(std::uint64_t r, std::uint64_t c) { return e[r * dim + c]; }
  const complex_t& at(std::uint64_t r, std::uint64_t c) const { return e[r * dim + c]; }

  static Matrix identity(std::uint64_t d);
};

Matrix multiply(const Matrix& a, const Matrix& b);
Matrix adjoint(const Matrix& m);

// Full 2^n x 2^n matrix of a single gate op.
Matrix op_matrix(const GateOp& op, int num_qubits);

// Chain product of all ops (op 0 applied first).
Matrix circuit_matrix(const Circuit& circuit);

// Basis permutation |x> -> |y> with bit perm[l] of y = bit l of x.
Matrix permutation_matrix(int num_qubits, const std::vector<int>& perm);

Matrix apply_to_columns(const Matrix& m, const Matrix& rhs);

double max_abs_diff(const Matrix& a, const Matrix& b);

// max |a - phase*b| over entries, minimized over a single global phase.
double max_abs_diff_up_to_phase(const Matrix& a, const Matrix& b);

bool is_unitary(const Matrix& m, double tol);

// State comparison up to one global phase factor.
double state_diff_up_to_phase(const StateVector& a, const StateVector& b);

StateVector apply_matrix(const Matrix& m, const StateVector& state);

}  // namespace qaelab::verify
