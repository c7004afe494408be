// Copyright 2026 The noisyqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "noisyqec/errors.hpp"

namespace noisyqec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Register layout: basis index i encodes qubit q in bit (i >> q) & 1, so
/// qubit 0 is the least-significant bit.
///
/// Pauli convention (fixed, library wide):
///   sigma_z|0> = -|0>, sigma_z|1> = |1>
///   sigma_x swaps |0> and |1>
///   sigma_y = ((0, i), (-i, 0)) in the ordered basis {|0>, |1>}
/// With this choice the Pauli algebra is right-handed, [sx, sy] = 2i sz.
enum class Axis { x, y, z };

char axis_name(Axis axis);
Axis parse_axis(char c);

inline std::size_t dimension_of(int n_qubits) { return std::size_t{1} << n_qubits; }

/// 2x2 Pauli matrix under the library convention.
Matrix pauli(Axis axis);
/// sigma_-|1> = |0>, sigma_-|0> = 0.
Matrix sigma_minus();
Matrix sigma_plus();
/// Projector onto |bit>. projector(1) = (1 + sigma_z) / 2.
Matrix projector(int bit);

Matrix kron(const Matrix& a, const Matrix& b);

class Operator {
 public:
  Operator() = default;
  Operator(int n_qubits, Matrix matrix);

  static Operator identity(int n_qubits);
  static Operator zero(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return dimension_of(n_qubits_); }
  const Matrix& matrix() const { return matrix_; }

  bool is_hermitian(double tol = 1e-10) const;
  bool is_zero() const;
  Operator adjoint() const;

  Operator& operator+=(const Operator& other);
  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator*(Complex s, const Operator& a);

 private:
  int n_qubits_ = 0;
  Matrix matrix_;
};

class StateVector {
 public:
  StateVector() = default;
  /// Validates length and unit norm.
  StateVector(int n_qubits, Vector amplitudes, double norm_tol = 1e-10);

  /// Computational basis state |index>.
  static StateVector basis(int n_qubits, std::size_t index);
  /// Product state; factors[q] is the single-qubit state of qubit q.
  static StateVector product(std::span<const Vector> factors);
  /// Normalizes before validating.
  static StateVector normalized(int n_qubits, Vector amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return dimension_of(n_qubits_); }
  const Vector& amplitudes() const { return amplitudes_; }

  Complex overlap(const StateVector& other) const { return amplitudes_.dot(other.amplitudes_); }

 private:
  int n_qubits_ = 0;
  Vector amplitudes_;
};

/// Single-qubit (alpha, beta) column.
Vector qubit_state(Complex alpha, Complex beta);
/// (|0> + |1>) / sqrt(2), the probe state used throughout.
StateVector plus_state();

class DensityMatrix {
 public:
  DensityMatrix() = default;
  /// Checks shape, Hermiticity (1e-10) and unit trace (1e-8).
  DensityMatrix(int n_qubits, Matrix matrix);

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(int n_qubits);
  /// Skips the physical checks; used by integrators that hold transient states.
  static DensityMatrix unchecked(int n_qubits, Matrix matrix);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return dimension_of(n_qubits_); }
  const Matrix& matrix() const { return matrix_; }

  Complex trace() const { return matrix_.trace(); }
  bool is_hermitian(double tol = 1e-10) const;
  double min_eigenvalue() const;

 private:
  int n_qubits_ = 0;
  Matrix matrix_;
};

/// identity (x) ... (x) op (x) ... (x) identity with `op` acting on `target`.
/// Throws std::out_of_range when target is not in [0, n).
Operator embed(const Matrix& op2x2, int target, int n_qubits);

/// Reduced 2x2 density matrix of one qubit.
DensityMatrix reduce_to_qubit(const DensityMatrix& rho, int qubit);

/// Reduced state of the data qubit, which is qubit 0 in every code layout.
DensityMatrix partial_trace_keep_first(const DensityMatrix& rho);

/// 1 - <psi|rho|psi>.
double mismatch(const DensityMatrix& rho, const StateVector& psi);

/// exp(-i H t) via Hermitian eigendecomposition.
Operator expm_hermitian(const Operator& h, double t);

/// |tr(A^dagger B)| / dim; 1 when B = e^{i phi} A for unitary A.
double phase_insensitive_fidelity(const Matrix& a, const Matrix& b);

/// |<a|b>| for normalized vectors.
double overlap_magnitude(const StateVector& a, const StateVector& b);

// Pauli actions on dense registers without building the 2^n embedding.

/// out = sigma_axis(qubit) * psi.
void apply_pauli(const Vector& psi, int qubit, Axis axis, Vector& out);
/// out += scale * P rho P^dagger for P = sigma_axis(qubit).
void accumulate_pauli_conjugation(const Matrix& rho, int qubit, Axis axis, double scale, Matrix& out);

}  // namespace noisyqec
