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

#include "noisyqec/hilbert.hpp"

#include <cmath>
#include <sstream>

namespace noisyqec {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_qubit_count(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 16) {
    throw ValidationError("register size must be in [1, 16], got " + std::to_string(n_qubits));
  }
}

void check_square(const Matrix& m, int n_qubits, const char* what) {
  const auto d = static_cast<Eigen::Index>(dimension_of(n_qubits));
  if (m.rows() != d || m.cols() != d) {
    std::ostringstream os;
    os << what << ": expected " << d << "x" << d << " for " << n_qubits << " qubits, got " << m.rows()
       << "x" << m.cols();
    throw ShapeError(os.str());
  }
}

// Inserts `bit` at position `qubit` of `rest`, shifting the higher bits up.
inline std::size_t insert_bit(std::size_t rest, int qubit, std::size_t bit) {
  const std::size_t low = rest & ((std::size_t{1} << qubit) - 1);
  const std::size_t high = (rest >> qubit) << (qubit + 1);
  return high | (bit << qubit) | low;
}

// Pauli P on `qubit` sends |i> to phase(i ^ flip) |i ^ flip>, i.e.
// (P psi)[i] = phase(i) psi[i ^ flip].
struct PauliAction {
  std::size_t flip;
  Complex when_zero;  // phase for rows whose target bit is 0
  Complex when_one;
};

PauliAction pauli_action(int qubit, Axis axis) {
  const std::size_t mask = std::size_t{1} << qubit;
  switch (axis) {
    case Axis::x:
      return {mask, 1.0, 1.0};
    case Axis::y:
      return {mask, kI, -kI};
    case Axis::z:
      return {0, -1.0, 1.0};
  }
  throw ValidationError("unknown Pauli axis");
}

}  // namespace

char axis_name(Axis axis) {
  switch (axis) {
    case Axis::x:
      return 'x';
    case Axis::y:
      return 'y';
    case Axis::z:
      return 'z';
  }
  return '?';
}

Axis parse_axis(char c) {
  switch (c) {
    case 'x':
    case 'X':
      return Axis::x;
    case 'y':
    case 'Y':
      return Axis::y;
    case 'z':
    case 'Z':
      return Axis::z;
    default:
      throw ValidationError(std::string("unknown Pauli axis '") + c + "'");
  }
}

Matrix pauli(Axis axis) {
  Matrix m(2, 2);
  switch (axis) {
    case Axis::x:
      m << 0.0, 1.0, 1.0, 0.0;
      break;
    case Axis::y:
      m << 0.0, kI, -kI, 0.0;
      break;
    case Axis::z:
      m << -1.0, 0.0, 0.0, 1.0;
      break;
  }
  return m;
}

Matrix sigma_minus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

Matrix sigma_plus() { return sigma_minus().adjoint(); }

Matrix projector(int bit) {
  if (bit != 0 && bit != 1) throw ValidationError("projector bit must be 0 or 1");
  const double sign = bit == 1 ? 1.0 : -1.0;
  return 0.5 * (Matrix::Identity(2, 2) + sign * pauli(Axis::z));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// --- Operator ---------------------------------------------------------------

Operator::Operator(int n_qubits, Matrix matrix) : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
  check_qubit_count(n_qubits);
  check_square(matrix_, n_qubits, "operator");
}

Operator Operator::identity(int n_qubits) {
  check_qubit_count(n_qubits);
  const auto d = static_cast<Eigen::Index>(dimension_of(n_qubits));
  return Operator(n_qubits, Matrix::Identity(d, d));
}

Operator Operator::zero(int n_qubits) {
  check_qubit_count(n_qubits);
  const auto d = static_cast<Eigen::Index>(dimension_of(n_qubits));
  return Operator(n_qubits, Matrix::Zero(d, d));
}

bool Operator::is_hermitian(double tol) const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool Operator::is_zero() const { return matrix_.cwiseAbs().maxCoeff() == 0.0; }

Operator Operator::adjoint() const { return Operator(n_qubits_, matrix_.adjoint()); }

Operator& Operator::operator+=(const Operator& other) {
  if (other.n_qubits_ != n_qubits_) throw ShapeError("operator sum: register sizes differ");
  matrix_ += other.matrix_;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  if (a.n_qubits_ != b.n_qubits_) throw ShapeError("operator product: register sizes differ");
  return Operator(a.n_qubits_, a.matrix_ * b.matrix_);
}

Operator operator*(Complex s, const Operator& a) { return Operator(a.n_qubits_, s * a.matrix_); }

// --- StateVector -------------------------------------------------------------

StateVector::StateVector(int n_qubits, Vector amplitudes, double norm_tol)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubit_count(n_qubits);
  if (static_cast<std::size_t>(amplitudes_.size()) != dimension_of(n_qubits)) {
    throw ShapeError("state vector length " + std::to_string(amplitudes_.size()) + " does not match " +
                     std::to_string(n_qubits) + " qubits");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > norm_tol) {
    throw ValidationError("state vector is not normalized (norm " + std::to_string(amplitudes_.norm()) + ")");
  }
}

StateVector StateVector::basis(int n_qubits, std::size_t index) {
  check_qubit_count(n_qubits);
  if (index >= dimension_of(n_qubits)) throw std::out_of_range("basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dimension_of(n_qubits)));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(n_qubits, std::move(v));
}

StateVector StateVector::product(std::span<const Vector> factors) {
  if (factors.empty()) throw ValidationError("product state needs at least one factor");
  // Qubit 0 is the least-significant bit, so it is the rightmost Kronecker factor.
  Matrix acc = Matrix::Ones(1, 1);
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    if (it->size() != 2) throw ShapeError("product state factors must be single-qubit vectors");
    acc = kron(acc, Matrix(*it));
  }
  return normalized(static_cast<int>(factors.size()), acc.col(0));
}

StateVector StateVector::normalized(int n_qubits, Vector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw ValidationError("cannot normalize a zero or non-finite vector");
  amplitudes /= norm;
  return StateVector(n_qubits, std::move(amplitudes));
}

Vector qubit_state(Complex alpha, Complex beta) {
  Vector v(2);
  v << alpha, beta;
  return v;
}

StateVector plus_state() { return StateVector::normalized(1, qubit_state(1.0, 1.0)); }

// --- DensityMatrix -------------------------------------------------------------

DensityMatrix::DensityMatrix(int n_qubits, Matrix matrix) : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
  check_qubit_count(n_qubits);
  check_square(matrix_, n_qubits, "density matrix");
  if (!is_hermitian(1e-10)) throw ValidationError("density matrix is not Hermitian");
  if (std::abs(matrix_.trace() - Complex{1.0}) > 1e-8) {
    throw ValidationError("density matrix trace differs from 1");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.n_qubits(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  const auto d = static_cast<Eigen::Index>(dimension_of(n_qubits));
  return DensityMatrix(n_qubits, Matrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::unchecked(int n_qubits, Matrix matrix) {
  check_square(matrix, n_qubits, "density matrix");
  DensityMatrix rho;
  rho.n_qubits_ = n_qubits;
  rho.matrix_ = std::move(matrix);
  return rho;
}

bool DensityMatrix::is_hermitian(double tol) const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// --- operations -------------------------------------------------------------

Operator embed(const Matrix& op2x2, int target, int n_qubits) {
  check_qubit_count(n_qubits);
  if (target < 0 || target >= n_qubits) {
    throw std::out_of_range("target qubit " + std::to_string(target) + " outside register of " +
                            std::to_string(n_qubits));
  }
  if (op2x2.rows() != 2 || op2x2.cols() != 2) throw ShapeError("embed expects a 2x2 operator");
  const std::size_t d = dimension_of(n_qubits);
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t rest = 0; rest < d / 2; ++rest) {
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) {
        out(static_cast<Eigen::Index>(insert_bit(rest, target, a)),
            static_cast<Eigen::Index>(insert_bit(rest, target, b))) =
            op2x2(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      }
    }
  }
  return Operator(n_qubits, std::move(out));
}

DensityMatrix reduce_to_qubit(const DensityMatrix& rho, int qubit) {
  const int n = rho.n_qubits();
  if (qubit < 0 || qubit >= n) throw std::out_of_range("reduced qubit outside register");
  const std::size_t half = rho.dim() / 2;
  const Matrix& m = rho.matrix();
  Matrix out = Matrix::Zero(2, 2);
  for (std::size_t rest = 0; rest < half; ++rest) {
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) {
        out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
            m(static_cast<Eigen::Index>(insert_bit(rest, qubit, a)),
              static_cast<Eigen::Index>(insert_bit(rest, qubit, b)));
      }
    }
  }
  return DensityMatrix::unchecked(1, std::move(out));
}

DensityMatrix partial_trace_keep_first(const DensityMatrix& rho) {
  if (rho.n_qubits() < 2) throw ShapeError("partial trace needs at least two qubits");
  return reduce_to_qubit(rho, 0);
}

double mismatch(const DensityMatrix& rho, const StateVector& psi) {
  if (rho.n_qubits() != psi.n_qubits()) throw ShapeError("mismatch: register sizes differ");
  const Complex f = psi.amplitudes().dot(rho.matrix() * psi.amplitudes());
  return 1.0 - f.real();
}

Operator expm_hermitian(const Operator& h, double t) {
  if (!h.is_hermitian(1e-10)) throw ValidationError("expm_hermitian: operator is not Hermitian");
  const Matrix sym = 0.5 * (h.matrix() + h.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  const Eigen::VectorXd& w = solver.eigenvalues();
  const Matrix& v = solver.eigenvectors();
  Vector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::exp(Complex{0.0, -w(k) * t});
  return Operator(h.n_qubits(), v * phases.asDiagonal() * v.adjoint());
}

double phase_insensitive_fidelity(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("fidelity: shapes differ");
  return std::abs((a.adjoint() * b).trace()) / static_cast<double>(a.rows());
}

double overlap_magnitude(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) throw ShapeError("overlap: register sizes differ");
  return std::abs(a.overlap(b));
}

void apply_pauli(const Vector& psi, int qubit, Axis axis, Vector& out) {
  const auto act = pauli_action(qubit, axis);
  const std::size_t mask = std::size_t{1} << qubit;
  const auto d = static_cast<std::size_t>(psi.size());
  out.resize(psi.size());
  for (std::size_t i = 0; i < d; ++i) {
    const Complex phase = (i & mask) ? act.when_one : act.when_zero;
    out(static_cast<Eigen::Index>(i)) = phase * psi(static_cast<Eigen::Index>(i ^ act.flip));
  }
}

void accumulate_pauli_conjugation(const Matrix& rho, int qubit, Axis axis, double scale, Matrix& out) {
  const auto act = pauli_action(qubit, axis);
  const std::size_t mask = std::size_t{1} << qubit;
  const auto d = static_cast<std::size_t>(rho.rows());
  // Column-major traversal; phases are unimodular so c_i conj(c_j) is +-1 or +-i.
  for (std::size_t j = 0; j < d; ++j) {
    const Complex cj = std::conj((j & mask) ? act.when_one : act.when_zero) * scale;
    const auto src_col = static_cast<Eigen::Index>(j ^ act.flip);
    for (std::size_t i = 0; i < d; ++i) {
      const Complex ci = (i & mask) ? act.when_one : act.when_zero;
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
          ci * cj * rho(static_cast<Eigen::Index>(i ^ act.flip), src_col);
    }
  }
}

}  // namespace noisyqec
