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

#include "noisyqec/lindblad.hpp"

#include <cmath>
#include <sstream>

namespace noisyqec {

namespace {

void check_rate(double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw ValidationError("noise rate must be finite and non-negative");
  }
}

}  // namespace

const char* noise_kind_name(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::none:
      return "none";
    case NoiseKind::dephasing:
      return "dephasing";
    case NoiseKind::isotropic:
      return "isotropic";
    case NoiseKind::custom:
      return "custom";
  }
  return "?";
}

NoiseModel NoiseModel::from_channels(NoiseKind kind, int n_qubits, double kappa, std::vector<PauliChannel> channels) {
  NoiseModel m;
  m.kind_ = kind;
  m.kappa_ = kappa;
  m.n_qubits_ = n_qubits;
  const auto d = static_cast<Eigen::Index>(dimension_of(n_qubits));
  m.decay_ = Matrix::Zero(d, d);
  if (kappa == 0.0) return m;  // no dissipators at all
  m.channels_ = std::move(channels);
  for (const auto& c : m.channels_) {
    m.ops_.push_back(Complex{std::sqrt(c.rate)} * embed(pauli(c.axis), c.qubit, n_qubits));
    m.decay_.diagonal().array() += c.rate;  // sigma^2 = 1
  }
  return m;
}

NoiseModel NoiseModel::none(int n_qubits) { return from_channels(NoiseKind::none, n_qubits, 0.0, {}); }

NoiseModel NoiseModel::dephasing(int n_qubits, double kappa) {
  check_rate(kappa);
  std::vector<PauliChannel> cs;
  for (int q = 0; q < n_qubits; ++q) cs.push_back({q, Axis::z, kappa});
  return from_channels(NoiseKind::dephasing, n_qubits, kappa, std::move(cs));
}

NoiseModel NoiseModel::isotropic(int n_qubits, double kappa) {
  check_rate(kappa);
  std::vector<PauliChannel> cs;
  for (int q = 0; q < n_qubits; ++q) {
    for (Axis a : {Axis::x, Axis::y, Axis::z}) cs.push_back({q, a, kappa});
  }
  return from_channels(NoiseKind::isotropic, n_qubits, kappa, std::move(cs));
}

NoiseModel NoiseModel::of_kind(NoiseKind kind, int n_qubits, double kappa) {
  switch (kind) {
    case NoiseKind::none:
      return none(n_qubits);
    case NoiseKind::dephasing:
      return dephasing(n_qubits, kappa);
    case NoiseKind::isotropic:
      return isotropic(n_qubits, kappa);
    case NoiseKind::custom:
      break;
  }
  throw ValidationError("custom noise needs explicit Lindblad operators");
}

NoiseModel NoiseModel::custom(int n_qubits, std::vector<Operator> lindblad_ops) {
  NoiseModel m;
  m.kind_ = NoiseKind::custom;
  m.n_qubits_ = n_qubits;
  const auto d = static_cast<Eigen::Index>(dimension_of(n_qubits));
  m.decay_ = Matrix::Zero(d, d);
  for (const auto& op : lindblad_ops) {
    if (op.n_qubits() != n_qubits) throw ShapeError("Lindblad operator acts on the wrong register size");
    m.decay_ += op.matrix().adjoint() * op.matrix();
  }
  m.ops_ = std::move(lindblad_ops);
  return m;
}

LindbladGenerator::LindbladGenerator(const Operator& hamiltonian, const NoiseModel& noise)
    : h_(&hamiltonian.matrix()), h_zero_(hamiltonian.is_zero()), noise_(&noise) {
  if (!noise.empty() && noise.n_qubits() != hamiltonian.n_qubits()) {
    throw ShapeError("noise model and Hamiltonian act on different registers");
  }
  for (const auto& c : noise.pauli_channels()) pauli_total_rate_ += c.rate;
}

void LindbladGenerator::apply(const Matrix& rho, Matrix& out) {
  // For Hermitian rho, [H, rho] = X - X^dagger with X = H rho.
  if (h_zero_) {
    out.setZero(rho.rows(), rho.cols());
  } else {
    work_.noalias() = *h_ * rho;
    out = Complex{0.0, -1.0} * (work_ - work_.adjoint());
  }
  if (noise_->empty()) return;

  if (!noise_->pauli_channels().empty()) {
    for (const auto& c : noise_->pauli_channels()) accumulate_pauli_conjugation(rho, c.qubit, c.axis, c.rate, out);
    out -= pauli_total_rate_ * rho;
    return;
  }
  for (const auto& op : noise_->lindblad_ops()) {
    work_.noalias() = op.matrix() * rho;
    out.noalias() += work_ * op.matrix().adjoint();
  }
  work_.noalias() = noise_->decay_operator() * rho;
  out -= 0.5 * (work_ + work_.adjoint());
}

Matrix lindblad_rhs(const DensityMatrix& rho, const Operator& hamiltonian, const NoiseModel& noise) {
  if (rho.n_qubits() != hamiltonian.n_qubits()) throw ShapeError("state and Hamiltonian sizes differ");
  LindbladGenerator gen(hamiltonian, noise);
  Matrix out;
  gen.apply(rho.matrix(), out);
  return out;
}

std::size_t substep_count(double duration, double dt) {
  if (!(dt > 0.0)) throw ValidationError("time step must be positive");
  if (!(duration >= 0.0)) throw ValidationError("segment duration must be non-negative");
  if (duration == 0.0) return 0;
  // Guard against 20 / 0.01 = 2000.0000000000002 producing an extra sliver.
  const double ratio = duration / dt;
  return static_cast<std::size_t>(std::max(1.0, std::ceil(ratio - 1e-9)));
}

MasterEquationSolver::MasterEquationSolver(DensityMatrix rho0, double dt)
    : n_qubits_(rho0.n_qubits()), dt_(dt), rho_(rho0.matrix()) {
  if (!(dt > 0.0)) throw ValidationError("time step must be positive");
}

void MasterEquationSolver::advance(const EvolutionSegment& segment) {
  if (segment.hamiltonian.n_qubits() != n_qubits_) {
    throw ShapeError("segment '" + segment.label + "' acts on the wrong register size");
  }
  const std::size_t steps = substep_count(segment.duration, dt_);
  if (steps == 0) return;
  if (segment.noise.empty()) {
    // Closed evolution: propagate with the exact unitary.
    if (!segment.hamiltonian.is_zero()) {
      const Matrix u = expm_hermitian(segment.hamiltonian, segment.duration).matrix();
      rho_ = (u * rho_ * u.adjoint()).eval();
      rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
    }
    time_ += segment.duration;
    return;
  }
  const double h = segment.duration / static_cast<double>(steps);
  LindbladGenerator gen(segment.hamiltonian, segment.noise);
  auto rhs = [&gen](const Matrix& y, Matrix& out) { gen.apply(y, out); };
  const double t0 = time_;
  for (std::size_t k = 0; k < steps; ++k) {
    rk_.step(rho_, h, rhs);
    rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
    if (!rho_.allFinite()) {
      std::ostringstream msg;
      msg << "master equation diverged in segment '" << segment.label << "' at t = "
          << t0 + h * static_cast<double>(k + 1);
      throw DivergenceError(msg.str());
    }
  }
  time_ = t0 + segment.duration;
}

void MasterEquationSolver::advance(std::span<const EvolutionSegment> segments) {
  for (const auto& s : segments) advance(s);
}

DensityMatrix integrate_master(const DensityMatrix& rho0, std::span<const EvolutionSegment> segments, double dt) {
  MasterEquationSolver solver(rho0, dt);
  solver.advance(segments);
  return solver.state();
}

}  // namespace noisyqec
