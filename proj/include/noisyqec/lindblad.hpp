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

#include <span>
#include <string>
#include <vector>

#include "noisyqec/detail/rk5.hpp"
#include "noisyqec/hilbert.hpp"

namespace noisyqec {

inline constexpr double kDefaultMasterStep = 0.01;

enum class NoiseKind { none, dephasing, isotropic, custom };

const char* noise_kind_name(NoiseKind kind);

/// L = sqrt(rate) * sigma_axis on one qubit.
struct PauliChannel {
  int qubit;
  Axis axis;
  double rate;
};

/// The Lindblad operators acting on a register. Dephasing and isotropic
/// models are built from PauliChannels and use index arithmetic instead of
/// dense products; custom models are applied densely.
class NoiseModel {
 public:
  NoiseModel() = default;

  static NoiseModel none(int n_qubits);
  /// sqrt(kappa) sigma_z on every qubit.
  static NoiseModel dephasing(int n_qubits, double kappa);
  /// sqrt(kappa) sigma_{x,y,z} on every qubit.
  static NoiseModel isotropic(int n_qubits, double kappa);
  static NoiseModel of_kind(NoiseKind kind, int n_qubits, double kappa);
  static NoiseModel custom(int n_qubits, std::vector<Operator> lindblad_ops);

  NoiseKind kind() const { return kind_; }
  double kappa() const { return kappa_; }
  int n_qubits() const { return n_qubits_; }
  bool empty() const { return ops_.empty(); }

  const std::vector<Operator>& lindblad_ops() const { return ops_; }
  /// Non-empty iff every operator is a scaled single-qubit Pauli.
  const std::vector<PauliChannel>& pauli_channels() const { return channels_; }
  /// sum_j L_j^dagger L_j.
  const Matrix& decay_operator() const { return decay_; }

 private:
  static NoiseModel from_channels(NoiseKind kind, int n_qubits, double kappa, std::vector<PauliChannel> channels);

  NoiseKind kind_ = NoiseKind::none;
  double kappa_ = 0.0;
  int n_qubits_ = 0;
  std::vector<Operator> ops_;
  std::vector<PauliChannel> channels_;
  Matrix decay_;
};

/// Piecewise-constant Hamiltonian acting for `duration` with `noise` on.
struct EvolutionSegment {
  Operator hamiltonian;
  double duration = 0.0;
  NoiseModel noise;
  std::string label;
};

/// Evaluates -i[H, rho] + sum_j (L rho L^dag - 1/2 {L^dag L, rho}) on
/// Hermitian arguments. Holds workspace, so one instance per thread.
class LindbladGenerator {
 public:
  LindbladGenerator(const Operator& hamiltonian, const NoiseModel& noise);

  void apply(const Matrix& rho, Matrix& out);

 private:
  const Matrix* h_;
  bool h_zero_;
  const NoiseModel* noise_;
  double pauli_total_rate_ = 0.0;
  Matrix work_;
};

/// d rho / dt for Hermitian rho.
Matrix lindblad_rhs(const DensityMatrix& rho, const Operator& hamiltonian, const NoiseModel& noise);

/// Advances a density matrix through segments with fixed-step RK5. Each
/// segment is split into equal steps no longer than `dt`; the state is
/// re-symmetrized after every step.
class MasterEquationSolver {
 public:
  explicit MasterEquationSolver(DensityMatrix rho0, double dt = kDefaultMasterStep);

  void advance(const EvolutionSegment& segment);
  void advance(std::span<const EvolutionSegment> segments);

  double time() const { return time_; }
  double dt() const { return dt_; }
  int n_qubits() const { return n_qubits_; }
  const Matrix& matrix() const { return rho_; }
  DensityMatrix state() const { return DensityMatrix::unchecked(n_qubits_, rho_); }

 private:
  int n_qubits_;
  double dt_;
  double time_ = 0.0;
  Matrix rho_;
  detail::DormandPrince5<Matrix> rk_;
};

DensityMatrix integrate_master(const DensityMatrix& rho0, std::span<const EvolutionSegment> segments,
                               double dt = kDefaultMasterStep);

/// Number of equal substeps of length <= dt covering `duration`.
std::size_t substep_count(double duration, double dt);

}  // namespace noisyqec
