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

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "noisyqec/hilbert.hpp"
#include "noisyqec/lindblad.hpp"

namespace noisyqec {

inline constexpr double kDefaultTrajectoryStep = 0.005;

enum class UnravelingKind { quantum_jumps, qsd };

const char* unraveling_name(UnravelingKind kind);

using Rng = std::mt19937_64;

/// Independent stream for trajectory `index`, seeded from both words of
/// (master_seed, index) through std::seed_seq.
Rng trajectory_rng(std::uint64_t master_seed, std::uint64_t index);

struct TrajectoryConfig {
  double dt = kDefaultTrajectoryStep;
  std::size_t n_trajectories = 400;
  std::uint64_t master_seed = 0;
  UnravelingKind unraveling = UnravelingKind::qsd;
  unsigned threads = 0;  // 0: see resolve_threads

  void validate() const;
};

struct JumpOutcome {
  StateVector state;
  int channel = -1;  // index into lindblad_ops(), -1 when no jump occurred
};

/// One first-order quantum-jump step. A jump through channel j happens with
/// probability <L_j^dag L_j> dt; afterwards (jump or not) the state drifts
/// under H - (i/2) sum L^dag L for dt and is renormalized.
JumpOutcome jump_step(const StateVector& psi, const Operator& hamiltonian, const NoiseModel& noise, double dt,
                      Rng& rng);

/// One QSD step: Euler-Maruyama for the dissipative and noise terms, an RK5
/// Schroedinger step for H, then renormalization.
StateVector qsd_step(const StateVector& psi, const Operator& hamiltonian, const NoiseModel& noise, double dt,
                     Rng& rng);

/// Complex Wiener increment with E[d] = E[d^2] = 0 and E[|d|^2] = dt.
Complex complex_wiener_increment(double dt, Rng& rng);

/// Evolves one trajectory through `segments`, each split into equal steps
/// no longer than dt.
StateVector simulate_trajectory(const StateVector& psi0, std::span<const EvolutionSegment> segments, double dt,
                                UnravelingKind kind, Rng& rng);

/// Per-trajectory scalar recorded alongside the ensemble state. The RNG is
/// the trajectory's own stream, positioned after the last step.
using TrajectorySampler = std::function<double(const StateVector& final_state, Rng& rng)>;

struct EnsembleResult {
  DensityMatrix rho;            // mean of |psi_k><psi_k|
  double mean = 0.0;            // mean of the per-trajectory samples
  double standard_error = 0.0;  // of that mean; 0 for a single trajectory
  std::vector<double> samples;
};

/// Default sample: the mismatch 1 - |<psi0|psi_k>|^2.
EnsembleResult run_ensemble(const StateVector& psi0, std::span<const EvolutionSegment> segments,
                            const TrajectoryConfig& cfg);
EnsembleResult run_ensemble(const StateVector& psi0, std::span<const EvolutionSegment> segments,
                            const TrajectoryConfig& cfg, const TrajectorySampler& sample);

}  // namespace noisyqec
