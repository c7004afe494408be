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

#include "noisyqec/trajectories.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>

#include "noisyqec/detail/rk5.hpp"
#include "noisyqec/parallel.hpp"

namespace noisyqec {

namespace {

constexpr double kJumpWarnProbability = 0.1;

std::atomic<bool> jump_warning_issued{false};

void warn_large_jump_probability(double p) {
  if (!jump_warning_issued.exchange(true)) {
    std::cerr << "noisyqec: warning: jump probability per step is " << p
              << " (> 0.1); reduce dt for accurate quantum-jump statistics\n";
  }
}

/// Per-segment precomputation shared by both unravelings. Not thread safe;
/// each trajectory owns one.
class Stepper {
 public:
  Stepper(const Operator& hamiltonian, const NoiseModel& noise, double dt)
      : noise_(noise), dt_(dt), pauli_(!noise.pauli_channels().empty()) {
    if (!noise.empty() && noise.n_qubits() != hamiltonian.n_qubits()) {
      throw ShapeError("noise model and Hamiltonian act on different registers");
    }
    const Complex minus_i{0.0, -1.0};
    has_h_ = !hamiltonian.is_zero();
    if (has_h_) generator_ = minus_i * hamiltonian.matrix();
    // Pauli channels have sum L^dag L proportional to identity, which only
    // rescales the norm; custom channels need the full effective Hamiltonian.
    if (!pauli_ && !noise.empty()) {
      jump_generator_ = -0.5 * noise.decay_operator();
      if (has_h_) jump_generator_ += generator_;
    }
    if (pauli_) {
      for (const auto& c : noise.pauli_channels()) total_rate_ += c.rate;
      if (total_rate_ * dt_ > kJumpWarnProbability) warn_large_jump_probability(total_rate_ * dt_);
    }
  }

  int jump(Vector& psi, Rng& rng) {
    int channel = -1;
    if (!noise_.empty()) {
      const std::size_t m = noise_.lindblad_ops().size();
      weights_.resize(m);
      double total = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        weights_[j] = dt_ * expect_decay(j, psi);
        total += weights_[j];
      }
      if (!pauli_ && total > kJumpWarnProbability) warn_large_jump_probability(total);
      const double u = uniform_(rng);
      if (u < total) {
        double acc = 0.0;
        std::size_t j = 0;
        for (; j + 1 < m; ++j) {
          acc += weights_[j];
          if (u < acc) break;
        }
        apply_op(j, psi, lpsi_);
        const double norm = lpsi_.norm();
        if (!(norm > 0.0)) throw std::logic_error("quantum jump through a channel with zero rate");
        psi = lpsi_ / norm;
        channel = static_cast<int>(j);
      }
    }
    if (!pauli_ && !noise_.empty()) {
      rk_.step(psi, dt_, [this](const Vector& y, Vector& out) { out.noalias() = jump_generator_ * y; });
    } else {
      schrodinger(psi);
    }
    normalize(psi, "quantum jump");
    return channel;
  }

  void qsd(Vector& psi, Rng& rng) {
    if (!noise_.empty()) {
      dpsi_.setZero(psi.size());
      const std::size_t m = noise_.lindblad_ops().size();
      for (std::size_t j = 0; j < m; ++j) {
        apply_op(j, psi, lpsi_);
        const Complex ell = psi.dot(lpsi_);  // <L>
        const Complex dxi = complex_wiener_increment(dt_, rng);
        // (<L^dag> L - 1/2 L^dag L - 1/2 |<L>|^2) psi dt + (L - <L>) psi dxi
        dpsi_ += (std::conj(ell) * dt_ + dxi) * lpsi_;
        dpsi_ -= (0.5 * std::norm(ell) * dt_ + ell * dxi) * psi;
        if (pauli_) {
          dpsi_ -= (0.5 * noise_.pauli_channels()[j].rate * dt_) * psi;
        } else {
          dpsi_.noalias() -= (0.5 * dt_) * (noise_.lindblad_ops()[j].matrix().adjoint() * lpsi_);
        }
      }
      psi += dpsi_;
    }
    schrodinger(psi);
    normalize(psi, "state diffusion");
  }

 private:
  void schrodinger(Vector& psi) {
    if (!has_h_) return;
    rk_.step(psi, dt_, [this](const Vector& y, Vector& out) { out.noalias() = generator_ * y; });
  }

  void apply_op(std::size_t j, const Vector& psi, Vector& out) const {
    if (pauli_) {
      const auto& c = noise_.pauli_channels()[j];
      apply_pauli(psi, c.qubit, c.axis, out);
      out *= std::sqrt(c.rate);
    } else {
      out.noalias() = noise_.lindblad_ops()[j].matrix() * psi;
    }
  }

  /// <psi| L_j^dag L_j |psi>.
  double expect_decay(std::size_t j, const Vector& psi) {
    if (pauli_) return noise_.pauli_channels()[j].rate * psi.squaredNorm();
    apply_op(j, psi, lpsi_);
    return lpsi_.squaredNorm();
  }

  static void normalize(Vector& psi, const char* what) {
    const double norm = psi.norm();
    if (!std::isfinite(norm) || !(norm > 0.0)) {
      throw DivergenceError(std::string(what) + " step produced a non-finite or zero state");
    }
    psi /= norm;
  }

  const NoiseModel& noise_;
  double dt_;
  bool pauli_;
  bool has_h_ = false;
  double total_rate_ = 0.0;
  Matrix generator_;       // -i H
  Matrix jump_generator_;  // -i H - 1/2 sum L^dag L, custom noise only
  std::vector<double> weights_;
  Vector lpsi_;
  Vector dpsi_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  detail::DormandPrince5<Vector> rk_;
};

void check_register(const StateVector& psi, const Operator& h) {
  if (psi.n_qubits() != h.n_qubits()) throw ShapeError("state and Hamiltonian sizes differ");
}

}  // namespace

const char* unraveling_name(UnravelingKind kind) {
  switch (kind) {
    case UnravelingKind::quantum_jumps:
      return "jumps";
    case UnravelingKind::qsd:
      return "qsd";
  }
  return "?";
}

Rng trajectory_rng(std::uint64_t master_seed, std::uint64_t index) {
  const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffULL); };
  const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(master_seed), hi(master_seed), lo(index), hi(index), 0x6e71ecU};
  return Rng(seq);
}

void TrajectoryConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("trajectory dt must be positive");
  if (n_trajectories < 1) throw ValidationError("n_trajectories must be at least 1");
}

Complex complex_wiener_increment(double dt, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double s = std::sqrt(0.5 * dt);
  const double re = gauss(rng);
  const double im = gauss(rng);
  return {s * re, s * im};
}

JumpOutcome jump_step(const StateVector& psi, const Operator& hamiltonian, const NoiseModel& noise, double dt,
                      Rng& rng) {
  check_register(psi, hamiltonian);
  Stepper stepper(hamiltonian, noise, dt);
  Vector v = psi.amplitudes();
  const int channel = stepper.jump(v, rng);
  return {StateVector(psi.n_qubits(), std::move(v), 1e-9), channel};
}

StateVector qsd_step(const StateVector& psi, const Operator& hamiltonian, const NoiseModel& noise, double dt,
                     Rng& rng) {
  check_register(psi, hamiltonian);
  Stepper stepper(hamiltonian, noise, dt);
  Vector v = psi.amplitudes();
  stepper.qsd(v, rng);
  return StateVector(psi.n_qubits(), std::move(v), 1e-9);
}

StateVector simulate_trajectory(const StateVector& psi0, std::span<const EvolutionSegment> segments, double dt,
                                UnravelingKind kind, Rng& rng) {
  Vector psi = psi0.amplitudes();
  for (const auto& seg : segments) {
    check_register(psi0, seg.hamiltonian);
    const std::size_t steps = substep_count(seg.duration, dt);
    if (steps == 0) continue;
    Stepper stepper(seg.hamiltonian, seg.noise, seg.duration / static_cast<double>(steps));
    try {
      for (std::size_t k = 0; k < steps; ++k) {
        if (kind == UnravelingKind::quantum_jumps) {
          stepper.jump(psi, rng);
        } else {
          stepper.qsd(psi, rng);
        }
      }
    } catch (const DivergenceError& e) {
      throw DivergenceError(std::string(e.what()) + " in segment '" + seg.label + "'");
    }
  }
  return StateVector(psi0.n_qubits(), std::move(psi), 1e-9);
}

EnsembleResult run_ensemble(const StateVector& psi0, std::span<const EvolutionSegment> segments,
                            const TrajectoryConfig& cfg) {
  return run_ensemble(psi0, segments, cfg, [&psi0](const StateVector& psi, Rng&) {
    return std::max(0.0, 1.0 - std::norm(psi0.overlap(psi)));
  });
}

EnsembleResult run_ensemble(const StateVector& psi0, std::span<const EvolutionSegment> segments,
                            const TrajectoryConfig& cfg, const TrajectorySampler& sample) {
  cfg.validate();
  const std::size_t count = cfg.n_trajectories;
  std::vector<Vector> finals(count);
  std::vector<double> samples(count);

  parallel_for(count, resolve_threads(cfg.threads), [&](std::size_t k) {
    Rng rng = trajectory_rng(cfg.master_seed, k);
    try {
      StateVector out = simulate_trajectory(psi0, segments, cfg.dt, cfg.unraveling, rng);
      samples[k] = sample(out, rng);
      finals[k] = out.amplitudes();
    } catch (const DivergenceError& e) {
      throw DivergenceError("trajectory " + std::to_string(k) + ": " + e.what());
    }
  });

  // Serial reduction in index order keeps the result independent of threads.
  const auto d = static_cast<Eigen::Index>(psi0.dim());
  Matrix rho = Matrix::Zero(d, d);
  double sum = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    rho.noalias() += finals[k] * finals[k].adjoint();
    sum += samples[k];
  }
  const double n = static_cast<double>(count);
  rho /= n;
  const double mean = sum / n;
  double var = 0.0;
  for (double s : samples) var += (s - mean) * (s - mean);

  EnsembleResult r;
  r.rho = DensityMatrix::unchecked(psi0.n_qubits(), std::move(rho));
  r.mean = mean;
  r.standard_error = count > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
  r.samples = std::move(samples);
  return r;
}

}  // namespace noisyqec
