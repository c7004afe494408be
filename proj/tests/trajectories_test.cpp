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

#include <string>

#include "doctest.h"
#include "noisyqec/gates.hpp"
#include "noisyqec/trajectories.hpp"
#include "oracle.hpp"

using namespace noisyqec;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

std::vector<EvolutionSegment> idle(NoiseKind kind, double kappa, double T) {
  return {{Operator::zero(1), T, NoiseModel::of_kind(kind, 1, kappa), "idle"}};
}

double closed_form(NoiseKind kind, double kT) {
  return 0.5 * (1.0 - std::exp(-(kind == NoiseKind::dephasing ? 2.0 : 4.0) * kT));
}

}  // namespace

TEST_CASE("without noise both steppers are Schroedinger steps") {
  const Operator h(2, embed(pauli(Axis::x), 0, 2).matrix() + 0.3 * embed(pauli(Axis::y), 1, 2).matrix());
  const StateVector psi = StateVector::normalized(2, oracle::ket("01") + Complex(0.0, 0.5) * oracle::ket("11"));
  const double dt = 0.01;
  const Vector expect = oracle::expm(h.matrix(), dt) * psi.amplitudes();
  Rng rng = trajectory_rng(1, 0);
  const JumpOutcome j = jump_step(psi, h, NoiseModel::none(2), dt, rng);
  CHECK(j.channel == -1);
  CHECK((j.state.amplitudes() - expect).cwiseAbs().maxCoeff() < 1e-12);
  const StateVector q = qsd_step(psi, h, NoiseModel::none(2), dt, rng);
  CHECK((q.amplitudes() - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("a dephasing jump flips the sign of |0> in |+>") {
  const NoiseModel noise = NoiseModel::dephasing(1, 0.5);
  Rng rng = trajectory_rng(42, 0);
  JumpOutcome out;
  for (int tries = 0; tries < 10000 && out.channel < 0; ++tries) {
    out = jump_step(plus_state(), Operator::zero(1), noise, 0.1, rng);
  }
  REQUIRE(out.channel == 0);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(out.state.amplitudes()(0) + r) < 1e-12);
  CHECK(std::abs(out.state.amplitudes()(1) - r) < 1e-12);
}

TEST_CASE("dephasing jump counts are Poisson with mean kappa T") {
  // kappa T = 1 with 10^4 trajectories; each step is a Bernoulli draw.
  const double kappa = 1.0, T = 1.0, dt = 1e-3;
  const NoiseModel noise = NoiseModel::dephasing(1, kappa);
  const int n_traj = 10000;
  const auto steps = static_cast<int>(std::lround(T / dt));
  double sum = 0.0, sum_sq = 0.0;
  int zeros = 0;
  for (int k = 0; k < n_traj; ++k) {
    Rng rng = trajectory_rng(2024, static_cast<std::uint64_t>(k));
    StateVector psi = plus_state();
    int jumps = 0;
    for (int s = 0; s < steps; ++s) {
      JumpOutcome o = jump_step(psi, Operator::zero(1), noise, dt, rng);
      if (o.channel >= 0) ++jumps;
      psi = std::move(o.state);
    }
    sum += jumps;
    sum_sq += static_cast<double>(jumps) * jumps;
    zeros += jumps == 0;
  }
  const double mean = sum / n_traj;
  const double var = sum_sq / n_traj - mean * mean;
  const double se = std::sqrt(kappa * T / n_traj);
  CHECK(std::abs(mean - kappa * T) < 3.0 * se);
  // Var of the sample variance of a Poisson(1) is about (mu4 - sigma^4)/N = 3/N.
  CHECK(std::abs(var - kappa * T) < 3.0 * std::sqrt(3.0 / n_traj));
  const double p0 = std::exp(-kappa * T);
  CHECK(std::abs(zeros / static_cast<double>(n_traj) - p0) < 3.0 * std::sqrt(p0 * (1 - p0) / n_traj));
}

TEST_CASE("complex Wiener increments have the required moments") {
  const double dt = 0.01;
  const int n = 200000;
  Rng rng = trajectory_rng(7, 3);
  Complex m1 = 0.0, m2 = 0.0;
  double m_abs = 0.0, m_abs_sq = 0.0;
  for (int k = 0; k < n; ++k) {
    const Complex d = complex_wiener_increment(dt, rng);
    m1 += d;
    m2 += d * d;
    m_abs += std::norm(d);
    m_abs_sq += std::norm(d) * std::norm(d);
  }
  m1 /= n;
  m2 /= n;
  m_abs /= n;
  // Per component: Var(Re d) = dt/2; Var(d^2) components are dt^2/2; Var|d|^2 = dt^2.
  const double se1 = std::sqrt(dt / 2.0 / n);
  const double se2 = std::sqrt(dt * dt / 2.0 / n);
  const double se_abs = std::sqrt((m_abs_sq / n - m_abs * m_abs) / n);
  CHECK(std::abs(m1.real()) < 3.0 * se1);
  CHECK(std::abs(m1.imag()) < 3.0 * se1);
  CHECK(std::abs(m2.real()) < 3.0 * se2);
  CHECK(std::abs(m2.imag()) < 3.0 * se2);
  CHECK(std::abs(m_abs - dt) < 3.0 * se_abs);
}

TEST_CASE("sigma_z eigenstates are fixed points of dephasing diffusion") {
  const NoiseModel noise = NoiseModel::dephasing(1, 0.8);
  Rng rng = trajectory_rng(5, 5);
  StateVector psi = StateVector::basis(1, 0);
  for (int k = 0; k < 1000; ++k) psi = qsd_step(psi, Operator::zero(1), noise, 0.005, rng);
  CHECK(std::abs(psi.amplitudes()(0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(psi.amplitudes()(1)) < 1e-12);
}

TEST_CASE("ensemble means reproduce the single-qubit closed forms") {
  for (NoiseKind kind : {NoiseKind::dephasing, NoiseKind::isotropic}) {
    for (UnravelingKind u : {UnravelingKind::qsd, UnravelingKind::quantum_jumps}) {
      CAPTURE(noise_kind_name(kind));
      CAPTURE(unraveling_name(u));
      const double kappa = 0.05, T = 10.0;  // kappa T = 0.5
      TrajectoryConfig cfg;
      cfg.n_trajectories = 400;
      cfg.master_seed = 17;
      cfg.unraveling = u;
      const auto segs = idle(kind, kappa, T);
      const EnsembleResult r = run_ensemble(plus_state(), segs, cfg);
      const double expect = closed_form(kind, kappa * T);
      CHECK(r.standard_error > 0.0);
      CHECK(std::abs(r.mean - expect) < 3.0 * r.standard_error);
      // The ensemble state gives the same number as the sample mean.
      CHECK(mismatch(r.rho, plus_state()) == doctest::Approx(r.mean).epsilon(1e-12));
      CHECK(std::abs(r.rho.trace() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("one noiseless trajectory is the unitary image") {
  const GateSchedule enc = encode_schedule_3bit();
  std::vector<EvolutionSegment> segs;
  for (const auto& s : enc.steps()) segs.push_back({s.hamiltonian, s.duration, NoiseModel::none(3), s.label});
  TrajectoryConfig cfg;
  cfg.n_trajectories = 1;
  const StateVector in = StateVector::basis(3, 0);
  const EnsembleResult r = run_ensemble(in, segs, cfg);
  const Vector out = enc.unitary().matrix() * in.amplitudes();
  CHECK(max_abs(r.rho.matrix() - out * out.adjoint()) < 1e-9);
  CHECK(r.standard_error == 0.0);
}

TEST_CASE("ensembles are reproducible and independent of the thread count") {
  const auto segs = idle(NoiseKind::isotropic, 0.1, 2.0);
  for (UnravelingKind u : {UnravelingKind::qsd, UnravelingKind::quantum_jumps}) {
    TrajectoryConfig cfg;
    cfg.n_trajectories = 37;
    cfg.master_seed = 99;
    cfg.unraveling = u;
    cfg.threads = 1;
    const EnsembleResult a = run_ensemble(plus_state(), segs, cfg);
    cfg.threads = 4;
    const EnsembleResult b = run_ensemble(plus_state(), segs, cfg);
    CHECK(a.rho.matrix() == b.rho.matrix());
    CHECK(a.samples == b.samples);
    CHECK(a.mean == b.mean);
    cfg.master_seed = 100;
    const EnsembleResult c = run_ensemble(plus_state(), segs, cfg);
    CHECK(c.samples != a.samples);
  }
  // Streams for different indices differ.
  Rng r0 = trajectory_rng(0, 0), r1 = trajectory_rng(0, 1), r0b = trajectory_rng(0, 0);
  const auto x0 = r0();
  CHECK(x0 != r1());
  CHECK(x0 == r0b());
}

TEST_CASE("states stay normalized along a trajectory") {
  const NoiseModel noise = NoiseModel::isotropic(3, 0.2);
  const Operator h = h_A(1, 3).hamiltonian;
  for (UnravelingKind u : {UnravelingKind::qsd, UnravelingKind::quantum_jumps}) {
    Rng rng = trajectory_rng(3, 1);
    StateVector psi = StateVector::basis(3, 5);
    for (int k = 0; k < 500; ++k) {
      psi = u == UnravelingKind::qsd ? qsd_step(psi, h, noise, 0.005, rng) : jump_step(psi, h, noise, 0.005, rng).state;
      CHECK(std::abs(psi.amplitudes().norm() - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("custom operators use the dense effective Hamiltonian") {
  // Amplitude damping: |1> decays to |0> with survival exp(-gamma t).
  const double gamma = 0.4, T = 2.0;
  const NoiseModel noise = NoiseModel::custom(1, {Complex{std::sqrt(gamma)} * Operator(1, sigma_minus())});
  const std::vector<EvolutionSegment> segs{{Operator::zero(1), T, noise, "decay"}};
  for (UnravelingKind u : {UnravelingKind::qsd, UnravelingKind::quantum_jumps}) {
    TrajectoryConfig cfg;
    cfg.n_trajectories = 400;
    cfg.master_seed = 8;
    cfg.unraveling = u;
    const StateVector one = StateVector::basis(1, 1);
    const EnsembleResult r = run_ensemble(one, segs, cfg);
    CHECK(std::abs(r.mean - (1.0 - std::exp(-gamma * T))) < 3.0 * r.standard_error + 1e-3);
  }
}

TEST_CASE("configuration and error reporting") {
  TrajectoryConfig cfg;
  cfg.dt = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg.dt = 0.01;
  cfg.n_trajectories = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);

  cfg.n_trajectories = 2;
  const std::vector<EvolutionSegment> bad{{Operator(1, 1e300 * pauli(Axis::z)), 1.0, NoiseModel::dephasing(1, 0.1), "runaway"}};
  try {
    run_ensemble(plus_state(), bad, cfg);
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("trajectory 0") != std::string::npos);
    CHECK(msg.find("runaway") != std::string::npos);
  }
}
