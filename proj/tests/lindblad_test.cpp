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

#include <random>
#include <string>

#include "doctest.h"
#include "noisyqec/gates.hpp"
#include "noisyqec/lindblad.hpp"
#include "oracle.hpp"

using namespace noisyqec;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix random_density(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  Matrix rho = a * a.adjoint();
  return rho / rho.trace();
}

Matrix random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  return 0.5 * (a + a.adjoint());
}

double single_qubit_mismatch(NoiseKind kind, double kappa, double T, double dt) {
  const EvolutionSegment seg{Operator::zero(1), T, NoiseModel::of_kind(kind, 1, kappa), "idle"};
  const DensityMatrix out = integrate_master(DensityMatrix::pure(plus_state()), std::span(&seg, 1), dt);
  return mismatch(out, plus_state());
}

}  // namespace

TEST_CASE("noise models list one Pauli operator per qubit and axis") {
  const double kappa = 0.3;
  const NoiseModel deph = NoiseModel::dephasing(3, kappa);
  CHECK(deph.lindblad_ops().size() == 3);
  const NoiseModel iso = NoiseModel::isotropic(3, kappa);
  CHECK(iso.lindblad_ops().size() == 9);
  CHECK(iso.pauli_channels().size() == 9);
  CHECK(NoiseModel::none(3).empty());

  for (int q = 0; q < 3; ++q) {
    CHECK(max_abs(deph.lindblad_ops()[q].matrix() - std::sqrt(kappa) * oracle::on_qubit(oracle::sz(), q, 3)) <
          1e-15);
    CHECK(max_abs(iso.lindblad_ops()[3 * q + 0].matrix() - std::sqrt(kappa) * oracle::on_qubit(oracle::sx(), q, 3)) <
          1e-15);
    CHECK(max_abs(iso.lindblad_ops()[3 * q + 1].matrix() - std::sqrt(kappa) * oracle::on_qubit(oracle::sy(), q, 3)) <
          1e-15);
    CHECK(max_abs(iso.lindblad_ops()[3 * q + 2].matrix() - std::sqrt(kappa) * oracle::on_qubit(oracle::sz(), q, 3)) <
          1e-15);
  }
  CHECK(max_abs(iso.decay_operator() - 9.0 * kappa * Matrix::Identity(8, 8)) < 1e-14);

  CHECK_THROWS_AS(NoiseModel::dephasing(2, -1.0), ValidationError);
  CHECK_THROWS_AS(NoiseModel::of_kind(NoiseKind::custom, 2, 1.0), ValidationError);
  CHECK_THROWS_AS(NoiseModel::custom(2, {Operator::identity(1)}), ShapeError);
}

TEST_CASE("rhs vanishes without Hamiltonian or noise") {
  const DensityMatrix rho = DensityMatrix::pure(plus_state());
  CHECK(max_abs(lindblad_rhs(rho, Operator::zero(1), NoiseModel::none(1))) == 0.0);
}

TEST_CASE("single-qubit coherence decays at 2 kappa (dephasing) and 4 kappa (isotropic)") {
  const double kappa = 0.37;
  const DensityMatrix rho = DensityMatrix::pure(plus_state());
  const Matrix dd = lindblad_rhs(rho, Operator::zero(1), NoiseModel::dephasing(1, kappa));
  CHECK(std::abs(dd(0, 1) - (-2.0 * kappa * rho.matrix()(0, 1))) < 1e-14);
  CHECK(std::abs(dd(0, 0)) < 1e-15);
  const Matrix di = lindblad_rhs(rho, Operator::zero(1), NoiseModel::isotropic(1, kappa));
  CHECK(std::abs(di(0, 1) - (-4.0 * kappa * rho.matrix()(0, 1))) < 1e-14);
}

TEST_CASE("rhs agrees with the dense textbook formula") {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 4; ++n) {
    const int d = 1 << n;
    const Matrix rho_m = random_density(d, rng);
    const DensityMatrix rho(n, rho_m);
    const Operator h(n, random_hermitian(d, rng));

    for (const NoiseModel& noise : {NoiseModel::dephasing(n, 0.2), NoiseModel::isotropic(n, 0.05)}) {
      std::vector<oracle::M> ls;
      for (const auto& op : noise.lindblad_ops()) ls.push_back(op.matrix());
      const Matrix got = lindblad_rhs(rho, h, noise);
      CHECK(max_abs(got - oracle::lindblad(rho_m, h.matrix(), ls)) < 1e-12);
      CHECK(std::abs(got.trace()) < 1e-12);
      CHECK(max_abs(got - got.adjoint()) < 1e-12);
    }

    // Non-Pauli operators take the dense path.
    std::vector<Operator> custom{Complex{0.4} * embed(sigma_minus(), 0, n), Complex{0.1} * embed(pauli(Axis::x), n - 1, n)};
    std::vector<oracle::M> ls{custom[0].matrix(), custom[1].matrix()};
    const NoiseModel cm = NoiseModel::custom(n, custom);
    CHECK(cm.pauli_channels().empty());
    const Matrix got = lindblad_rhs(rho, h, cm);
    CHECK(max_abs(got - oracle::lindblad(rho_m, h.matrix(), ls)) < 1e-12);
    CHECK(std::abs(got.trace()) < 1e-12);
  }
  CHECK_THROWS_AS(lindblad_rhs(DensityMatrix::maximally_mixed(2), Operator::zero(1), NoiseModel::none(1)), ShapeError);
}

TEST_CASE("noiseless controlled phase acts unitarily") {
  const std::vector<Control> cs{{0, Polarity::black}, {1, Polarity::black}};
  const GateHamiltonian g = h_cphase(cs, 2);
  std::mt19937_64 rng(9);
  const Matrix rho0 = random_density(4, rng);
  const EvolutionSegment seg{g.hamiltonian, 1.0, NoiseModel::none(2), "cphase"};
  const DensityMatrix out = integrate_master(DensityMatrix(2, rho0), std::span(&seg, 1));
  Matrix u = Matrix::Identity(4, 4);
  u(3, 3) = -1.0;
  CHECK(max_abs(out.matrix() - u * rho0 * u.adjoint()) < 1e-8);
}

TEST_CASE("single-qubit mismatch follows the closed forms") {
  for (double kT : {0.01, 0.1, 1.0}) {
    const double kappa = 0.01;
    const double T = kT / kappa;
    CHECK(std::abs(single_qubit_mismatch(NoiseKind::dephasing, kappa, T, 0.01) - 0.5 * (1.0 - std::exp(-2.0 * kT))) <
          1e-6);
    CHECK(std::abs(single_qubit_mismatch(NoiseKind::isotropic, kappa, T, 0.01) - 0.5 * (1.0 - std::exp(-4.0 * kT))) <
          1e-6);
  }
}

TEST_CASE("halving the default step changes the benchmarks by less than 1e-7") {
  for (NoiseKind kind : {NoiseKind::dephasing, NoiseKind::isotropic}) {
    for (double kT : {0.01, 0.1, 1.0}) {
      const double a = single_qubit_mismatch(kind, 0.01, kT / 0.01, kDefaultMasterStep);
      const double b = single_qubit_mismatch(kind, 0.01, kT / 0.01, kDefaultMasterStep / 2.0);
      CHECK(std::abs(a - b) < 1e-7);
    }
  }
}

TEST_CASE("fifth-order convergence") {
  // Coarse steps so the truncation error dominates roundoff; halving dt
  // should shrink it by about 2^5.
  for (NoiseKind kind : {NoiseKind::dephasing, NoiseKind::isotropic}) {
    const double exact = 0.5 * (1.0 - std::exp(-(kind == NoiseKind::dephasing ? 2.0 : 4.0)));
    const double coarse = std::abs(single_qubit_mismatch(kind, 0.5, 2.0, 0.2) - exact);
    const double fine = std::abs(single_qubit_mismatch(kind, 0.5, 2.0, 0.1) - exact);
    const double order = std::log2(coarse / fine);
    CHECK(order > 4.5);
    CHECK(order < 6.0);
  }
}

TEST_CASE("closed segments propagate with the exact unitary") {
  for (const auto& sched : {encode_schedule_3bit(), decode_schedule_5bit()}) {
    const int n = sched.n_qubits();
    std::mt19937_64 rng(13);
    Matrix rho = random_density(1 << n, rng);
    MasterEquationSolver solver(DensityMatrix(n, rho));
    for (const auto& step : sched.steps()) {
      solver.advance({step.hamiltonian, step.duration, NoiseModel::none(n), step.label});
      const Matrix u = expm_hermitian(step.hamiltonian, step.duration).matrix();
      rho = u * rho * u.adjoint();
      CHECK(max_abs(solver.matrix() - rho) < 1e-12);
    }
  }
}

TEST_CASE("trace, Hermiticity and positivity survive a noisy encode") {
  const GateSchedule enc = encode_schedule_5bit();
  const NoiseModel noise = NoiseModel::isotropic(5, 3e-3);
  MasterEquationSolver solver(DensityMatrix::pure(StateVector::basis(5, 0)));
  for (const auto& step : enc.steps()) {
    solver.advance({step.hamiltonian, step.duration, noise, step.label});
    const DensityMatrix s = solver.state();
    CHECK(std::abs(s.trace() - 1.0) < 1e-8);
    CHECK(s.is_hermitian(0.0));
    CHECK(s.min_eigenvalue() > -1e-6);
  }
  CHECK(solver.time() == doctest::Approx(10.0));
}

TEST_CASE("segment bookkeeping and errors") {
  CHECK(substep_count(20.0, 0.01) == 2000);
  CHECK(substep_count(1.0, 0.3) == 4);
  CHECK(substep_count(0.0, 0.01) == 0);
  CHECK_THROWS_AS(substep_count(1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(substep_count(-1.0, 0.1), ValidationError);
  CHECK_THROWS_AS(MasterEquationSolver(DensityMatrix::pure(plus_state()), -0.1), ValidationError);

  MasterEquationSolver solver(DensityMatrix::pure(plus_state()));
  CHECK_THROWS_AS(solver.advance({Operator::zero(2), 1.0, NoiseModel::none(2), "wrong"}), ShapeError);

  const EvolutionSegment blowup{Operator(1, 1e300 * pauli(Axis::z)), 1.0, NoiseModel::dephasing(1, 0.1), "runaway"};
  try {
    integrate_master(DensityMatrix::pure(plus_state()), std::span(&blowup, 1));
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(std::string(e.what()).find("runaway") != std::string::npos);
    CHECK(std::string(e.what()).find("t = ") != std::string::npos);
  }
}
