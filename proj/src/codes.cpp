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

#include "noisyqec/codes.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

namespace noisyqec {

namespace {

constexpr double kDeterministicTol = 1e-9;

/// Basis index with data qubit value b and ancilla outcome s.
std::size_t register_index(const CodeSpec& code, unsigned b, unsigned s) {
  std::size_t idx = static_cast<std::size_t>(b) << code.data_qubit;
  int k = 0;
  for (int q = 0; q < code.n; ++q) {
    if (q == code.data_qubit) continue;
    idx |= static_cast<std::size_t>((s >> k) & 1U) << q;
    ++k;
  }
  return idx;
}

unsigned n_syndromes(const CodeSpec& code) { return 1U << (code.n - 1); }

Matrix pauli_by_name(char c) {
  switch (c) {
    case 'I':
      return Matrix::Identity(2, 2);
    case 'X':
      return pauli(Axis::x);
    case 'Y':
      return pauli(Axis::y);
    case 'Z':
      return pauli(Axis::z);
    default:
      throw ValidationError(std::string("unknown correction '") + c + "'");
  }
}

std::string complement(const std::string& bits) {
  std::string out = bits;
  for (auto& ch : out) ch = ch == '0' ? '1' : '0';
  return out;
}

void check_code_register(const CodeSpec& code, int n_qubits) {
  if (n_qubits != code.n) throw ShapeError("register size does not match the " + code.name + " code");
}

void check_single_qubit(const StateVector& psi) {
  if (psi.n_qubits() != 1) throw ShapeError("input state must be a single qubit");
}

EvolutionSegment gate_segment(const GateHamiltonian& g, const NoiseModel& noise, const std::string& stage) {
  return {g.hamiltonian, g.duration, noise, stage + " " + g.label};
}

CodeSpec finish(CodeSpec c) {
  c.table = derive_correction_table(c);
  return c;
}

}  // namespace

const char* scenario_name(Scenario s) { return s == Scenario::storage ? "storage" : "transmission"; }

std::string to_string(const PauliError& e) {
  std::ostringstream os;
  os << static_cast<char>(std::toupper(axis_name(e.axis))) << e.qubit;
  return os.str();
}

Matrix CorrectionTable::correction(unsigned syndrome) const {
  if (syndrome >= corrections.size()) throw std::out_of_range("syndrome outside table");
  return pauli_by_name(corrections[syndrome]);
}

std::size_t CorrectionTable::distinct_syndromes() const {
  std::set<unsigned> s;
  for (const auto& e : entries) s.insert(e.syndrome);
  return s.size();
}

std::vector<PauliError> CodeSpec::correctable_errors() const {
  std::vector<PauliError> out;
  for (int q = 0; q < n; ++q) {
    if (noise_kind == NoiseKind::dephasing) {
      out.push_back({q, Axis::z});
    } else {
      for (Axis a : {Axis::x, Axis::y, Axis::z}) out.push_back({q, a});
    }
  }
  return out;
}

StateVector state_from_kets(std::span<const std::pair<double, std::string>> terms) {
  if (terms.empty()) throw ValidationError("no kets given");
  const int n = static_cast<int>(terms.front().second.size());
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dimension_of(n)));
  for (const auto& [coef, ket] : terms) {
    if (static_cast<int>(ket.size()) != n) throw ShapeError("kets of different lengths");
    std::size_t idx = 0;
    for (int p = 0; p < n; ++p) {
      if (ket[p] == '1') {
        idx |= std::size_t{1} << p;
      } else if (ket[p] != '0') {
        throw ValidationError("ket '" + ket + "' is not a bit string");
      }
    }
    v(static_cast<Eigen::Index>(idx)) += coef;
  }
  return StateVector::normalized(n, std::move(v));
}

CodeSpec three_qubit_code() {
  CodeSpec c;
  c.name = "3bit";
  c.n = 3;
  std::vector<std::pair<double, std::string>> k0, k1;
  for (unsigned i = 0; i < 8; ++i) {
    std::string ket;
    for (int p = 0; p < 3; ++p) ket += ((i >> p) & 1U) ? '1' : '0';
    k0.emplace_back(1.0, ket);
    k1.emplace_back((std::popcount(i) % 2) ? -1.0 : 1.0, ket);
  }
  c.c0 = state_from_kets(k0);
  c.c1 = state_from_kets(k1);
  c.encode = encode_schedule_3bit();
  c.decode = decode_schedule_3bit();
  c.noise_kind = NoiseKind::dephasing;
  c.kappa_factor = 2.0;
  return finish(std::move(c));
}

CodeSpec five_qubit_code() {
  CodeSpec c;
  c.name = "5bit";
  c.n = 5;
  // |b> = |head> + sign |complement(head)> on qubits 0-2, then a two-qubit tail.
  auto words = [](std::initializer_list<std::tuple<double, const char*, int, const char*>> parts) {
    std::vector<std::pair<double, std::string>> t;
    for (const auto& [coef, head, sign, tail] : parts) {
      t.emplace_back(coef, std::string(head) + tail);
      t.emplace_back(coef * sign, complement(head) + tail);
    }
    return t;
  };
  const auto k0 = words({{1.0, "000", 1, "00"}, {-1.0, "010", 1, "11"}, {1.0, "001", 1, "01"}, {1.0, "011", 1, "10"}});
  const auto k1 =
      words({{-1.0, "000", -1, "11"}, {-1.0, "010", -1, "00"}, {-1.0, "001", -1, "10"}, {1.0, "011", -1, "01"}});
  c.c0 = state_from_kets(k0);
  c.c1 = state_from_kets(k1);
  c.encode = encode_schedule_5bit();
  c.decode = decode_schedule_5bit();
  c.noise_kind = NoiseKind::isotropic;
  c.kappa_factor = 4.0;
  return finish(std::move(c));
}

CodeSpec code_for(int n) {
  if (n == 3) return three_qubit_code();
  if (n == 5) return five_qubit_code();
  throw ValidationError("no code with " + std::to_string(n) + " qubits (expected 3 or 5)");
}

CorrectionTable derive_correction_table(const CodeSpec& code) {
  const Matrix enc = code.encode.unitary().matrix();
  const Matrix dec = code.decode.unitary().matrix();
  const unsigned ns = n_syndromes(code);
  CorrectionTable table;
  table.corrections.assign(ns, '\0');

  std::vector<std::optional<PauliError>> cases{std::nullopt};
  for (const auto& e : code.correctable_errors()) cases.emplace_back(e);

  for (const auto& err : cases) {
    const std::string name = err ? to_string(*err) : std::string("no error");
    Matrix m = dec;
    if (err) m = m * embed(pauli(err->axis), err->qubit, code.n).matrix();
    m = m * enc;

    Matrix v(2, 2);
    std::optional<unsigned> syndrome;
    for (unsigned a = 0; a < 2; ++a) {
      const Vector out = m.col(static_cast<Eigen::Index>(register_index(code, a, 0)));
      unsigned best = 0;
      double best_p = -1.0;
      for (unsigned s = 0; s < ns; ++s) {
        const double p = std::norm(out(static_cast<Eigen::Index>(register_index(code, 0, s)))) +
                         std::norm(out(static_cast<Eigen::Index>(register_index(code, 1, s))));
        if (p > best_p) {
          best_p = p;
          best = s;
        }
      }
      if (best_p < 1.0 - kDeterministicTol || (syndrome && *syndrome != best)) {
        throw CodeConsistencyError("ancilla outcome for " + name + " is not deterministic");
      }
      syndrome = best;
      for (unsigned b = 0; b < 2; ++b) {
        v(b, a) = out(static_cast<Eigen::Index>(register_index(code, b, best)));
      }
    }

    char found = '\0';
    for (char c : {'I', 'X', 'Y', 'Z'}) {
      const Complex t = (pauli_by_name(c).adjoint() * v).trace() / 2.0;
      if (std::abs(std::abs(t) - 1.0) < kDeterministicTol) {
        if (found != '\0') throw CodeConsistencyError("ambiguous correction for " + name);
        found = c;
      }
    }
    if (found == '\0') throw CodeConsistencyError("no Pauli correction restores the data qubit after " + name);

    char& slot = table.corrections[*syndrome];
    if (slot != '\0' && slot != found) {
      throw CodeConsistencyError("syndrome " + std::to_string(*syndrome) + " needs two different corrections");
    }
    slot = found;
    table.entries.push_back({err, *syndrome, found});
  }
  // Outcomes no single error produces default to doing nothing.
  for (auto& c : table.corrections) {
    if (c == '\0') c = 'I';
  }
  return table;
}

DensityMatrix correction_channel(const DensityMatrix& rho, const CodeSpec& code) {
  check_code_register(code, rho.n_qubits());
  Matrix out = Matrix::Zero(2, 2);
  Matrix block(2, 2);
  const Matrix& r = rho.matrix();
  for (unsigned s = 0; s < n_syndromes(code); ++s) {
    for (unsigned b = 0; b < 2; ++b) {
      for (unsigned bp = 0; bp < 2; ++bp) {
        block(b, bp) = r(static_cast<Eigen::Index>(register_index(code, b, s)),
                         static_cast<Eigen::Index>(register_index(code, bp, s)));
      }
    }
    const Matrix c = code.table.correction(s);
    out += c * block * c.adjoint();
  }
  return DensityMatrix::unchecked(1, std::move(out));
}

DensityMatrix correction_channel(const StateVector& psi, const CodeSpec& code) {
  check_code_register(code, psi.n_qubits());
  Matrix out = Matrix::Zero(2, 2);
  Vector phi(2);
  for (unsigned s = 0; s < n_syndromes(code); ++s) {
    for (unsigned b = 0; b < 2; ++b) phi(b) = psi.amplitudes()(static_cast<Eigen::Index>(register_index(code, b, s)));
    const Vector fixed = code.table.correction(s) * phi;
    out += fixed * fixed.adjoint();
  }
  return DensityMatrix::unchecked(1, std::move(out));
}

std::vector<double> syndrome_probabilities(const StateVector& psi, const CodeSpec& code) {
  check_code_register(code, psi.n_qubits());
  std::vector<double> p(n_syndromes(code));
  for (unsigned s = 0; s < p.size(); ++s) {
    p[s] = std::norm(psi.amplitudes()(static_cast<Eigen::Index>(register_index(code, 0, s)))) +
           std::norm(psi.amplitudes()(static_cast<Eigen::Index>(register_index(code, 1, s))));
  }
  return p;
}

StateVector apply_error(const StateVector& psi, const PauliError& e) {
  Vector out;
  apply_pauli(psi.amplitudes(), e.qubit, e.axis, out);
  return StateVector(psi.n_qubits(), std::move(out));
}

DensityMatrix apply_error(const DensityMatrix& rho, const PauliError& e) {
  Matrix out = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  accumulate_pauli_conjugation(rho.matrix(), e.qubit, e.axis, 1.0, out);
  return DensityMatrix::unchecked(rho.n_qubits(), std::move(out));
}

StateVector prepare_input(const StateVector& psi_in, const CodeSpec& code) {
  check_single_qubit(psi_in);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dimension_of(code.n)));
  for (unsigned b = 0; b < 2; ++b) v(static_cast<Eigen::Index>(register_index(code, b, 0))) = psi_in.amplitudes()(b);
  return StateVector(code.n, std::move(v));
}

RunMethod RunMethod::master(double dt) {
  RunMethod m;
  m.kind = MethodKind::master;
  m.dt = dt;
  return m;
}

RunMethod RunMethod::ensemble(const TrajectoryConfig& cfg) {
  RunMethod m;
  m.kind = MethodKind::trajectories;
  m.trajectories = cfg;
  return m;
}

double free_time(const CodeSpec& code, const Experiment& ex) {
  if (!(ex.kappa >= 0.0) || !(ex.T >= 0.0)) throw ParameterError("kappa and T must be non-negative");
  if (ex.scenario == Scenario::transmission) return ex.T;
  const double delta = code.delta();
  if (ex.T < delta) {
    std::ostringstream msg;
    msg << "storage time T = " << ex.T << " is shorter than encoding plus decoding (" << delta << ")";
    throw ParameterError(msg.str());
  }
  return ex.T - delta;
}

std::vector<EvolutionSegment> pipeline_segments(const CodeSpec& code, const Experiment& ex) {
  const double t_free = free_time(code, ex);
  const NoiseModel gate_noise = NoiseModel::of_kind(code.noise_kind, code.n, ex.gate_rate());
  const NoiseModel free_noise = NoiseModel::of_kind(code.noise_kind, code.n, ex.kappa);
  std::vector<EvolutionSegment> segs;
  for (const auto& g : code.encode.steps()) segs.push_back(gate_segment(g, gate_noise, "encode"));
  segs.push_back({Operator::zero(code.n), t_free, free_noise, "free evolution"});
  for (const auto& g : code.decode.steps()) segs.push_back(gate_segment(g, gate_noise, "decode"));
  return segs;
}

RunResult protected_run(const StateVector& psi_in, const CodeSpec& code, const Experiment& ex,
                        const RunMethod& method) {
  check_single_qubit(psi_in);
  const auto segs = pipeline_segments(code, ex);
  const StateVector input = prepare_input(psi_in, code);

  if (method.kind == MethodKind::master) {
    MasterEquationSolver solver(DensityMatrix::pure(input), method.dt);
    solver.advance(segs);
    return {mismatch(correction_channel(solver.state(), code), psi_in), 0.0};
  }

  TrajectorySampler sampler;
  if (method.sampled_measurement) {
    sampler = [&](const StateVector& psi, Rng& rng) {
      const auto probs = syndrome_probabilities(psi, code);
      const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      unsigned s = 0;
      double acc = probs[0];
      while (u >= acc && s + 1 < probs.size()) acc += probs[++s];
      Vector phi(2);
      for (unsigned b = 0; b < 2; ++b) phi(b) = psi.amplitudes()(static_cast<Eigen::Index>(register_index(code, b, s)));
      const Vector fixed = code.table.correction(s) * phi;
      return std::max(0.0, 1.0 - std::norm(psi_in.amplitudes().dot(fixed)) / fixed.squaredNorm());
    };
  } else {
    sampler = [&](const StateVector& psi, Rng&) { return mismatch(correction_channel(psi, code), psi_in); };
  }
  const EnsembleResult r = run_ensemble(input, segs, method.trajectories, sampler);
  return {r.mean, r.standard_error};
}

std::vector<double> protected_run_series(const StateVector& psi_in, const CodeSpec& code, double kappa,
                                         std::span<const double> times, Scenario scenario, double dt) {
  check_single_qubit(psi_in);
  std::vector<double> out;
  if (times.empty()) return out;
  if (!std::is_sorted(times.begin(), times.end())) throw ParameterError("times must be ascending");

  Experiment first{kappa, times.front(), scenario, std::nullopt};
  const auto segs = pipeline_segments(code, first);
  const std::size_t n_enc = code.encode.size();
  const NoiseModel free_noise = segs[n_enc].noise;

  MasterEquationSolver solver(DensityMatrix::pure(prepare_input(psi_in, code)), dt);
  solver.advance(std::span(segs).first(n_enc));
  const auto decode = std::span(segs).subspan(n_enc + 1);

  double done = 0.0;
  for (double t : times) {
    const double t_free = free_time(code, {kappa, t, scenario, std::nullopt});
    solver.advance({Operator::zero(code.n), t_free - done, free_noise, "free evolution"});
    done = t_free;
    MasterEquationSolver tail = solver;
    tail.advance(decode);
    out.push_back(mismatch(correction_channel(tail.state(), code), psi_in));
  }
  return out;
}

double unprotected_run(const StateVector& psi_in, NoiseKind kind, double kappa, double T, double dt) {
  const double t[] = {T};
  return unprotected_run_series(psi_in, kind, kappa, t, dt).front();
}

std::vector<double> unprotected_run_series(const StateVector& psi_in, NoiseKind kind, double kappa,
                                           std::span<const double> times, double dt) {
  check_single_qubit(psi_in);
  if (!std::is_sorted(times.begin(), times.end())) throw ParameterError("times must be ascending");
  const NoiseModel noise = NoiseModel::of_kind(kind, 1, kappa);
  MasterEquationSolver solver(DensityMatrix::pure(psi_in), dt);
  std::vector<double> out;
  double done = 0.0;
  for (double t : times) {
    if (!(t >= 0.0)) throw ParameterError("T must be non-negative");
    solver.advance({Operator::zero(1), t - done, noise, "free evolution"});
    done = t;
    out.push_back(mismatch(solver.state(), psi_in));
  }
  return out;
}

double injected_error_run(const StateVector& psi_in, const CodeSpec& code, std::span<const PauliError> errors,
                          double t_error, double free_duration, double dt) {
  check_single_qubit(psi_in);
  if (!(t_error >= 0.0) || t_error > free_duration) throw ParameterError("error time outside the free evolution");
  const NoiseModel quiet = NoiseModel::none(code.n);

  MasterEquationSolver before(DensityMatrix::pure(prepare_input(psi_in, code)), dt);
  for (const auto& g : code.encode.steps()) before.advance(gate_segment(g, quiet, "encode"));
  before.advance({Operator::zero(code.n), t_error, quiet, "free evolution"});

  DensityMatrix rho = before.state();
  for (const auto& e : errors) {
    if (e.qubit < 0 || e.qubit >= code.n) throw std::out_of_range("error qubit outside register");
    rho = apply_error(rho, e);
  }

  MasterEquationSolver after(rho, dt);
  after.advance({Operator::zero(code.n), free_duration - t_error, quiet, "free evolution"});
  for (const auto& g : code.decode.steps()) after.advance(gate_segment(g, quiet, "decode"));
  return mismatch(correction_channel(after.state(), code), psi_in);
}

}  // namespace noisyqec
