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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "noisyqec/gates.hpp"
#include "noisyqec/hilbert.hpp"
#include "noisyqec/lindblad.hpp"
#include "noisyqec/trajectories.hpp"

namespace noisyqec {

enum class Scenario { storage, transmission };

const char* scenario_name(Scenario s);

struct PauliError {
  int qubit;
  Axis axis;

  friend bool operator==(const PauliError&, const PauliError&) = default;
};

std::string to_string(const PauliError& e);

/// One row of a derived syndrome table.
struct SyndromeEntry {
  std::optional<PauliError> error;  // nullopt: no error
  unsigned syndrome;                // bit k is the outcome of ancilla qubit k + 1
  char correction;                  // 'I', 'X', 'Y' or 'Z' on the data qubit
};

struct CorrectionTable {
  std::vector<char> corrections;  // indexed by syndrome, total
  std::vector<SyndromeEntry> entries;

  std::size_t size() const { return corrections.size(); }
  Matrix correction(unsigned syndrome) const;
  /// Number of different syndromes produced by the listed errors.
  std::size_t distinct_syndromes() const;
};

struct CodeSpec {
  std::string name;  // "3bit" or "5bit"
  int n = 0;
  int data_qubit = 0;
  StateVector c0;
  StateVector c1;
  GateSchedule encode;
  GateSchedule decode;
  CorrectionTable table;
  NoiseKind noise_kind = NoiseKind::dephasing;
  double kappa_factor = 1.0;  // kappa_n = kappa_factor * kappa

  /// Encoding plus decoding time.
  double delta() const { return encode.total_duration() + decode.total_duration(); }
  double kappa_n(double kappa) const { return kappa_factor * kappa; }
  /// Single-qubit Pauli errors the code is designed to correct.
  std::vector<PauliError> correctable_errors() const;
};

/// Codewords (|+++>, |--->), dephasing noise, kappa_3 = 2 kappa.
CodeSpec three_qubit_code();
/// Five-qubit code, isotropic noise, kappa_5 = 4 kappa.
CodeSpec five_qubit_code();
/// Looks up a code by qubit count (3 or 5).
CodeSpec code_for(int n);

/// Builds a normalized state from (coefficient, ket string) terms, where the
/// character at position p is the value of qubit p.
StateVector state_from_kets(std::span<const std::pair<double, std::string>> terms);

/// Runs every correctable error (and the no-error case) through
/// decode * E * encode on |0> and |1> inputs, reads the ancilla outcome and
/// finds the Pauli that restores the data qubit.
CorrectionTable derive_correction_table(const CodeSpec& code);

/// Measures the ancillas, applies the table's correction and keeps the data
/// qubit: rho -> sum_s C_s Tr_anc[Pi_s rho Pi_s] C_s^dag.
DensityMatrix correction_channel(const DensityMatrix& rho, const CodeSpec& code);
/// The same channel applied to a pure register state.
DensityMatrix correction_channel(const StateVector& psi, const CodeSpec& code);

/// Probability of each ancilla outcome.
std::vector<double> syndrome_probabilities(const StateVector& psi, const CodeSpec& code);

StateVector apply_error(const StateVector& psi, const PauliError& e);
DensityMatrix apply_error(const DensityMatrix& rho, const PauliError& e);

/// psi_in on the data qubit, |0> on the ancillas.
StateVector prepare_input(const StateVector& psi_in, const CodeSpec& code);

struct Experiment {
  double kappa = 0.0;
  double T = 0.0;
  Scenario scenario = Scenario::storage;
  std::optional<double> kappa_gate;  // rate during encode/decode; defaults to kappa

  double gate_rate() const { return kappa_gate.value_or(kappa); }
};

enum class MethodKind { master, trajectories };

struct RunMethod {
  MethodKind kind = MethodKind::master;
  double dt = kDefaultMasterStep;  // master equation step
  TrajectoryConfig trajectories;
  /// Trajectories only: sample one syndrome per trajectory instead of
  /// averaging over all outcomes.
  bool sampled_measurement = false;

  static RunMethod master(double dt = kDefaultMasterStep);
  static RunMethod ensemble(const TrajectoryConfig& cfg);
};

struct RunResult {
  double mismatch = 0.0;
  double standard_error = 0.0;  // 0 for the master equation
};

/// Free-evolution time for the scenario; throws ParameterError when a
/// storage run is shorter than the encoding and decoding.
double free_time(const CodeSpec& code, const Experiment& ex);

/// Encode, free evolution and decode as noisy segments.
std::vector<EvolutionSegment> pipeline_segments(const CodeSpec& code, const Experiment& ex);

/// Mismatch of the corrected data qubit with psi_in.
RunResult protected_run(const StateVector& psi_in, const CodeSpec& code, const Experiment& ex,
                        const RunMethod& method = {});

/// Master-equation runs for several total times sharing one integration of
/// the encoder and of the free evolution. `times` must be ascending.
std::vector<double> protected_run_series(const StateVector& psi_in, const CodeSpec& code, double kappa,
                                         std::span<const double> times, Scenario scenario,
                                         double dt = kDefaultMasterStep);

/// Mismatch of a lone qubit left in the noise for time T.
double unprotected_run(const StateVector& psi_in, NoiseKind kind, double kappa, double T,
                       double dt = kDefaultMasterStep);
std::vector<double> unprotected_run_series(const StateVector& psi_in, NoiseKind kind, double kappa,
                                           std::span<const double> times, double dt = kDefaultMasterStep);

/// Noiseless pipeline with `errors` applied together at `t_error` within a
/// free evolution of length `free_duration`.
double injected_error_run(const StateVector& psi_in, const CodeSpec& code, std::span<const PauliError> errors,
                          double t_error, double free_duration, double dt = kDefaultMasterStep);

}  // namespace noisyqec
