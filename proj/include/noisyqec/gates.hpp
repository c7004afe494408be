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

#include "noisyqec/hilbert.hpp"

namespace noisyqec {

/// Control dot colour: black fires on |1>, white fires on |0>.
enum class Polarity { black, white };

struct Control {
  int qubit;
  Polarity polarity = Polarity::black;
};

enum class GateKind {
  hadamard,        // H_A = (pi/2)((sx - sz)/sqrt2 + 1); exp(-i H_A) = -U_A
  y_rotation,      // H_y = -(pi/4) sy
  y_rotation_inv,  // -H_y, the adjoint gate used by the 3-qubit decoder
  phase,           // pi * prod_q P_q over the controls
};

/// One physical gate inside a time step, kept for documentation and JSON.
struct GateTerm {
  GateKind kind;
  std::vector<Control> controls;  // a single entry (the target) for one-qubit gates
};

/// A Hamiltonian switched on for `duration` time units (hbar = 1).
struct GateHamiltonian {
  std::string label;
  Operator hamiltonian;
  double duration = 1.0;
  std::vector<GateTerm> terms;

  /// exp(-i H duration).
  Operator unitary() const { return expm_hermitian(hamiltonian, duration); }
};

class GateSchedule {
 public:
  GateSchedule() = default;
  GateSchedule(int n_qubits, std::vector<GateHamiltonian> steps);

  int n_qubits() const { return n_qubits_; }
  const std::vector<GateHamiltonian>& steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }
  double total_duration() const;

  /// Product of the step unitaries, last step leftmost.
  Operator unitary() const;

  /// Reverse step order; each step is replaced by its adjoint gate. Hadamard
  /// and phase gates are self-adjoint, y rotations flip sign.
  GateSchedule reversed_adjoint() const;

 private:
  int n_qubits_ = 0;
  std::vector<GateHamiltonian> steps_;
};

GateHamiltonian h_A(int target, int n_qubits);
GateHamiltonian h_y(int target, int n_qubits);
/// pi * prod P_q; needs at least two distinct qubits.
GateHamiltonian h_cphase(std::span<const Control> controls, int n_qubits);

/// Gates applied in the same time step. Summands must act on disjoint qubits.
GateHamiltonian simultaneous(std::span<const GateHamiltonian> gates);

/// 5 unit steps {A1+A2, B01, B02, A1+A2, Y0+Y1+Y2}; data qubit 0, ancillas 1 and 2.
GateSchedule encode_schedule_3bit();
GateSchedule decode_schedule_3bit();

/// 10 unit steps {A1+A2+A3, B023, C023, A4, B04, A0, B03+B14, B01+B24, A0+A4, B03}.
/// The data qubit is 0.
GateSchedule encode_schedule_5bit();
GateSchedule decode_schedule_5bit();

/// JSON array of steps: label, duration and per-gate qubits/polarities.
std::string schedule_to_json(const GateSchedule& schedule, int indent = 2);

}  // namespace noisyqec
