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

#include "noisyqec/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "json.hpp"

namespace noisyqec {

namespace {

using std::numbers::pi;

std::vector<int> term_qubits(const GateTerm& t) {
  std::vector<int> qs;
  qs.reserve(t.controls.size());
  for (const auto& c : t.controls) qs.push_back(c.qubit);
  return qs;
}

GateHamiltonian single_qubit_gate(GateKind kind, const std::string& label, const Matrix& h2, int target,
                                  int n_qubits) {
  GateHamiltonian g;
  g.label = label;
  g.hamiltonian = embed(h2, target, n_qubits);
  g.terms.push_back({kind, {{target, Polarity::black}}});
  return g;
}

const char* kind_name(GateKind k) {
  switch (k) {
    case GateKind::hadamard:
      return "A";
    case GateKind::y_rotation:
      return "Y";
    case GateKind::y_rotation_inv:
      return "Ydag";
    case GateKind::phase:
      return "phase";
  }
  return "?";
}

GateHamiltonian A(int q, int n) { return h_A(q, n); }

GateHamiltonian y_inverse(int q, int n) {
  GateHamiltonian g = h_y(q, n);
  g.hamiltonian = Complex{-1.0} * g.hamiltonian;
  g.terms.front().kind = GateKind::y_rotation_inv;
  g.label = "Ydag" + std::to_string(q);
  return g;
}

GateHamiltonian phase_gate(std::initializer_list<Control> controls, int n) {
  std::vector<Control> cs(controls);
  return h_cphase(cs, n);
}

GateHamiltonian step(std::string label, std::initializer_list<GateHamiltonian> gates) {
  std::vector<GateHamiltonian> gs(gates);
  GateHamiltonian s = gs.size() == 1 ? gs.front() : simultaneous(gs);
  s.label = std::move(label);
  return s;
}

}  // namespace

GateSchedule::GateSchedule(int n_qubits, std::vector<GateHamiltonian> steps)
    : n_qubits_(n_qubits), steps_(std::move(steps)) {
  for (const auto& s : steps_) {
    if (s.hamiltonian.n_qubits() != n_qubits_) throw ShapeError("schedule step '" + s.label + "' has wrong register size");
    if (!(s.duration >= 0.0)) throw ValidationError("schedule step '" + s.label + "' has negative duration");
  }
}

double GateSchedule::total_duration() const {
  double t = 0.0;
  for (const auto& s : steps_) t += s.duration;
  return t;
}

Operator GateSchedule::unitary() const {
  Operator u = Operator::identity(n_qubits_);
  for (const auto& s : steps_) u = s.unitary() * u;
  return u;
}

GateSchedule GateSchedule::reversed_adjoint() const {
  std::vector<GateHamiltonian> out;
  out.reserve(steps_.size());
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    std::vector<GateHamiltonian> parts;
    parts.reserve(it->terms.size());
    for (const auto& t : it->terms) {
      const int q = t.controls.front().qubit;
      switch (t.kind) {
        case GateKind::hadamard:
          parts.push_back(h_A(q, n_qubits_));
          break;
        case GateKind::y_rotation:
          parts.push_back(y_inverse(q, n_qubits_));
          break;
        case GateKind::y_rotation_inv:
          parts.push_back(h_y(q, n_qubits_));
          break;
        case GateKind::phase:
          parts.push_back(h_cphase(t.controls, n_qubits_));
          break;
      }
    }
    GateHamiltonian g = parts.size() == 1 ? parts.front() : simultaneous(parts);
    g.duration = it->duration;
    // Self-adjoint steps keep their name; y rotations are renamed per gate.
    if (std::none_of(it->terms.begin(), it->terms.end(), [](const GateTerm& t) {
          return t.kind == GateKind::y_rotation || t.kind == GateKind::y_rotation_inv;
        })) {
      g.label = it->label;
    }
    out.push_back(std::move(g));
  }
  return GateSchedule(n_qubits_, std::move(out));
}

GateHamiltonian h_A(int target, int n_qubits) {
  const Matrix h2 = (pi / 2.0) * ((pauli(Axis::x) - pauli(Axis::z)) / std::sqrt(2.0) + Matrix::Identity(2, 2));
  return single_qubit_gate(GateKind::hadamard, "A" + std::to_string(target), h2, target, n_qubits);
}

GateHamiltonian h_y(int target, int n_qubits) {
  const Matrix h2 = -(pi / 4.0) * pauli(Axis::y);
  return single_qubit_gate(GateKind::y_rotation, "Y" + std::to_string(target), h2, target, n_qubits);
}

GateHamiltonian h_cphase(std::span<const Control> controls, int n_qubits) {
  if (controls.size() < 2) throw ValidationError("controlled phase needs at least two control qubits");
  std::set<int> seen;
  for (const auto& c : controls) {
    if (c.qubit < 0 || c.qubit >= n_qubits) throw std::out_of_range("control qubit outside register");
    if (!seen.insert(c.qubit).second) {
      throw ValidationError("controlled phase lists qubit " + std::to_string(c.qubit) + " twice");
    }
  }
  // The product of projectors is diagonal: pi on basis states where every
  // control matches its polarity.
  const std::size_t d = dimension_of(n_qubits);
  Matrix h = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    bool fires = true;
    for (const auto& c : controls) {
      const bool bit = (i >> c.qubit) & 1U;
      fires = fires && (bit == (c.polarity == Polarity::black));
    }
    if (fires) h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = pi;
  }
  GateHamiltonian g;
  g.label = "P";
  for (const auto& c : controls) g.label += std::to_string(c.qubit);
  g.hamiltonian = Operator(n_qubits, std::move(h));
  g.terms.push_back({GateKind::phase, std::vector<Control>(controls.begin(), controls.end())});
  return g;
}

GateHamiltonian simultaneous(std::span<const GateHamiltonian> gates) {
  if (gates.empty()) throw ValidationError("simultaneous step needs at least one gate");
  GateHamiltonian out;
  out.duration = gates.front().duration;
  out.hamiltonian = Operator::zero(gates.front().hamiltonian.n_qubits());
  std::set<int> used;
  for (const auto& g : gates) {
    if (g.duration != out.duration) throw ValidationError("simultaneous gates must share a duration");
    for (const auto& t : g.terms) {
      for (int q : term_qubits(t)) {
        if (!used.insert(q).second) {
          throw ValidationError("simultaneous gates overlap on qubit " + std::to_string(q));
        }
      }
    }
    out.hamiltonian += g.hamiltonian;
    out.terms.insert(out.terms.end(), g.terms.begin(), g.terms.end());
    if (!out.label.empty()) out.label += "+";
    out.label += g.label;
  }
  return out;
}

GateSchedule encode_schedule_3bit() {
  constexpr int n = 3;
  const Control d{0, Polarity::black};
  return GateSchedule(n, {
                             step("A1+A2", {A(1, n), A(2, n)}),
                             step("B01", {phase_gate({d, {1, Polarity::black}}, n)}),
                             step("B02", {phase_gate({d, {2, Polarity::black}}, n)}),
                             step("A1+A2", {A(1, n), A(2, n)}),
                             step("Y0+Y1+Y2", {h_y(0, n), h_y(1, n), h_y(2, n)}),
                         });
}

GateSchedule decode_schedule_3bit() { return encode_schedule_3bit().reversed_adjoint(); }

GateSchedule encode_schedule_5bit() {
  constexpr int n = 5;
  constexpr auto b = Polarity::black;
  constexpr auto w = Polarity::white;
  // Qubit 0 carries the input state; 1..4 start in |0>. C023 fires on
  // (q0, q2, q3) = (0, 0, 0) and the q4 dot of B24 is white; with these
  // polarities the network reproduces the codewords exactly.
  return GateSchedule(n, {
                             step("A1+A2+A3", {A(1, n), A(2, n), A(3, n)}),
                             step("B023", {phase_gate({{0, b}, {2, b}, {3, b}}, n)}),
                             step("C023", {phase_gate({{0, w}, {2, w}, {3, w}}, n)}),
                             step("A4", {A(4, n)}),
                             step("B04", {phase_gate({{0, b}, {4, b}}, n)}),
                             step("A0", {A(0, n)}),
                             step("B03+B14", {phase_gate({{0, b}, {3, b}}, n), phase_gate({{1, b}, {4, b}}, n)}),
                             step("B01+B24", {phase_gate({{0, b}, {1, b}}, n), phase_gate({{2, b}, {4, w}}, n)}),
                             step("A0+A4", {A(0, n), A(4, n)}),
                             step("B03", {phase_gate({{0, b}, {3, b}}, n)}),
                         });
}

GateSchedule decode_schedule_5bit() { return encode_schedule_5bit().reversed_adjoint(); }

std::string schedule_to_json(const GateSchedule& schedule, int indent) {
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const auto& s : schedule.steps()) {
    nlohmann::ordered_json gates = nlohmann::ordered_json::array();
    for (const auto& t : s.terms) {
      nlohmann::ordered_json g;
      g["type"] = kind_name(t.kind);
      g["qubits"] = term_qubits(t);
      if (t.kind == GateKind::phase) {
        std::vector<std::string> pol;
        for (const auto& c : t.controls) pol.emplace_back(c.polarity == Polarity::black ? "black" : "white");
        g["polarity"] = pol;
      }
      gates.push_back(std::move(g));
    }
    nlohmann::ordered_json js;
    js["label"] = s.label;
    js["duration"] = s.duration;
    js["gates"] = std::move(gates);
    steps.push_back(std::move(js));
  }
  return steps.dump(indent);
}

}  // namespace noisyqec
