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

// Reference implementations used only by the tests. They are written
// independently of the library: dense textbook formulas, Eigen's own
// Kronecker product and matrix exponential.

#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;
using V = Eigen::VectorXcd;

inline M I2() { return M::Identity(2, 2); }

inline M sx() {
  M m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

// Library convention: sigma_z|0> = -|0>, sigma_y = ((0, i), (-i, 0)).
inline M sy() {
  M m(2, 2);
  m << 0.0, C(0, 1), C(0, -1), 0.0;
  return m;
}

inline M sz() {
  M m(2, 2);
  m << -1.0, 0.0, 0.0, 1.0;
  return m;
}

/// ops[q] acts on qubit q; qubit 0 is the rightmost Kronecker factor.
inline M tensor(const std::vector<M>& ops) {
  M acc = M::Ones(1, 1);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    M next = Eigen::kroneckerProduct(acc, *it).eval();
    acc = next;
  }
  return acc;
}

inline M on_qubit(const M& op, int q, int n) {
  std::vector<M> ops(n, I2());
  ops[q] = op;
  return tensor(ops);
}

inline M expm(const M& h, double t) { return (C(0.0, -t) * h).exp(); }

/// -i[H, rho] + sum L rho L^dag - 1/2 {L^dag L, rho}.
inline M lindblad(const M& rho, const M& h, const std::vector<M>& ls) {
  const C i(0.0, 1.0);
  M out = -i * (h * rho - rho * h);
  for (const auto& l : ls) {
    const M ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

/// Ket written as a bit string whose character p is qubit p.
inline V ket(const std::string& bits) {
  const int n = static_cast<int>(bits.size());
  V v = V::Zero(1 << n);
  int idx = 0;
  for (int p = 0; p < n; ++p) idx |= (bits[p] == '1' ? 1 : 0) << p;
  v(idx) = 1.0;
  return v;
}

inline double fidelity_mod_phase(const V& a, const V& b) { return std::abs(a.normalized().dot(b.normalized())); }

}  // namespace oracle
