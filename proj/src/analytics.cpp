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

#include "noisyqec/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace noisyqec::analytics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

void check_common(int n, double kappa_n, double T) {
  require(n >= 1, "n must be at least 1");
  require(kappa_n >= 0.0 && std::isfinite(kappa_n), "kappa_n must be finite and non-negative");
  require(T >= 0.0 && std::isfinite(T), "T must be finite and non-negative");
}

/// n e^{-(n-1)x} - (n-1) e^{-nx}: zero or one error among n qubits.
double zero_or_one(int n, double x) {
  const double nn = n;
  return nn * std::exp(-(nn - 1.0) * x) - (nn - 1.0) * std::exp(-nn * x);
}

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

double p_snc(double kappa_n, double T) {
  check_common(1, kappa_n, T);
  return std::exp(-kappa_n * T);
}

double p_sc(int n, double kappa_n, double T) {
  check_common(n, kappa_n, T);
  const double x = kappa_n * T;
  const double nn = n;
  return clamp01(nn * std::exp(-(nn - 1.0) * x) * (-std::expm1(-x)) + std::exp(-nn * x));
}

double crossover_kT(int n) {
  require(n >= 2, "crossover needs n >= 2");
  auto f = [n](double x) { return p_sc(n, x, 1.0) - p_snc(x, 1.0); };
  double lo = kCrossoverLow;
  double hi = kCrossoverHigh;
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo * fhi > 0.0 || flo == 0.0 || fhi == 0.0) {
    throw RootFindError("p_sc(" + std::to_string(n) + ") - p_snc has no sign change on (1e-12, 5)");
  }
  while (hi - lo > kCrossoverTol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double s_sc(int n, double kappa_n, double kappa_n_prime, double T, double delta) {
  check_common(n, kappa_n, T);
  require(kappa_n_prime >= 0.0 && std::isfinite(kappa_n_prime), "kappa_n_prime must be finite and non-negative");
  require(delta >= 0.0 && delta <= 1.0, "storage needs 0 <= delta <= 1");
  return clamp01(std::exp(-n * kappa_n_prime * T * delta) * zero_or_one(n, kappa_n * (1.0 - delta) * T));
}

double t_sc(int n, double kappa_n, double kappa_n_prime, double T, double delta) {
  check_common(n, kappa_n, T);
  require(kappa_n_prime >= 0.0 && std::isfinite(kappa_n_prime), "kappa_n_prime must be finite and non-negative");
  require(delta >= 0.0 && std::isfinite(delta), "transmission needs delta >= 0");
  return clamp01(std::exp(-n * kappa_n_prime * T * delta) * zero_or_one(n, kappa_n * T));
}

double storage_crossover_delta(int n, double kappa_n_T) {
  require(n >= 2, "crossover needs n >= 2");
  require(kappa_n_T >= 0.0, "kappa_n T must be non-negative");
  const double nn = n;
  return 1.0 / nn - std::pow(nn - 1.0, 3) / (2.0 * nn * nn) * kappa_n_T;
}

double transmission_crossover_delta(int n, double kappa_n_T) {
  require(n >= 2, "crossover needs n >= 2");
  require(kappa_n_T >= 0.0, "kappa_n T must be non-negative");
  const double nn = n;
  return 1.0 / nn - (nn - 1.0) / 2.0 * kappa_n_T;
}

double t_opt(int n, double kappa_n, double Delta) {
  require(n >= 2, "t_opt needs n >= 2");
  require(kappa_n >= 0.0, "kappa_n must be non-negative");
  require(Delta >= 0.0, "Delta must be non-negative");
  if (Delta == 0.0) return 0.0;
  if (kappa_n == 0.0) return kInf;
  return std::sqrt(2.0 * Delta / ((n - 1.0) * kappa_n));
}

double ratio_R(int n, double kappa_n, double T, double delta) {
  return -std::expm1(-kappa_n * T) / (1.0 - s_sc(n, kappa_n, kappa_n, T, delta));
}

double ratio_R_transmission(int n, double kappa_n, double T, double delta) {
  return -std::expm1(-kappa_n * T) / (1.0 - t_sc(n, kappa_n, kappa_n, T, delta));
}

double p_Nsc(int n, double kappa_n, double T, double N) {
  check_common(n, kappa_n, T);
  require(N >= 1.0, "N must be at least 1");
  return clamp01(std::pow(zero_or_one(n, kappa_n * T / N), N));
}

double s_Nsc(int n, double kappa_n, double kappa_n_prime, double T, double delta, double N) {
  check_common(n, kappa_n, T);
  require(kappa_n_prime >= 0.0, "kappa_n_prime must be non-negative");
  require(N >= 1.0, "N must be at least 1");
  require(delta >= 0.0 && N * delta < 1.0, "storage needs N delta < 1");
  const double base = zero_or_one(n, kappa_n * (1.0 / N - delta) * T);
  return clamp01(std::exp(-n * N * kappa_n_prime * T * delta) * std::pow(base, N));
}

double t_Nsc(int n, double kappa_n, double kappa_n_prime, double T, double delta, double N) {
  check_common(n, kappa_n, T);
  require(kappa_n_prime >= 0.0, "kappa_n_prime must be non-negative");
  require(N >= 1.0, "N must be at least 1");
  require(delta >= 0.0, "delta must be non-negative");
  const double base = zero_or_one(n, kappa_n * T / N);
  return clamp01(std::exp(-n * N * kappa_n_prime * T * delta) * std::pow(base, N));
}

double n_opt(int n, double kappa_n, double T, double delta) {
  check_common(n, kappa_n, T);
  require(n >= 2, "n_opt needs n >= 2");
  require(delta >= 0.0, "delta must be non-negative");
  if (delta == 0.0) return kInf;
  return std::sqrt((n - 1.0) * kappa_n * T / (2.0 * delta));
}

double max_failure(int n, double kappa_n, double T, double delta) {
  check_common(n, kappa_n, T);
  require(n >= 2, "max_failure needs n >= 2");
  require(delta >= 0.0, "delta must be non-negative");
  return n * kappa_n * T * std::sqrt(2.0 * (n - 1.0) * delta * kappa_n * T);
}

CorrectionOptimum optimize_corrections(int n, double kappa_n, double T, double delta) {
  require(delta > 0.0, "the optimum needs a positive E+D fraction");
  CorrectionOptimum out{};
  out.n_real = n_opt(n, kappa_n, T, delta);
  out.failure_approx = max_failure(n, kappa_n, T, delta);

  // Largest N with N delta < 1.
  const long n_max = std::max(1L, static_cast<long>(std::ceil(1.0 / delta)) - 1);
  out.n_rounded = std::clamp(std::lround(out.n_real), 1L, n_max);
  out.failure_exact = 1.0 - s_Nsc(n, kappa_n, kappa_n, T, delta, static_cast<double>(out.n_rounded));

  const long scan_end = std::min(n_max, std::max(10L, 4 * static_cast<long>(std::ceil(out.n_real)) + 10));
  out.n_best = 1;
  out.failure_best = 1.0 - s_Nsc(n, kappa_n, kappa_n, T, delta, 1.0);
  for (long k = 2; k <= scan_end; ++k) {
    const double f = 1.0 - s_Nsc(n, kappa_n, kappa_n, T, delta, static_cast<double>(k));
    if (f < out.failure_best) {
      out.failure_best = f;
      out.n_best = k;
    }
  }
  return out;
}

double m_nec_analytic(NoiseKind kind, double kappa, double T) {
  require(kappa >= 0.0 && T >= 0.0, "kappa and T must be non-negative");
  switch (kind) {
    case NoiseKind::none:
      return 0.0;
    case NoiseKind::dephasing:
      return -0.5 * std::expm1(-2.0 * kappa * T);
    case NoiseKind::isotropic:
      return -0.5 * std::expm1(-4.0 * kappa * T);
    case NoiseKind::custom:
      break;
  }
  throw DomainError("no closed form for custom noise");
}

double m_analytic(double kappa, double T, double delta) { return m_analytic_code(5, 4.0 * kappa, T, delta); }

double m_analytic_code(int n, double kappa_n, double T, double delta) {
  return 0.5 * (1.0 - s_sc(n, kappa_n, kappa_n, T, delta));
}

}  // namespace noisyqec::analytics
