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

#include "noisyqec/lindblad.hpp"

// Closed-form success probabilities for an n-qubit code that corrects any
// single error. kappa_n is the per-qubit error rate, kappa_n_prime the rate
// while encoding and decoding, delta = Delta / T the E+D fraction and N the
// number of equally spaced correction cycles. Invalid arguments throw
// DomainError.
namespace noisyqec::analytics {

/// Bracket and tolerance used by crossover_kT.
inline constexpr double kCrossoverLow = 1e-12;
inline constexpr double kCrossoverHigh = 5.0;
inline constexpr double kCrossoverTol = 1e-10;

/// No correction: exp(-kappa_n T).
double p_snc(double kappa_n, double T);
/// Perfect, instantaneous correction: zero or one error among n qubits.
double p_sc(int n, double kappa_n, double T);

/// kappa_n T at which p_snc = p_sc(n), by bisection. Throws RootFindError
/// when the bracket holds no sign change (n = 2 never crosses).
double crossover_kT(int n);

/// Storage: E+D takes the fraction delta of T (0 <= delta <= 1).
double s_sc(int n, double kappa_n, double kappa_n_prime, double T, double delta);
/// Transmission: E+D is added on top of T.
double t_sc(int n, double kappa_n, double kappa_n_prime, double T, double delta);

/// First-order crossover delta where s_sc = p_snc (kappa' = kappa).
double storage_crossover_delta(int n, double kappa_n_T);
/// First-order crossover delta where t_sc = p_snc (kappa' = kappa).
double transmission_crossover_delta(int n, double kappa_n_T);

/// sqrt(2 Delta / ((n - 1) kappa_n)). Infinite for kappa_n = 0, zero for Delta = 0.
double t_opt(int n, double kappa_n, double Delta);

/// (1 - p_snc) / (1 - s_sc), storage with kappa' = kappa.
double ratio_R(int n, double kappa_n, double T, double delta);
/// (1 - p_snc) / (1 - t_sc), transmission with kappa' = kappa.
double ratio_R_transmission(int n, double kappa_n, double T, double delta);

/// N perfect corrections. N may be real.
double p_Nsc(int n, double kappa_n, double T, double N);
/// N imperfect corrections in storage; requires N delta < 1.
double s_Nsc(int n, double kappa_n, double kappa_n_prime, double T, double delta, double N);
double t_Nsc(int n, double kappa_n, double kappa_n_prime, double T, double delta, double N);

/// sqrt((n - 1) kappa_n T / (2 delta)); infinite for delta = 0.
double n_opt(int n, double kappa_n, double T, double delta);
/// n kappa_n T sqrt(2 (n - 1) delta kappa_n T), the leading-order minimum
/// failure probability.
double max_failure(int n, double kappa_n, double T, double delta);

struct CorrectionOptimum {
  double n_real;          // n_opt
  long n_rounded;         // nearest integer, at least 1
  double failure_approx;  // max_failure
  double failure_exact;   // 1 - s_Nsc at n_rounded (storage, kappa' = kappa)
  long n_best;            // integer N maximizing s_Nsc over a scan
  double failure_best;    // 1 - s_Nsc at n_best
};

/// Storage optimum with kappa' = kappa; the integer scan covers
/// 1 <= N < 1/delta up to a few times n_opt.
CorrectionOptimum optimize_corrections(int n, double kappa_n, double T, double delta);

/// Uncorrected single-qubit mismatch: 1/2 (1 - exp(-2 kappa T)) for
/// dephasing, 1/2 (1 - exp(-4 kappa T)) for isotropic noise.
double m_nec_analytic(NoiseKind kind, double kappa, double T);

/// 1/2 (1 - s_sc(5, 4 kappa, 4 kappa, T, delta)): a failed run leaves the
/// probe qubit fully mixed.
double m_analytic(double kappa, double T, double delta);
/// The same estimate for an n-qubit code with rate kappa_n.
double m_analytic_code(int n, double kappa_n, double T, double delta);

}  // namespace noisyqec::analytics
