// Copyright 2026 The fgjlab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>

#include "fgj/perturb.hpp"

namespace fgj {

/// Linear system  y_{n+1} = (Lambda + A_n) y_n  with diagonal Lambda and a
/// square-summable matrix perturbation A_n (row-major, filled on demand).
struct CoffmanSystem {
  int dim = 0;
  std::vector<cdouble> lambda;
  std::function<void(long long, cdouble*)> fill_a;  // writes dim*dim entries for step n

  void a_at(long long n, std::vector<cdouble>& buf) const {
    buf.resize(static_cast<size_t>(dim) * dim);
    fill_a(n, buf.data());
  }
};

CoffmanSystem make_coffman(std::vector<cdouble> lambda,
                           std::function<void(long long, cdouble*)> fill_a);

/// State vector up to a shared power-of-two scale: true value = v * 2^pow2.
struct ScaledVec {
  std::vector<cdouble> v;
  long long pow2 = 0;
  double log_abs(int i) const { return pow2 * std::log(2.0) + std::log(std::abs(v[i])); }
};

struct Trajectory {
  std::vector<long long> ns;
  std::vector<ScaledVec> states;
};

/// Evolves y across [1, n_final], recording the state at each requested index
/// (sorted, within range).  Throws on an exactly singular step matrix.
Trajectory evolve(const CoffmanSystem& sys, std::vector<cdouble> y1, long long n_final,
                  std::vector<long long> checkpoints);

/// Sum of squared Frobenius norms of A_n up to the horizon.
double sum_a2(const CoffmanSystem& sys, long long n_max);

/// gamma_j(n) = prod_{k=n0}^{n-1} (lambda_j + (A_k)_{jj}), log-scaled.
/// Throws (naming k) when a factor vanishes; raise n0 past it.
LogComplex gamma_product(const CoffmanSystem& sys, int j, long long n, long long n0 = 1);

/// The solution tracking the j-th diagonal profile:  y_{n,j}/gamma_j(n) -> 1
/// and the other components -> 0.  Built by the two-sided dichotomy fixed
/// point over the horizon 4 * n_horizon: components with smaller modulus are
/// accumulated forward, the j-th and larger-modulus ones backward from the
/// far horizon.  (One-sided shooting cannot cross the exponential dichotomy
/// in finite precision; the split iteration is the stable equivalent.)
struct ProfileResult {
  std::vector<cdouble> y1;
  std::vector<long long> ns;             // geometric checkpoints <= n_horizon
  std::vector<double> target_residual;   // |y_{n,j}/gamma_j(n) - 1|
  std::vector<double> cross_residual;    // max_{k!=j} |y_{n,k}/gamma_j(n)|
  double recurrence_residual = 0.0;      // sampled one-step consistency of the profile
  int iterations = 0;
};
ProfileResult find_profile_solution(const CoffmanSystem& sys, int j, long long n_horizon);

/// Classification of a given solution when the moduli are strictly ordered
/// and the diagonal partial sums are Cauchy: the surviving index j with
/// y_{n,j} / lambda_j^n -> c != 0.  Refuses (with reason) when the diagonal
/// Cauchy check fails at the supplied checkpoints.
struct ClassifyResult {
  bool refused = false;
  std::string reason;
  int j = -1;
  cdouble c;
  double max_other = 0.0;          // max_k |y_{N,k} / lambda_j^N|
  std::vector<double> diag_tails;  // per-index octave tails of sum (A_n)_{jj}
};
ClassifyResult classify_solution(const CoffmanSystem& sys, std::vector<cdouble> y1,
                                 long long n_final, const std::vector<long long>& checkpoints,
                                 double tail_tol = 5e-3);

/// Single-band reduction of the polynomial recurrence at x = z + 1/z with
/// 0 < |z| < 1:  the transformed state (phi_n, psi_n) obeys
/// y_{n+1} = (Lambda + A_n) y_n with Lambda = diag(1/z, z), and the coupling
/// A_n = diag(1/z, z) R_{n-1}^{-1} Q_n R_{n-1} is built from bounded
/// closed-form frames R_n (det R_n = 1 for all n).
struct FreeCaseAssembly {
  cdouble z, x;
  Perturbation pert;
  long long horizon = 0;

  /// Base polynomial times z^n: (z^{2n+2} - 1)/(z^2 - 1); bounded, defined for n >= -1.
  cdouble poly_scaled(long long n) const;
  std::array<cdouble, 4> r_matrix(long long n) const;
  std::array<cdouble, 4> r_inverse(long long n) const;
  std::array<cdouble, 4> q_matrix(long long n) const;
  std::array<cdouble, 4> a_matrix(long long n) const;
  CoffmanSystem system() const;
  /// max |det R_n - det R_0| over sampled n <= upto.
  double det_residual(long long upto) const;
};
FreeCaseAssembly assemble_free_case(const Perturbation& pert, cdouble z, long long horizon);

struct DiagonalSumReport {
  std::vector<std::pair<long long, cdouble>> s11, s22;
  SumVerdict verdict11 = SumVerdict::converged, verdict22 = SumVerdict::converged;
  double tail11 = 0.0, tail22 = 0.0;
  double identity_residual = 0.0;  // worst mismatch of the two diagonal entries
  std::vector<std::pair<long long, double>> a2_partial;  // partial sums of ||A_n||_F^2
  double a2_tail = 0.0;
};
DiagonalSumReport diagonal_sum_check(const FreeCaseAssembly& asmb,
                                     const std::vector<long long>& checkpoints,
                                     double tail_tol = 5e-3);

struct PhiPsiReport {
  cdouble c1;                      // mean of z^n phi_n over the final window
  cdouble ratio_limit;             // mean of the reconstructed ratio over the final window
  double second_final = 0.0;       // |z^n psi_n| at the horizon (must decay)
  std::vector<std::pair<long long, double>> second_decay;
  double reconstruction_residual = 0.0;  // reconstructed vs direct recurrence ratio
};
/// Evolves (phi, psi), estimates the leading constant, and cross-checks the
/// reconstructed ratio against the direct two-recurrence ratio trace.
/// Throws if the leading component appears to vanish (that alternative would
/// make the polynomial sequence decay, impossible off the real axis).
PhiPsiReport phi_psi_limit_check(const FreeCaseAssembly& asmb, long long n_final);

}  // namespace fgj
