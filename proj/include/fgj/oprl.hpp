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

#include "fgj/perturb.hpp"
#include "fgj/torus.hpp"

namespace fgj {

/// Half-line Jacobi coefficients: a periodic base plus a perturbation.
/// a(n) must stay positive; a violation surfaces at evaluation time.
struct JacobiParams {
  PeriodicJacobi base;
  Perturbation delta;

  double a(long long n) const { return base.a_at(n) + delta.da(n); }
  double b(long long n) const { return base.b_at(n) + delta.db(n); }
};

inline JacobiParams with_zero_perturbation(const JacobiParams& p) {
  return JacobiParams{p.base, make_perturbation(Perturbation::Family::zero)};
}

/// Orthonormal-polynomial pair (p_{N-1}, p_N) up to a power-of-two scale;
/// the true values are pair * 2^pow2.
struct PolyPair {
  cdouble p_prev, p_curr;
  long long pow2 = 0;
  double log_abs_curr() const {
    return pow2 * std::log(2.0) + std::log(std::abs(p_curr));
  }
};

/// Runs  a_n p_n = (x - b_n) p_{n-1} - a_{n-1} p_{n-2}  from p_0 = 1,
/// p_{-1} = 0 (a_0 taken as 1), rescaling by powers of two whenever the pair
/// leaves [2^-threshold, 2^threshold].  Throws when some a_n <= 0 or the
/// iteration produces a non-finite value.
PolyPair evaluate_polynomials(const JacobiParams& params, cdouble x, long long n_steps,
                              long long rescale_threshold = 512);

/// Closed form for the free matrix:  (z^{n+1} - z^{-n-1}) / (z - z^{-1}) with
/// z + 1/z = x and |z| > 1.  At x = +-2 returns the confluent limit
/// (n+1) (+-1)^n.  Real x strictly inside (-2, 2) is rejected.
cdouble free_closed_form(cdouble x, long long n);

struct RatioSample {
  long long n = 0;
  cdouble r;          // p_n(x) / base p_n(x), formed from same-scale pairs
  double log_scale = 0.0;  // accumulated log magnitude of the base polynomial
};
struct RatioTrace {
  cdouble x;
  std::vector<RatioSample> samples;
};

/// Evolves the perturbed and base recurrences jointly with one shared
/// power-of-two rescaling schedule and records the ratio every `stride`
/// steps (plus the final step).  Requires Im x != 0 and that both parameter
/// sets share the same base.
RatioTrace ratio_trace(const JacobiParams& base_params, const JacobiParams& params,
                       cdouble x, long long n_steps, long long stride,
                       long long rescale_threshold = 512);
RatioTrace ratio_trace(const JacobiParams& params, cdouble x, long long n_steps,
                       long long stride);

enum class Convergence { converged, not_converged, inconclusive };
const char* to_string(Convergence v);

struct SzegoVerdict {
  Convergence verdict = Convergence::inconclusive;
  cdouble limit;                    // mean of the final window
  std::vector<double> window_end;   // geometric window right endpoints (as n)
  std::vector<double> window_osc;   // max(osc |r|, osc arg r) per window
  double decay_exponent = 0.0;      // fitted decay rate of osc vs n
};

/// Splits the trace tail into `windows` geometric windows (N/2^w, N/2^{w-1}]
/// and measures the oscillation (max - min of |r| and of arg r) in each.
/// converged: oscillation decreasing, final below tol, |limit| above tol.
SzegoVerdict detect_szego_limit(const RatioTrace& trace, int windows, double tol);

/// (1/N) log |p_N(x)| for real x off the essential spectrum of the base;
/// the growth exponent of the recurrence, comparable to the Green's function.
double root_asymptotics_exponent(const JacobiParams& params, double x, long long n_steps);

}  // namespace fgj
