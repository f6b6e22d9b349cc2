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

#include "fgj/bandset.hpp"
#include "fgj/numerics.hpp"

namespace fgj {

/// Period-p Jacobi coefficients, 1-based and extended p-periodically to all
/// integer indices (so a_at(0) == a_at(p)).
struct PeriodicJacobi {
  std::vector<double> a;  // off-diagonal, positive
  std::vector<double> b;  // diagonal

  int period() const { return static_cast<int>(a.size()); }
  double a_at(long long n) const { return a[mod_index(n)]; }
  double b_at(long long n) const { return b[mod_index(n)]; }

 private:
  size_t mod_index(long long n) const {
    long long p = period();
    long long r = (n - 1) % p;
    if (r < 0) r += p;
    return static_cast<size_t>(r);
  }
};

/// The free matrix: period 1, a = 1, b = 0.
PeriodicJacobi free_jacobi();
PeriodicJacobi make_periodic(std::vector<double> a, std::vector<double> b);

/// Trace of the one-period transfer matrix, normalized so the free case gives
/// discriminant(x) = x.
cdouble discriminant(const PeriodicJacobi& j, cdouble x);

/// Essential spectrum as a band set: the preimage of [-2, 2] under the
/// discriminant.  Band edges are polished by bisection to root_tol; closed
/// touching bands are merged (reducing the gap count).
BandSet bands_of_periodic(const PeriodicJacobi& j, double root_tol = 1e-12);

struct Rational {
  long long num = 0, den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Harmonic measures of the leftmost bands; each elementary (period-scale)
/// band carries weight 1/p, so every measure is a rational m_j / p.  The list
/// has one entry per gap of the merged band set.
std::vector<Rational> periodic_harmonic_measures(const PeriodicJacobi& j,
                                                 double root_tol = 1e-12);

/// Solutions of  a_n w_{n+1} + (b_n - E) w_n + a_{n-1} w_{n-1} = 0  at the top
/// band edge E: a positive p-periodic solution u (normalized min over a
/// period = 1) and a linearly growing one  v_n = kappa * n * u_n + s_n  with
/// an exactly p-periodic remainder s; v is rescaled so kappa = 1.
struct BandEdgeSolutions {
  double energy = 0.0;
  double kappa = 1.0;
  double remainder_bound = 0.0;  // max |s_n| over a period (c3)
  double u_lower = 1.0;          // min u over a period (c1)
  double u_upper = 1.0;          // max u over a period (c2)

  double u(long long n) const { return u_per[index(n)]; }
  double v(long long n) const { return kappa * static_cast<double>(n) * u_per[index(n)] + s_per[index(n)]; }

  std::vector<double> u_per, s_per;  // one period each, index n mod p

 private:
  size_t index(long long n) const {
    long long p = static_cast<long long>(u_per.size());
    long long r = n % p;
    if (r < 0) r += p;
    return static_cast<size_t>(r);
  }
};

/// Builds u and v at a parabolic top band edge.  Throws std::domain_error if
/// |discriminant(E)| is not 2 within tolerance, or if the periodic solution is
/// not sign-definite (E is not the top edge).
BandEdgeSolutions band_edge_solutions(const PeriodicJacobi& j, double energy,
                                      double root_tol = 1e-12);

}  // namespace fgj
