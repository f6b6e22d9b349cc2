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

#include "fgj/torus.hpp"

#include <algorithm>
#include <array>

namespace fgj {

PeriodicJacobi free_jacobi() { return make_periodic({1.0}, {0.0}); }

PeriodicJacobi make_periodic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || a.size() != b.size())
    throw std::invalid_argument("make_periodic: a and b must be non-empty and of equal length");
  for (size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0)) throw std::invalid_argument("make_periodic: a[" + std::to_string(i) + "] must be positive");
    if (!std::isfinite(b[i])) throw std::invalid_argument("make_periodic: b[" + std::to_string(i) + "] must be finite");
  }
  PeriodicJacobi j;
  j.a = std::move(a);
  j.b = std::move(b);
  return j;
}

cdouble discriminant(const PeriodicJacobi& j, cdouble x) {
  // One-period product of (1/a_n) [[x - b_n, -1], [a_n^2, 0]].
  cdouble t11 = 1.0, t12 = 0.0, t21 = 0.0, t22 = 1.0;
  for (int n = 1; n <= j.period(); ++n) {
    double a = j.a_at(n), b = j.b_at(n);
    cdouble m11 = (x - b) / a, m12 = -1.0 / a, m21 = a;
    cdouble n11 = m11 * t11 + m12 * t21;
    cdouble n12 = m11 * t12 + m12 * t22;
    cdouble n21 = m21 * t11;
    cdouble n22 = m21 * t12;
    t11 = n11;
    t12 = n12;
    t21 = n21;
    t22 = n22;
  }
  return t11 + t22;
}

namespace {

// p x p Floquet matrix whose eigenvalues are the roots of discriminant = +2
// (sign = +1, periodic boundary) or -2 (sign = -1, antiperiodic).
std::vector<double> floquet_eigenvalues(const PeriodicJacobi& j, int sign) {
  const int p = j.period();
  std::vector<double> m(p * p, 0.0);
  for (int i = 0; i < p; ++i) m[i * p + i] = j.b[i];
  for (int i = 0; i + 1 < p; ++i) {
    m[i * p + i + 1] += j.a[i];
    m[(i + 1) * p + i] += j.a[i];
  }
  m[0 * p + (p - 1)] += sign * j.a[p - 1];
  m[(p - 1) * p + 0] += sign * j.a[p - 1];
  return symmetric_eigenvalues(std::move(m), p);
}

}  // namespace

BandSet bands_of_periodic(const PeriodicJacobi& j, double root_tol) {
  if (!(root_tol > 0)) throw std::invalid_argument("bands_of_periodic: root_tol must be positive");
  const int p = j.period();
  std::vector<std::pair<double, int>> edges;  // (position, target sign of discriminant)
  for (int sign : {+1, -1}) {
    for (double e : floquet_eigenvalues(j, sign)) edges.emplace_back(e, sign);
  }
  std::sort(edges.begin(), edges.end());

  double scale = std::max(1.0, std::abs(edges.front().first) + std::abs(edges.back().first));
  // Polish each simple edge by bisection on discriminant -+ 2.
  for (auto& [e, sign] : edges) {
    const double target = 2.0 * sign;
    auto f = [&](double x) { return discriminant(j, x).real() - target; };
    double delta = std::max(1e-7, 1e-9 * scale);
    double lo = e - delta, hi = e + delta;
    double flo = f(lo), fhi = f(hi);
    if (flo * fhi > 0.0) {
      // Tangential contact (a closed gap) has no sign change; keep the
      // eigenvalue.  Anything farther from +-2 means the bracketing failed.
      if (std::abs(f(e)) > 1e-6 * scale)
        throw std::runtime_error("bands_of_periodic: root bracketing failed (degenerate coefficients)");
      continue;
    }
    while (hi - lo > root_tol) {
      double mid = 0.5 * (lo + hi);
      double fm = f(mid);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((fm > 0) == (flo > 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    e = 0.5 * (lo + hi);
  }
  std::sort(edges.begin(), edges.end());

  const double merge_tol = std::max(100.0 * root_tol, 1e-10 * scale);
  BandSet e;
  for (int k = 0; k < p; ++k) {
    double lo = edges[2 * k].first, hi = edges[2 * k + 1].first;
    if (!e.bands.empty() && lo - e.bands.back().second <= merge_tol) {
      e.bands.back().second = hi;
    } else {
      e.bands.emplace_back(lo, hi);
    }
  }
  return e;
}

std::vector<Rational> periodic_harmonic_measures(const PeriodicJacobi& j, double root_tol) {
  BandSet e = bands_of_periodic(j, root_tol);
  const int p = j.period();
  // Count the elementary (period-scale) bands composing each merged band.
  std::vector<double> plus = floquet_eigenvalues(j, +1);
  std::vector<double> minus = floquet_eigenvalues(j, -1);
  std::vector<double> all;
  all.insert(all.end(), plus.begin(), plus.end());
  all.insert(all.end(), minus.begin(), minus.end());
  std::sort(all.begin(), all.end());
  std::vector<Rational> out;
  long long cumulative = 0;
  for (int band = 0; band + 1 < static_cast<int>(e.bands.size()); ++band) {
    double hi = e.bands[band].second;
    double next_lo = e.bands[band + 1].first;
    double cut = 0.5 * (hi + next_lo);
    long long below = std::count_if(all.begin(), all.end(), [&](double v) { return v < cut; });
    cumulative = below / 2;  // two edges per elementary band
    out.push_back(Rational{cumulative, p});
  }
  return out;
}

BandEdgeSolutions band_edge_solutions(const PeriodicJacobi& j, double energy, double root_tol) {
  (void)root_tol;
  const int p = j.period();
  const double disc = discriminant(j, energy).real();
  if (std::abs(std::abs(disc) - 2.0) > 1e-9)
    throw std::domain_error("band_edge_solutions: energy is not a band edge (transfer matrix not parabolic)");
  const double mu = disc > 0 ? 1.0 : -1.0;

  // One-period transfer in the (w_{n+1}, w_n) convention.
  std::array<double, 4> t{1.0, 0.0, 0.0, 1.0};  // row-major [[t11,t12],[t21,t22]]
  for (int n = 1; n <= p; ++n) {
    double a = j.a_at(n), ap = j.a_at(n - 1), b = j.b_at(n);
    double m11 = (energy - b) / a, m12 = -ap / a;
    std::array<double, 4> r{m11 * t[0] + m12 * t[2], m11 * t[1] + m12 * t[3], t[0], t[1]};
    t = r;
  }

  // Floquet vector (w1, w0) for the eigenvalue mu; pick the better row.
  double r1n = std::abs(t[1]) + std::abs(mu - t[0]);
  double r2n = std::abs(mu - t[3]) + std::abs(t[2]);
  double w1, w0;
  if (r1n >= r2n) {
    w1 = t[1];
    w0 = mu - t[0];
  } else {
    w1 = mu - t[3];
    w0 = t[2];
  }
  if (std::abs(w0) + std::abs(w1) == 0.0)
    throw std::runtime_error("band_edge_solutions: degenerate transfer matrix");

  auto step = [&](long long n, double wn, double wnm1) {
    return ((energy - j.b_at(n)) * wn - j.a_at(n - 1) * wnm1) / j.a_at(n);
  };
  std::vector<double> u(p + 2);
  u[0] = w0;
  u[1] = w1;
  for (int n = 1; n <= p; ++n) u[n + 1] = step(n, u[n], u[n - 1]);
  double uscale = std::max(std::abs(w0), std::abs(w1));
  if (std::abs(u[p] - mu * u[0]) > 1e-7 * uscale || std::abs(u[p + 1] - mu * u[1]) > 1e-7 * uscale)
    throw std::domain_error("band_edge_solutions: energy is not a band edge (transfer matrix not parabolic)");

  if (u[0] < 0) {
    for (double& x : u) x = -x;
  }
  for (int n = 0; n < p; ++n) {
    if (!(u[n] > 0.0))
      throw std::domain_error("band_edge_solutions: periodic solution is not sign-definite (not the top edge)");
  }
  if (mu < 0)
    throw std::domain_error("band_edge_solutions: antiperiodic edge, not the top edge");

  BandEdgeSolutions sol;
  sol.energy = energy;
  double umin = *std::min_element(u.begin(), u.begin() + p);
  sol.u_per.resize(p);
  for (int n = 0; n < p; ++n) sol.u_per[n] = u[n] / umin;
  sol.u_lower = 1.0;
  sol.u_upper = *std::max_element(sol.u_per.begin(), sol.u_per.end());

  // Second solution from seeds orthogonal to the u seeds; the one-period map
  // is parabolic, so (T - 1) v-state = eta * u-state exactly, and
  // s_n = v_n - (eta/p) n u_n is exactly p-periodic.
  std::vector<double> v(p + 2);
  v[0] = -sol.u_per[1 % p];
  v[1] = sol.u_per[0];
  for (int n = 1; n <= p; ++n) v[n + 1] = step(n, v[n], v[n - 1]);
  double un0 = sol.u_per[0], un1 = sol.u_per[1 % p];
  double eta = ((v[p] - v[0]) * un0 + (v[p + 1] - v[1]) * un1) / (un0 * un0 + un1 * un1);
  double kappa_raw = eta / p;
  if (kappa_raw == 0.0) throw std::runtime_error("band_edge_solutions: vanishing growth rate");
  if (kappa_raw < 0) {
    for (double& x : v) x = -x;
    kappa_raw = -kappa_raw;
  }
  // Rescale so the growth coefficient is exactly 1, then shift by a multiple
  // of u to center the periodic remainder.
  std::vector<double> s(p);
  for (int n = 0; n < p; ++n) s[n] = v[n] / kappa_raw - static_cast<double>(n) * sol.u_per[n];
  double rlo = s[0] / sol.u_per[0], rhi = rlo;
  for (int n = 1; n < p; ++n) {
    double r = s[n] / sol.u_per[n];
    rlo = std::min(rlo, r);
    rhi = std::max(rhi, r);
  }
  double shift = 0.5 * (rlo + rhi);
  sol.s_per.resize(p);
  double bound = 0.0;
  for (int n = 0; n < p; ++n) {
    sol.s_per[n] = s[n] - shift * sol.u_per[n];
    bound = std::max(bound, std::abs(sol.s_per[n]));
  }
  sol.kappa = 1.0;
  sol.remainder_bound = bound;
  return sol;
}

}  // namespace fgj
