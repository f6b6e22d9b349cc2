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

#include "fgj/eigens.hpp"

#include <algorithm>

namespace fgj {

Truncation make_truncation(const JacobiParams& params, long long n) {
  if (n < 1) throw std::invalid_argument("make_truncation: size must be positive");
  Truncation t;
  t.diag.resize(n);
  t.off2.resize(n - 1);
  for (long long i = 1; i <= n; ++i) {
    t.diag[i - 1] = params.b(i);
    if (i < n) {
      double a = params.a(i);
      if (!(a > 0.0)) throw std::domain_error("make_truncation: a_n <= 0 at n = " + std::to_string(i));
      t.off2[i - 1] = a * a;
    }
  }
  return t;
}

long long Truncation::count_below(double x) const {
  const long long n = size();
  const double pivmin = 1e-300;
  long long count = 0;
  double d = diag[0] - x;
  if (d == 0.0) d = -pivmin;
  if (d < 0.0) ++count;
  for (long long i = 1; i < n; ++i) {
    d = diag[i] - x - off2[i - 1] / d;
    if (d == 0.0) d = -pivmin;
    if (d < 0.0) ++count;
  }
  return count;
}

std::pair<double, double> Truncation::spectral_bounds() const {
  const long long n = size();
  double lo = diag[0], hi = diag[0];
  for (long long i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::sqrt(off2[i - 1]);
    if (i + 1 < n) r += std::sqrt(off2[i]);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  return {lo, hi};
}

double Truncation::eigenvalue(long long k, double eig_tol) const {
  if (k < 0 || k >= size()) throw std::invalid_argument("eigenvalue: index out of range");
  auto [lo, hi] = spectral_bounds();
  while (hi - lo > eig_tol) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (count_below(mid) <= k)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> eigenvalues_truncation(const JacobiParams& params, long long n,
                                           double eig_tol) {
  Truncation t = make_truncation(params, n);
  std::vector<double> eigs(n);
  for (long long k = 0; k < n; ++k) eigs[k] = t.eigenvalue(k, eig_tol);
  return eigs;
}

EigenReport gap_eigenvalues(const std::vector<double>& eigs, const BandSet& e, double margin) {
  if (!(margin > 0.0)) throw std::invalid_argument("gap_eigenvalues: margin must be positive");
  EigenReport rep;
  rep.margin = margin;
  rep.truncation_size = static_cast<long long>(eigs.size());
  for (double x : eigs)
    if (dist_to_bands(x, e) > margin) rep.outside.push_back(x);
  return rep;
}

double q_sum(EigenReport& report, const BandSet& e, double q) {
  if (!(q > 0.0)) throw std::invalid_argument("q_sum: q must be positive");
  KahanSum<double> acc;
  for (double x : report.outside) acc.add(std::pow(dist_to_bands(x, e), q));
  report.q_sums[q] = acc.value();
  return acc.value();
}

namespace {

// Tridiagonal LU with partial pivoting (gttrf/gtts2 layout: dl holds the
// multipliers, du2 the fill-in second superdiagonal, piv the swap flags).
struct TridiagLU {
  std::vector<double> dl, d, du, du2;
  std::vector<char> piv;

  TridiagLU(const Truncation& t, double x) {
    const long long n = t.size();
    d.resize(n);
    dl.assign(n > 1 ? n - 1 : 0, 0.0);
    du.assign(n > 1 ? n - 1 : 0, 0.0);
    du2.assign(n > 2 ? n - 2 : 0, 0.0);
    piv.assign(n > 1 ? n - 1 : 0, 0);
    for (long long i = 0; i < n; ++i) {
      d[i] = t.diag[i] - x;
      if (i + 1 < n) dl[i] = du[i] = std::sqrt(t.off2[i]);
    }
    for (long long i = 0; i + 1 < n; ++i) {
      if (std::abs(d[i]) >= std::abs(dl[i])) {
        double denom = (d[i] == 0.0) ? 1e-300 : d[i];
        double fact = dl[i] / denom;
        dl[i] = fact;
        d[i + 1] -= fact * du[i];
      } else {
        double fact = d[i] / dl[i];
        d[i] = dl[i];
        dl[i] = fact;
        double tmp = du[i];
        du[i] = d[i + 1];
        d[i + 1] = tmp - fact * d[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -fact * du[i + 1];
        }
        piv[i] = 1;
      }
    }
  }

  void solve(std::vector<double>& b) const {
    const long long n = static_cast<long long>(d.size());
    for (long long i = 0; i + 1 < n; ++i) {
      if (!piv[i]) {
        b[i + 1] -= dl[i] * b[i];
      } else {
        double tmp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = tmp - dl[i] * b[i];
      }
    }
    auto denom = [](double v) { return v == 0.0 ? 1e-300 : v; };
    b[n - 1] /= denom(d[n - 1]);
    if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / denom(d[n - 2]);
    for (long long i = n - 3; i >= 0; --i)
      b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / denom(d[i]);
  }
};

// Inverse iteration at an isolated eigenvalue estimate; returns the fraction
// of squared eigenvector mass in the trailing boundary zone.
double boundary_mass(const Truncation& t, double x, double boundary_fraction) {
  const long long n = t.size();
  TridiagLU lu(t, x);
  std::vector<double> v(n);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  for (long long i = 0; i < n; ++i) v[i] = uniform01(rng) - 0.5;
  for (int iter = 0; iter < 3; ++iter) {
    lu.solve(v);
    double norm = 0.0;
    for (double s : v) norm += s * s;
    norm = std::sqrt(norm);
    if (!(norm > 0.0) || !std::isfinite(norm)) return 1.0;
    for (double& s : v) s /= norm;
  }
  long long cut = static_cast<long long>(static_cast<double>(n) * (1.0 - boundary_fraction));
  double tail = 0.0;
  for (long long i = cut; i < n; ++i) tail += v[i] * v[i];
  return tail;
}

}  // namespace

OutsideEigsResult outside_eigenvalues(const JacobiParams& params, long long n,
                                      const BandSet& e, double margin, double eig_tol,
                                      double boundary_fraction,
                                      double boundary_mass_threshold) {
  if (!(margin > eig_tol)) throw std::invalid_argument("outside_eigenvalues: margin must exceed eig_tol");
  Truncation t = make_truncation(params, n);
  auto [glo, ghi] = t.spectral_bounds();

  // Region boundaries of the complement of the margin-enlarged bands.
  std::vector<std::pair<double, double>> regions;
  if (glo < e.lower() - margin) regions.emplace_back(glo, e.lower() - margin);
  for (int j = 0; j < e.gaps(); ++j) {
    auto [a, b] = e.gap(j);
    if (a + margin < b - margin) regions.emplace_back(a + margin, b - margin);
  }
  if (ghi > e.upper() + margin) regions.emplace_back(e.upper() + margin, ghi);

  OutsideEigsResult out;
  for (auto [lo, hi] : regions) {
    long long k_lo = t.count_below(lo);
    long long k_hi = t.count_below(hi);
    for (long long k = k_lo; k < k_hi; ++k) {
      double x = t.eigenvalue(k, eig_tol);
      if (dist_to_bands(x, e) <= margin) continue;  // landed on the margin edge
      if (boundary_mass(t, x, boundary_fraction) > boundary_mass_threshold)
        out.filtered.push_back(x);
      else
        out.kept.push_back(x);
    }
  }
  std::sort(out.kept.begin(), out.kept.end());
  std::sort(out.filtered.begin(), out.filtered.end());
  return out;
}

VariationalReport variational_bound(const PeriodicJacobi& base, const Perturbation& pert,
                                    int m) {
  BandSet e = bands_of_periodic(base);
  BandEdgeSolutions edge = band_edge_solutions(base, e.upper());
  return variational_bound(base, edge, pert, m);
}

VariationalReport variational_bound(const PeriodicJacobi& base, const BandEdgeSolutions& edge,
                                    const Perturbation& pert, int m) {
  if (m < 1) throw std::invalid_argument("variational_bound: m must be >= 1");
  VariationalReport rep;
  rep.m = m;
  const long long center = 64LL * m * m;  // (8m)^2
  rep.block_lo = center - m;
  rep.block_hi = center + m;
  if (rep.block_lo < 1) throw std::invalid_argument("variational_bound: block extends below index 1");

  // Trial vector: combinations of the bounded and growing edge solutions,
  // positive on the block, 1 at the center, O(1/m) at the matching endpoint,
  // glued at the center and zero outside.
  const double kappa = edge.kappa;
  const double shift = edge.remainder_bound / edge.u_lower;
  auto plus_raw = [&](long long n) {
    return (edge.v(n) - kappa * static_cast<double>(rep.block_lo) * edge.u(n)) + shift * edge.u(n);
  };
  auto minus_raw = [&](long long n) {
    return -(edge.v(n) - kappa * static_cast<double>(rep.block_hi) * edge.u(n)) + shift * edge.u(n);
  };
  const double plus_center = plus_raw(center);
  const double minus_center = minus_raw(center);
  auto phi = [&](long long n) -> double {
    if (n < rep.block_lo || n > rep.block_hi) return 0.0;
    if (n <= center) return plus_raw(n) / plus_center;
    return minus_raw(n) / minus_center;
  };

  const double energy = edge.energy;
  KahanSum<double> norm2, pert_term, base_term;
  for (long long n = rep.block_lo; n <= rep.block_hi; ++n) {
    double pn = phi(n);
    norm2.add(pn * pn);
    pert_term.add(pert.db(n) * pn * pn + 2.0 * pert.da(n) * pn * phi(n + 1));
    base_term.add((base.b_at(n) - energy) * pn * pn + 2.0 * base.a_at(n) * pn * phi(n + 1));
  }
  rep.norm2 = norm2.value();
  rep.pert_term = pert_term.value();
  rep.base_term = base_term.value();
  rep.bound = rep.pert_term / rep.norm2;
  rep.rayleigh = (rep.pert_term + rep.base_term) / rep.norm2;
  return rep;
}

}  // namespace fgj
