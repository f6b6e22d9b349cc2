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

#include "fgj/bandset.hpp"

#include <algorithm>
#include <numeric>

namespace fgj {

BandSet make_band_set(std::vector<std::pair<double, double>> intervals) {
  if (intervals.empty()) throw std::invalid_argument("make_band_set: empty interval list");
  for (size_t i = 0; i < intervals.size(); ++i) {
    if (!std::isfinite(intervals[i].first) || !std::isfinite(intervals[i].second))
      throw std::invalid_argument("make_band_set: non-finite endpoint in pair " + std::to_string(i));
    if (!(intervals[i].first < intervals[i].second))
      throw std::invalid_argument("make_band_set: reversed or empty interval at pair " + std::to_string(i));
  }
  std::vector<size_t> order(intervals.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return intervals[a].first < intervals[b].first; });
  BandSet e;
  e.bands.reserve(intervals.size());
  for (size_t i = 0; i < order.size(); ++i) {
    const auto& iv = intervals[order[i]];
    if (!e.bands.empty() && !(e.bands.back().second < iv.first))
      throw std::invalid_argument("make_band_set: overlapping or touching intervals at pair " +
                                  std::to_string(order[i]));
    e.bands.push_back(iv);
  }
  return e;
}

double dist_to_bands(double x, const BandSet& e) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [a, b] : e.bands) {
    if (x >= a && x <= b) return 0.0;
    best = std::min(best, x < a ? a - x : x - b);
  }
  return best;
}

double EquilibriumMeasure::poly(double x) const {
  double p = 1.0;
  for (double r : gap_roots) p *= (x - r);
  return p;
}

double EquilibriumMeasure::endpoint_poly(double x) const {
  double p = 1.0;
  for (const auto& [a, b] : band_set.bands) p *= (x - a) * (x - b);
  return p;
}

double EquilibriumMeasure::density(double x) const {
  const auto& bands = band_set.bands;
  for (size_t j = 0; j < bands.size(); ++j) {
    if (x > bands[j].first && x < bands[j].second) {
      double rest = 1.0;
      for (size_t i = 0; i < bands.size(); ++i) {
        if (i == j) continue;
        rest *= (x - bands[i].first) * (x - bands[i].second);
      }
      double w = (x - bands[j].first) * (bands[j].second - x) * std::abs(rest);
      return std::abs(poly(x)) / (kPi * std::sqrt(w));
    }
  }
  throw std::domain_error("density: x is not strictly inside a band");
}

namespace {

// |R(t)| with the factors for the two given endpoints removed.
double endpoint_poly_without(const BandSet& e, double t, double skip1, double skip2) {
  double p = 1.0;
  for (const auto& [a, b] : e.bands) {
    if (a != skip1 && a != skip2) p *= (t - a);
    if (b != skip1 && b != skip2) p *= (t - b);
  }
  return std::abs(p);
}

// Root of the monic polynomial with the given coefficients (c[i] multiplies
// x^i, leading 1 implied) inside (lo, hi), by bisection.
double bisect_poly_root(const std::vector<double>& c, double lo, double hi) {
  auto eval = [&](double x) {
    double v = 1.0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * x + c[i];
    return v;
  };
  double flo = eval(lo), fhi = eval(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) throw std::runtime_error("equilibrium_measure: no sign change in gap (singular system)");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = eval(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(lo) + std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

// Green's function integrand |P(s)| / sqrt(|R(s)|) with the square-root
// singularity at the anchor endpoint removed by s = edge + D sin^2(phi).
double green_leg(const EquilibriumMeasure& m, double edge, double target, double tol) {
  const double d = target - edge;
  if (d == 0.0) return 0.0;
  auto f = [&](double phi) {
    double sn = std::sin(phi), cs = std::cos(phi);
    double s = edge + d * sn * sn;
    double rest = endpoint_poly_without(m.band_set, s, edge, edge);
    return 2.0 * std::sqrt(std::abs(d)) * cs * std::abs(m.poly(s)) / std::sqrt(rest);
  };
  return integrate_gl(f, 0.0, 0.5 * kPi, tol);
}

}  // namespace

EquilibriumMeasure equilibrium_measure(const BandSet& e, double quad_tol) {
  if (!(quad_tol > 0)) throw std::invalid_argument("equilibrium_measure: quad_tol must be positive");
  EquilibriumMeasure m;
  m.band_set = e;
  m.quad_tol = quad_tol;
  const int l = e.gaps();
  const double tol = quad_tol / (4.0 * (l + 1));

  // Monic degree-l polynomial killing the density flux through every gap.
  if (l > 0) {
    std::vector<double> a(l * l, 0.0), rhs(l, 0.0);
    for (int j = 0; j < l; ++j) {
      auto [glo, ghi] = e.gap(j);
      std::vector<double> mom(l + 1, 0.0);
      for (int i = 0; i <= l; ++i) {
        auto f = [&](double t) {
          return std::pow(t, i) / std::sqrt(endpoint_poly_without(e, t, glo, ghi));
        };
        mom[i] = chebyshev_singular_integral(f, glo, ghi, tol);
      }
      for (int i = 0; i < l; ++i) a[j * l + i] = mom[i];
      rhs[j] = -mom[l];
    }
    std::vector<double> coeffs = solve_dense(a, rhs);
    m.gap_roots.resize(l);
    for (int j = 0; j < l; ++j) {
      auto [glo, ghi] = e.gap(j);
      m.gap_roots[j] = bisect_poly_root(coeffs, glo, ghi);
    }
  }

  // Band masses, cumulative harmonic measures, and the gap residuals of the
  // root-product form of the polynomial.
  const int nb = l + 1;
  m.band_masses.resize(nb);
  for (int j = 0; j < nb; ++j) {
    auto [lo, hi] = e.bands[j];
    auto f = [&](double t) {
      return std::abs(m.poly(t)) / std::sqrt(endpoint_poly_without(e, t, lo, hi));
    };
    m.band_masses[j] = chebyshev_singular_integral(f, lo, hi, tol) / kPi;
  }
  double total = 0.0;
  for (int j = 0; j < l; ++j) {
    total += m.band_masses[j];
    m.harmonic_measures.push_back(total);
  }
  total += m.band_masses[nb - 1];
  m.mass_residual = std::abs(total - 1.0);

  for (int j = 0; j < l; ++j) {
    auto [glo, ghi] = e.gap(j);
    auto f = [&](double t) {
      return m.poly(t) / std::sqrt(endpoint_poly_without(e, t, glo, ghi));
    };
    m.max_gap_residual = std::max(m.max_gap_residual,
                                  std::abs(chebyshev_singular_integral(f, glo, ghi, tol)));
  }

  // Capacity from the logarithmic potential at a reference point off the
  // bands: log cap = U(x0) - g(x0).  The first gap root keeps |P| smooth on
  // the Green's-function leg (no interior sign change of P).
  double x0 = (l > 0) ? m.gap_roots[0] : e.upper() + 0.5 * e.span();
  KahanSum<double> potential;
  for (int j = 0; j < nb; ++j) {
    auto [lo, hi] = e.bands[j];
    auto f = [&](double t) {
      return std::log(std::abs(x0 - t)) * std::abs(m.poly(t)) /
             std::sqrt(endpoint_poly_without(e, t, lo, hi));
    };
    potential.add(chebyshev_singular_integral(f, lo, hi, tol) / kPi);
  }
  double g0 = (l > 0) ? green_leg(m, e.gap(0).first, x0, tol)
                      : green_leg(m, e.upper(), x0, tol);
  m.capacity = std::exp(potential.value() - g0);
  return m;
}

double frequency_of(const FrequencyVector& k, const EquilibriumMeasure& m) {
  if (k.k.size() != m.harmonic_measures.size())
    throw std::invalid_argument("frequency_of: length of k differs from the number of gaps");
  KahanSum<double> acc;
  for (size_t j = 0; j < k.k.size(); ++j) acc.add(k.k[j] * m.harmonic_measures[j]);
  return frac01(acc.value());
}

double green_function(const EquilibriumMeasure& m, double x) {
  const BandSet& e = m.band_set;
  if (dist_to_bands(x, e) == 0.0) throw std::domain_error("green_function: x lies inside a band");
  const double tol = m.quad_tol / 4.0;
  if (x > e.upper()) {
    double far = e.upper() + 2.0 * std::max(e.span(), 1.0);
    if (x <= far) return green_leg(m, e.upper(), x, tol);
    // Split off the long tail where the integrand behaves like 1/s.
    double c = 0.5 * (e.lower() + e.upper());
    auto f = [&](double w) {
      double s = c + std::exp(w);
      return std::abs(m.poly(s)) / std::sqrt(std::abs(m.endpoint_poly(s))) * std::exp(w);
    };
    return green_leg(m, e.upper(), far, tol) +
           integrate_gl(f, std::log(far - c), std::log(x - c), tol);
  }
  if (x < e.lower()) {
    double far = e.lower() - 2.0 * std::max(e.span(), 1.0);
    if (x >= far) return green_leg(m, e.lower(), x, tol);
    double c = 0.5 * (e.lower() + e.upper());
    auto f = [&](double w) {
      double s = c - std::exp(w);
      return std::abs(m.poly(s)) / std::sqrt(std::abs(m.endpoint_poly(s))) * std::exp(w);
    };
    return green_leg(m, e.lower(), far, tol) +
           integrate_gl(f, std::log(c - far), std::log(c - x), tol);
  }
  for (int j = 0; j < e.gaps(); ++j) {
    auto [glo, ghi] = e.gap(j);
    if (x > glo && x < ghi) {
      // Anchor on the same side of the gap root as x, so |P| keeps one sign
      // along the leg; the flux through the whole gap vanishes, so both
      // anchors give the same value.
      double edge = (x <= m.gap_roots[j]) ? glo : ghi;
      return std::abs(green_leg(m, edge, x, tol));
    }
  }
  throw std::domain_error("green_function: x lies inside a band");
}

DiophantineResult diophantine_quality(const EquilibriumMeasure& m, double omega0,
                                      int kmax, int s) {
  if (kmax < 0 || s < 0) throw std::invalid_argument("diophantine_quality: kmax and s must be non-negative");
  const int l = static_cast<int>(m.harmonic_measures.size());
  DiophantineResult result;
  result.constant = std::numeric_limits<double>::infinity();
  int resonant_norm = kmax + 1;
  std::vector<int> k(l, -kmax);
  bool done = false;
  while (!done) {
    double dot = 0.0;
    int norm = 0;
    for (int j = 0; j < l; ++j) {
      dot += k[j] * m.harmonic_measures[j];
      norm = std::max(norm, std::abs(k[j]));
    }
    for (int sign : {+1, -1}) {
      double v = frac01(sign * omega0 + dot);
      if (v < 1e-12 || v > 1.0 - 1e-12) {
        // Keep scanning so the reported resonance has minimal |k|.
        if (!result.resonant || norm < resonant_norm) {
          result.worst_k = k;
          result.worst_sign = sign;
          resonant_norm = norm;
        }
        result.resonant = true;
        continue;
      }
      if (result.resonant) continue;
      double c = v * std::pow(1.0 + norm, s);
      if (c < result.constant) {
        result.constant = c;
        result.worst_k = k;
        result.worst_sign = sign;
      }
    }
    // Odometer over the box [-kmax, kmax]^l; a single pass when l == 0.
    done = true;
    for (int j = 0; j < l; ++j) {
      if (k[j] < kmax) {
        ++k[j];
        for (int i = 0; i < j; ++i) k[i] = -kmax;
        done = false;
        break;
      }
    }
  }
  if (result.resonant) result.constant = 0.0;
  return result;
}

}  // namespace fgj
