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

#include "fgj/numerics.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace fgj {

double chebyshev_singular_integral(const std::function<double(double)>& f,
                                   double a, double b, double tol, int max_order) {
  if (!(b > a)) throw std::invalid_argument("chebyshev_singular_integral: empty interval");
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double prev = 0.0;
  bool have_prev = false;
  for (int n = 16; n <= max_order; n *= 2) {
    KahanSum<double> acc;
    for (int k = 1; k <= n; ++k) {
      double theta = (2.0 * k - 1.0) * kPi / (2.0 * n);
      acc.add(f(mid + half * std::cos(theta)));
    }
    double val = acc.value() * kPi / n;
    if (have_prev && std::abs(val - prev) <= tol * std::max(1.0, std::abs(val))) return val;
    prev = val;
    have_prev = true;
  }
  throw std::runtime_error("chebyshev_singular_integral: quadrature did not converge");
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) {
      nodes = it->second.first;
      weights = it->second.second;
      return;
    }
  }
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (t * p0 - p1) / (t * t - 1.0);
      double dt = p0 / pp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    nodes[i] = -t;
    nodes[n - 1 - i] = t;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - t * t) * pp * pp);
  }
  std::lock_guard<std::mutex> lock(mu);
  cache[n] = {nodes, weights};
}

double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    double tol, int max_order) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double prev = 0.0;
  bool have_prev = false;
  for (int n = 16; n <= max_order; n *= 2) {
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    KahanSum<double> acc;
    for (int k = 0; k < n; ++k) acc.add(w[k] * f(mid + half * x[k]));
    double val = acc.value() * half;
    if (have_prev && std::abs(val - prev) <= tol * std::max(1.0, std::abs(val))) return val;
    prev = val;
    have_prev = true;
  }
  throw std::runtime_error("integrate_gl: quadrature did not converge");
}

std::vector<double> solve_dense(std::vector<double> a, std::vector<double> rhs) {
  const int n = static_cast<int>(rhs.size());
  if (static_cast<int>(a.size()) != n * n) throw std::invalid_argument("solve_dense: shape mismatch");
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(a[perm[col] * n + col]);
    for (int r = col + 1; r < n; ++r) {
      double v = std::abs(a[perm[r] * n + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) throw std::runtime_error("solve_dense: singular matrix");
    std::swap(perm[col], perm[piv]);
    const int prow = perm[col];
    for (int r = col + 1; r < n; ++r) {
      const int row = perm[r];
      double factor = a[row * n + col] / a[prow * n + col];
      a[row * n + col] = 0.0;
      for (int c = col + 1; c < n; ++c) a[row * n + c] -= factor * a[prow * n + c];
      rhs[row] -= factor * rhs[prow];
    }
  }
  std::vector<double> x(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    const int row = perm[i];
    double s = rhs[row];
    for (int c = i + 1; c < n; ++c) s -= a[row * n + c] * x[c];
    x[i] = s / a[row * n + i];
  }
  return x;
}

std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
  if (static_cast<int>(a.size()) != n * n) throw std::invalid_argument("symmetric_eigenvalues: shape mismatch");
  auto at = [&](int r, int c) -> double& { return a[r * n + c]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
    double scale = 0.0;
    for (int p = 0; p < n; ++p) scale += at(p, p) * at(p, p);
    if (off <= 1e-30 * std::max(1.0, scale)) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (at(p, q) == 0.0) continue;
        double theta = 0.5 * (at(q, q) - at(p, p)) / at(p, q);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  LineFit fit;
  const size_t n = x.size();
  if (n != y.size() || n < 2) return fit;
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n > 2) {
    double rss = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double r = y[i] - fit.intercept - fit.slope * x[i];
      rss += r * r;
    }
    fit.slope_stderr = std::sqrt(rss / (n - 2) / sxx);
  }
  fit.ok = true;
  return fit;
}

}  // namespace fgj
