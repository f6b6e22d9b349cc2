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

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgj {

using cdouble = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Fractional part of x folded into [0, 1).
inline double frac01(double x) {
  double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

/// Distance from x to the nearest integer.
inline double dist_to_integers(double x) {
  double f = frac01(x);
  return std::min(f, 1.0 - f);
}

/// Compensated (Kahan) accumulator; T is double or std::complex<double>.
template <class T>
struct KahanSum {
  T sum{};
  T comp{};
  void add(T v) {
    T y = v - comp;
    T t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  T value() const { return sum; }
};

/// Integral of f(t) / sqrt((t-a)(b-t)) over (a,b).  The substitution
/// t = mid + half*cos(theta) removes both inverse square-root endpoint
/// singularities; the rule order is doubled until two successive orders
/// agree to tol.  Throws std::runtime_error on non-convergence.
double chebyshev_singular_integral(const std::function<double(double)>& f,
                                   double a, double b, double tol,
                                   int max_order = 1 << 20);

/// Gauss-Legendre nodes/weights on [-1, 1], ascending nodes.  Cached per order.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Adaptive-order Gauss-Legendre integral of f over [a, b]; order doubles
/// until two successive orders agree to tol.  Node generation costs O(n^2),
/// hence the moderate order cap (ample for analytic integrands).
double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    double tol, int max_order = 1 << 12);

/// Dense linear solve with partial pivoting; A is row-major n x n.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> rhs);

/// Eigenvalues of a dense symmetric matrix (cyclic Jacobi rotations), ascending.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  bool ok = false;  // false when fewer than two distinct abscissae
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Complex number stored as phase * exp(log_abs); robust over ~1e9 factors.
struct LogComplex {
  cdouble phase{1.0, 0.0};  // unit modulus, or 0 for the zero element
  double log_abs = 0.0;

  static LogComplex one() { return {}; }
  static LogComplex from(cdouble v) {
    LogComplex r;
    r.mul(v);
    return r;
  }
  bool zero() const { return phase == cdouble{0.0, 0.0}; }
  void mul(cdouble f) {
    if (zero()) return;
    double m = std::abs(f);
    if (m == 0.0) {
      phase = {0.0, 0.0};
      log_abs = 0.0;
      return;
    }
    log_abs += std::log(m);
    phase *= f / m;
    phase /= std::abs(phase);
  }
  void mul(const LogComplex& o) {
    if (zero()) return;
    if (o.zero()) {
      phase = {0.0, 0.0};
      log_abs = 0.0;
      return;
    }
    log_abs += o.log_abs;
    phase *= o.phase;
    phase /= std::abs(phase);
  }
  /// May overflow/underflow to inf/0 when log_abs is extreme.
  cdouble value() const { return zero() ? cdouble{0.0, 0.0} : phase * std::exp(log_abs); }
};

/// Shift the given components by a common power of two so the largest
/// |Re|/|Im| lands in [1, 2); no-op while the exponent stays within
/// trigger_exp.  Returns the binary exponent shifted out.
inline long long normalize_pow2(std::span<cdouble> vals, long long trigger_exp = 512) {
  double m = 0.0;
  for (const cdouble& v : vals) m = std::max({m, std::abs(v.real()), std::abs(v.imag())});
  if (m == 0.0 || !std::isfinite(m)) return 0;
  int e = std::ilogb(m);
  if (std::abs((long long)e) < trigger_exp) return 0;
  double s = std::ldexp(1.0, -e);
  for (cdouble& v : vals) v *= s;
  return e;
}

/// Deterministic uniform in [0,1) from raw mt19937_64 output (the standard
/// distributions are not bit-reproducible across library implementations).
inline double uniform01(std::mt19937_64& rng) {
  return (rng() >> 11) * 0x1.0p-53;
}

}  // namespace fgj
