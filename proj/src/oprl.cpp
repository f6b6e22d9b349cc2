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

#include "fgj/oprl.hpp"

#include <algorithm>

namespace fgj {

namespace {

double max_component(cdouble v) { return std::max(std::abs(v.real()), std::abs(v.imag())); }

// Common power-of-two renormalization for a set of recurrence values.
long long rescale(std::initializer_list<cdouble*> vals, long long threshold) {
  double m = 0.0;
  for (cdouble* v : vals) m = std::max(m, max_component(*v));
  if (m == 0.0) return 0;
  int e = std::ilogb(m);
  if (std::abs(static_cast<long long>(e)) < threshold) return 0;
  double s = std::ldexp(1.0, -e);
  for (cdouble* v : vals) *v *= s;
  return e;
}

}  // namespace

PolyPair evaluate_polynomials(const JacobiParams& params, cdouble x, long long n_steps,
                              long long rescale_threshold) {
  if (n_steps < 1) throw std::invalid_argument("evaluate_polynomials: need at least one step");
  if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
    throw std::invalid_argument("evaluate_polynomials: x must be finite");
  PolyPair st{cdouble{0.0, 0.0}, cdouble{1.0, 0.0}, 0};
  double a_prev = 1.0;
  for (long long n = 1; n <= n_steps; ++n) {
    double an = params.a(n);
    if (!(an > 0.0))
      throw std::domain_error("evaluate_polynomials: a_n <= 0 at n = " + std::to_string(n));
    cdouble next = ((x - params.b(n)) * st.p_curr - a_prev * st.p_prev) / an;
    st.p_prev = st.p_curr;
    st.p_curr = next;
    a_prev = an;
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag()))
      throw std::runtime_error("evaluate_polynomials: non-finite value at n = " + std::to_string(n));
    st.pow2 += rescale({&st.p_prev, &st.p_curr}, rescale_threshold);
  }
  return st;
}

cdouble free_closed_form(cdouble x, long long n) {
  if (n < 0) throw std::invalid_argument("free_closed_form: n must be non-negative");
  if (x.imag() == 0.0) {
    double xr = x.real();
    if (xr == 2.0) return cdouble{static_cast<double>(n + 1), 0.0};
    if (xr == -2.0) return cdouble{(n % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(n + 1), 0.0};
    if (std::abs(xr) < 2.0)
      throw std::domain_error("free_closed_form: real x inside (-2, 2) has no growing branch");
  }
  cdouble w = std::sqrt(x * x - 4.0);
  cdouble z = 0.5 * (x + w);
  if (std::abs(z) < 1.0) z = 0.5 * (x - w);
  cdouble zp = std::pow(z, static_cast<double>(n + 1));
  return (zp - 1.0 / zp) / (z - 1.0 / z);
}

RatioTrace ratio_trace(const JacobiParams& base_params, const JacobiParams& params,
                       cdouble x, long long n_steps, long long stride,
                       long long rescale_threshold) {
  if (x.imag() == 0.0)
    throw std::invalid_argument("ratio_trace: x must lie off the real axis");
  if (!base_params.delta.is_zero())
    throw std::invalid_argument("ratio_trace: the reference parameters must carry the zero perturbation");
  if (base_params.base.a != params.base.a || base_params.base.b != params.base.b)
    throw std::invalid_argument("ratio_trace: both parameter sets must share the same base");
  if (n_steps < 1 || stride < 1)
    throw std::invalid_argument("ratio_trace: n_steps and stride must be positive");

  RatioTrace trace;
  trace.x = x;
  cdouble p_prev{0.0, 0.0}, p_curr{1.0, 0.0};
  cdouble q_prev{0.0, 0.0}, q_curr{1.0, 0.0};  // base sequence
  double a_prev = 1.0, at_prev = 1.0;
  long long pow2 = 0;
  for (long long n = 1; n <= n_steps; ++n) {
    double an = params.a(n), bn = params.b(n);
    double atn = params.base.a_at(n), btn = params.base.b_at(n);
    if (!(an > 0.0))
      throw std::domain_error("ratio_trace: a_n <= 0 at n = " + std::to_string(n));
    cdouble pn = ((x - bn) * p_curr - a_prev * p_prev) / an;
    cdouble qn = ((x - btn) * q_curr - at_prev * q_prev) / atn;
    p_prev = p_curr;
    p_curr = pn;
    q_prev = q_curr;
    q_curr = qn;
    a_prev = an;
    at_prev = atn;
    pow2 += rescale({&p_prev, &p_curr, &q_prev, &q_curr}, rescale_threshold);
    if (n % stride == 0 || n == n_steps) {
      if (q_curr == cdouble{0.0, 0.0})
        throw std::runtime_error("ratio_trace: base polynomial vanished at n = " + std::to_string(n));
      cdouble r = p_curr / q_curr;
      if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
        throw std::runtime_error("ratio_trace: non-finite ratio at n = " + std::to_string(n));
      trace.samples.push_back({n, r, pow2 * std::log(2.0) + std::log(std::abs(q_curr))});
    }
  }
  return trace;
}

RatioTrace ratio_trace(const JacobiParams& params, cdouble x, long long n_steps,
                       long long stride) {
  return ratio_trace(with_zero_perturbation(params), params, x, n_steps, stride);
}

const char* to_string(Convergence v) {
  switch (v) {
    case Convergence::converged: return "converged";
    case Convergence::not_converged: return "not_converged";
    default: return "inconclusive";
  }
}

SzegoVerdict detect_szego_limit(const RatioTrace& trace, int windows, double tol) {
  SzegoVerdict out;
  if (windows < 2) windows = 2;
  if (trace.samples.empty()) return out;
  const long long n_max = trace.samples.back().n;

  for (int w = windows - 1; w >= 0; --w) {
    const long long hi = n_max >> w;
    const long long lo = n_max >> (w + 1);
    double abs_lo = std::numeric_limits<double>::infinity(), abs_hi = -abs_lo;
    double arg_lo = std::numeric_limits<double>::infinity(), arg_hi = -arg_lo;
    cdouble ref{0.0, 0.0};
    KahanSum<cdouble> mean;
    long long count = 0;
    for (const auto& s : trace.samples) {
      if (s.n <= lo || s.n > hi) continue;
      if (ref == cdouble{0.0, 0.0}) ref = s.r;
      abs_lo = std::min(abs_lo, std::abs(s.r));
      abs_hi = std::max(abs_hi, std::abs(s.r));
      double a = (ref == cdouble{0.0, 0.0}) ? 0.0 : std::arg(s.r / ref);
      arg_lo = std::min(arg_lo, a);
      arg_hi = std::max(arg_hi, a);
      mean.add(s.r);
      ++count;
    }
    if (count < 3) return out;  // not enough samples per window: inconclusive
    out.window_end.push_back(static_cast<double>(hi));
    out.window_osc.push_back(std::max(abs_hi - abs_lo, arg_hi - arg_lo));
    if (w == 0) out.limit = mean.value() / static_cast<double>(count);
  }

  std::vector<double> lx, ly;
  for (size_t i = 0; i < out.window_osc.size(); ++i) {
    if (out.window_osc[i] > 0) {
      lx.push_back(std::log(out.window_end[i]));
      ly.push_back(std::log(out.window_osc[i]));
    }
  }
  LineFit fit = fit_line(lx, ly);
  out.decay_exponent = fit.ok ? -fit.slope : 0.0;

  const double final_osc = out.window_osc.back();
  bool decreasing = true;
  for (size_t i = 1; i < out.window_osc.size(); ++i)
    if (out.window_osc[i] > std::max(out.window_osc[i - 1], tol)) decreasing = false;
  if (final_osc < tol && std::abs(out.limit) > tol && decreasing)
    out.verdict = Convergence::converged;
  else if (final_osc >= tol && final_osc >= 0.9 * out.window_osc.front())
    out.verdict = Convergence::not_converged;
  else
    out.verdict = Convergence::inconclusive;
  return out;
}

double root_asymptotics_exponent(const JacobiParams& params, double x, long long n_steps) {
  BandSet e = bands_of_periodic(params.base);
  if (dist_to_bands(x, e) == 0.0)
    throw std::domain_error("root_asymptotics_exponent: x lies in the essential spectrum");
  PolyPair pair = evaluate_polynomials(params, cdouble{x, 0.0}, n_steps);
  return pair.log_abs_curr() / static_cast<double>(n_steps);
}

}  // namespace fgj
