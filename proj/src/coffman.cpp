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

#include "fgj/coffman.hpp"

#include <algorithm>

#include "fgj/oprl.hpp"

namespace fgj {

namespace {

// Determinant by small LU with partial pivoting.
cdouble small_det(std::vector<cdouble> m, int d) {
  cdouble det{1.0, 0.0};
  for (int c = 0; c < d; ++c) {
    int piv = c;
    for (int r = c + 1; r < d; ++r)
      if (std::abs(m[r * d + c]) > std::abs(m[piv * d + c])) piv = r;
    if (m[piv * d + c] == cdouble{0.0, 0.0}) return {0.0, 0.0};
    if (piv != c) {
      for (int k = 0; k < d; ++k) std::swap(m[piv * d + k], m[c * d + k]);
      det = -det;
    }
    det *= m[c * d + c];
    for (int r = c + 1; r < d; ++r) {
      cdouble f = m[r * d + c] / m[c * d + c];
      for (int k = c; k < d; ++k) m[r * d + k] -= f * m[c * d + k];
    }
  }
  return det;
}

// Complex phase of lambda^n via argument reduction of n*arg(lambda).
cdouble power_phase(cdouble lambda, long long n) {
  double theta = std::arg(lambda) * static_cast<double>(n) / (2.0 * kPi);
  double ang = 2.0 * kPi * frac01(theta);
  return {std::cos(ang), std::sin(ang)};
}

std::vector<long long> geometric_marks(long long n, int count) {
  std::vector<long long> ns;
  for (int k = count - 1; k >= 0; --k) {
    long long v = n >> k;
    if (v >= 1 && (ns.empty() || v > ns.back())) ns.push_back(v);
  }
  return ns;
}

}  // namespace

CoffmanSystem make_coffman(std::vector<cdouble> lambda,
                           std::function<void(long long, cdouble*)> fill_a) {
  CoffmanSystem sys;
  sys.dim = static_cast<int>(lambda.size());
  if (sys.dim < 1) throw std::invalid_argument("make_coffman: empty diagonal");
  for (const cdouble& l : lambda)
    if (l == cdouble{0.0, 0.0}) throw std::invalid_argument("make_coffman: lambda entries must be nonzero");
  sys.lambda = std::move(lambda);
  sys.fill_a = std::move(fill_a);
  return sys;
}

Trajectory evolve(const CoffmanSystem& sys, std::vector<cdouble> y1, long long n_final,
                  std::vector<long long> checkpoints) {
  const int d = sys.dim;
  if (static_cast<int>(y1.size()) != d) throw std::invalid_argument("evolve: initial vector has wrong dimension");
  if (n_final < 1) throw std::invalid_argument("evolve: n_final must be >= 1");
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());

  Trajectory out;
  ScaledVec y{std::move(y1), 0};
  std::vector<cdouble> a, next(d);
  size_t ci = 0;
  for (long long n = 1; n <= n_final; ++n) {
    if (ci < checkpoints.size() && checkpoints[ci] == n) {
      out.ns.push_back(n);
      out.states.push_back(y);
      ++ci;
    }
    if (n == n_final) break;
    sys.a_at(n, a);
    for (int i = 0; i < d; ++i) a[i * d + i] += sys.lambda[i];
    if (small_det(a, d) == cdouble{0.0, 0.0})
      throw std::runtime_error("evolve: singular step matrix at n = " + std::to_string(n));
    for (int i = 0; i < d; ++i) {
      cdouble s{0.0, 0.0};
      for (int k = 0; k < d; ++k) s += a[i * d + k] * y.v[k];
      next[i] = s;
    }
    y.v.swap(next);
    y.pow2 += normalize_pow2(std::span<cdouble>(y.v), 512);
  }
  return out;
}

double sum_a2(const CoffmanSystem& sys, long long n_max) {
  KahanSum<double> acc;
  std::vector<cdouble> a;
  for (long long n = 1; n <= n_max; ++n) {
    sys.a_at(n, a);
    double f = 0.0;
    for (const cdouble& v : a) f += std::norm(v);
    acc.add(f);
  }
  return acc.value();
}

LogComplex gamma_product(const CoffmanSystem& sys, int j, long long n, long long n0) {
  if (j < 0 || j >= sys.dim) throw std::invalid_argument("gamma_product: index out of range");
  if (n0 < 1 || n < n0) throw std::invalid_argument("gamma_product: need 1 <= n0 <= n");
  LogComplex g = LogComplex::one();
  std::vector<cdouble> a;
  for (long long k = n0; k < n; ++k) {
    sys.a_at(k, a);
    cdouble f = sys.lambda[j] + a[j * sys.dim + j];
    if (f == cdouble{0.0, 0.0})
      throw std::runtime_error("gamma_product: zero factor at k = " + std::to_string(k) +
                               " (raise n0 past it)");
    g.mul(f);
  }
  return g;
}

ProfileResult find_profile_solution(const CoffmanSystem& sys, int j, long long n_horizon) {
  const int d = sys.dim;
  if (j < 0 || j >= d) throw std::invalid_argument("find_profile_solution: index out of range");
  if (n_horizon < 4) throw std::invalid_argument("find_profile_solution: horizon too small");
  const long long m = 4 * n_horizon;
  const double mod_j = std::abs(sys.lambda[j]);
  std::vector<int> side(d);  // -1: smaller modulus (forward), +1: larger (backward), 0: j
  for (int i = 0; i < d; ++i) {
    if (i == j) {
      side[i] = 0;
      continue;
    }
    double mi = std::abs(sys.lambda[i]);
    if (std::abs(mi - mod_j) <= 1e-12 * std::max(mi, mod_j))
      throw std::invalid_argument("find_profile_solution: |lambda| not separated from the target index");
    side[i] = mi < mod_j ? -1 : +1;
  }

  // Cache the diagonal shifts g_i(n) and the off-diagonal coupling.
  std::vector<cdouble> g(static_cast<size_t>(m + 1) * d);
  std::vector<cdouble> off(static_cast<size_t>(m + 1) * d * d);
  {
    std::vector<cdouble> a;
    for (long long n = 1; n <= m; ++n) {
      sys.a_at(n, a);
      for (int i = 0; i < d; ++i) {
        cdouble gi = sys.lambda[i] + a[i * d + i];
        if (i == j && gi == cdouble{0.0, 0.0})
          throw std::runtime_error("find_profile_solution: zero diagonal factor at n = " + std::to_string(n));
        g[n * d + i] = gi;
        for (int k = 0; k < d; ++k) off[(n * d + i) * d + k] = (k == i) ? cdouble{0.0, 0.0} : a[i * d + k];
      }
    }
  }

  // Two-sided fixed point for u_n = y_n / gamma_j(n), u -> e_j.
  std::vector<cdouble> u(static_cast<size_t>(m + 1) * d, cdouble{0.0, 0.0});
  for (long long n = 1; n <= m; ++n) u[n * d + j] = 1.0;
  std::vector<cdouble> bu(static_cast<size_t>(m + 1) * d);
  double prev_change = std::numeric_limits<double>::infinity();
  int rising = 0;
  ProfileResult result;
  for (int it = 0; it < 60; ++it) {
    for (long long n = 1; n < m; ++n)
      for (int i = 0; i < d; ++i) {
        cdouble s{0.0, 0.0};
        for (int k = 0; k < d; ++k) s += off[(n * d + i) * d + k] * u[n * d + k];
        bu[n * d + i] = s;
      }
    double change = 0.0;
    auto update = [&](long long n, int i, cdouble val) {
      change = std::max(change, std::abs(val - u[n * d + i]));
      u[n * d + i] = val;
    };
    for (int i = 0; i < d; ++i) {
      if (side[i] == -1) {
        update(1, i, {0.0, 0.0});
        for (long long n = 1; n < m; ++n)
          update(n + 1, i, (g[n * d + i] * u[n * d + i] + bu[n * d + i]) / g[n * d + j]);
      } else if (side[i] == +1) {
        update(m, i, {0.0, 0.0});
        for (long long n = m - 1; n >= 1; --n)
          update(n, i, (g[n * d + j] * u[(n + 1) * d + i] - bu[n * d + i]) / g[n * d + i]);
      } else {
        update(m, i, {1.0, 0.0});
        for (long long n = m - 1; n >= 1; --n)
          update(n, i, u[(n + 1) * d + i] - bu[n * d + i] / g[n * d + j]);
      }
    }
    result.iterations = it + 1;
    if (change < 1e-15) break;
    if (change > prev_change) {
      if (++rising >= 3)
        throw std::runtime_error("find_profile_solution: fixed point fails to contract (hypothesis violation)");
    } else {
      rising = 0;
    }
    prev_change = change;
  }

  result.y1.assign(u.begin() + d, u.begin() + 2 * d);  // gamma_j(1) = 1
  result.ns = geometric_marks(n_horizon, 4);
  for (long long n : result.ns) {
    result.target_residual.push_back(std::abs(u[n * d + j] - cdouble{1.0, 0.0}));
    double cross = 0.0;
    for (int i = 0; i < d; ++i)
      if (i != j) cross = std::max(cross, std::abs(u[n * d + i]));
    result.cross_residual.push_back(cross);
  }
  // One-step consistency of the constructed profile, sampled log-uniformly.
  for (long long n = 1; n < m; n = std::max(n + 1, n + n / 16)) {
    double r = 0.0;
    for (int i = 0; i < d; ++i) {
      cdouble rhs = (g[n * d + i] * u[n * d + i] + bu[n * d + i]) / g[n * d + j];
      r = std::max(r, std::abs(u[(n + 1) * d + i] - rhs));
    }
    result.recurrence_residual = std::max(result.recurrence_residual, r);
  }
  return result;
}

ClassifyResult classify_solution(const CoffmanSystem& sys, std::vector<cdouble> y1,
                                 long long n_final, const std::vector<long long>& checkpoints,
                                 double tail_tol) {
  const int d = sys.dim;
  ClassifyResult out;
  for (int i = 0; i + 1 < d; ++i)
    if (!(std::abs(sys.lambda[i]) > std::abs(sys.lambda[i + 1])))
      throw std::invalid_argument("classify_solution: moduli must be strictly decreasing");
  bool all_zero = true;
  for (const cdouble& v : y1) all_zero = all_zero && v == cdouble{0.0, 0.0};
  if (all_zero) throw std::invalid_argument("classify_solution: zero initial vector");
  if (checkpoints.empty() || checkpoints.back() < 8)
    throw std::invalid_argument("classify_solution: checkpoints must reach at least 8");

  // Hypothesis: diagonal partial sums Cauchy at the octave pair of the
  // largest checkpoint.
  const long long cmax = checkpoints.back();
  std::vector<KahanSum<cdouble>> diag(d);
  std::vector<cdouble> snap4(d), snap2(d), snap1(d);
  {
    std::vector<cdouble> a;
    for (long long n = 1; n <= cmax; ++n) {
      sys.a_at(n, a);
      for (int i = 0; i < d; ++i) diag[i].add(a[i * d + i]);
      if (n == cmax / 4)
        for (int i = 0; i < d; ++i) snap4[i] = diag[i].value();
      if (n == cmax / 2)
        for (int i = 0; i < d; ++i) snap2[i] = diag[i].value();
    }
    for (int i = 0; i < d; ++i) snap1[i] = diag[i].value();
  }
  for (int i = 0; i < d; ++i) {
    double t1 = std::abs(snap2[i] - snap4[i]);
    double t2 = std::abs(snap1[i] - snap2[i]);
    out.diag_tails.push_back(t2);
    if (t2 >= tail_tol) {
      out.refused = true;
      out.reason = "diagonal sum " + std::to_string(i) + " not Cauchy (tail " +
                   std::to_string(t2) + (t2 >= 1.05 * t1 ? ", growing)" : ")");
    }
  }
  if (out.refused) return out;

  // Window samples over [n_final/2, n_final].
  std::vector<long long> marks;
  for (int k = 0; k <= 32; ++k) {
    long long n = n_final / 2 + (n_final - n_final / 2) * k / 32;
    if (n >= 1 && (marks.empty() || n > marks.back())) marks.push_back(n);
  }
  Trajectory traj = evolve(sys, std::move(y1), n_final, marks);

  const ScaledVec& last = traj.states.back();
  int jstar = 0;
  for (int i = 1; i < d; ++i)
    if (std::abs(last.v[i]) > std::abs(last.v[jstar])) jstar = i;
  out.j = jstar;

  const double log_mod = std::log(std::abs(sys.lambda[jstar]));
  KahanSum<cdouble> mean;
  long long used = 0;
  for (size_t t = 0; t < traj.ns.size(); ++t) {
    long long n = traj.ns[t];
    const ScaledVec& sv = traj.states[t];
    if (sv.v[jstar] == cdouble{0.0, 0.0}) continue;
    double lr = sv.log_abs(jstar) - n * log_mod;
    cdouble phase = (sv.v[jstar] / std::abs(sv.v[jstar])) * std::conj(power_phase(sys.lambda[jstar], n));
    mean.add(phase * std::exp(lr));
    ++used;
  }
  out.c = used > 0 ? mean.value() / static_cast<double>(used) : cdouble{0.0, 0.0};
  for (int i = 0; i < d; ++i) {
    if (i == jstar) continue;
    double lr = last.log_abs(i) - n_final * log_mod;
    out.max_other = std::max(out.max_other, std::exp(lr));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Single-band reduction.

cdouble FreeCaseAssembly::poly_scaled(long long n) const {
  if (n < -1) throw std::invalid_argument("poly_scaled: n must be >= -1");
  cdouble zpow = std::pow(z, static_cast<double>(2 * n + 2));
  return (zpow - 1.0) / (z * z - 1.0);
}

std::array<cdouble, 4> FreeCaseAssembly::r_matrix(long long n) const {
  return {poly_scaled(n), z, z * poly_scaled(n - 1), cdouble{1.0, 0.0}};
}

std::array<cdouble, 4> FreeCaseAssembly::r_inverse(long long n) const {
  // det R_n = 1 identically.
  return {cdouble{1.0, 0.0}, -z, -z * poly_scaled(n - 1), poly_scaled(n)};
}

std::array<cdouble, 4> FreeCaseAssembly::q_matrix(long long n) const {
  double da = pert.da(n), db = pert.db(n);
  double an = 1.0 + da;
  if (!(an > 0.0)) throw std::domain_error("q_matrix: a_n <= 0 at n = " + std::to_string(n));
  return {cdouble{da, 0.0}, cdouble{0.0, 0.0}, ((an + 1.0) * x * da + db) / an,
          cdouble{-da / an, 0.0}};
}

std::array<cdouble, 4> FreeCaseAssembly::a_matrix(long long n) const {
  auto q = q_matrix(n);
  auto r = r_matrix(n - 1);
  auto ri = r_inverse(n - 1);
  // t = q * r
  std::array<cdouble, 4> t{q[0] * r[0] + q[1] * r[2], q[0] * r[1] + q[1] * r[3],
                           q[2] * r[0] + q[3] * r[2], q[2] * r[1] + q[3] * r[3]};
  // s = ri * t
  std::array<cdouble, 4> s{ri[0] * t[0] + ri[1] * t[2], ri[0] * t[1] + ri[1] * t[3],
                           ri[2] * t[0] + ri[3] * t[2], ri[2] * t[1] + ri[3] * t[3]};
  // diag(1/z, z) * s
  return {s[0] / z, s[1] / z, s[2] * z, s[3] * z};
}

CoffmanSystem FreeCaseAssembly::system() const {
  FreeCaseAssembly self = *this;
  return make_coffman({1.0 / z, z}, [self](long long n, cdouble* out) {
    auto a = self.a_matrix(n);
    std::copy(a.begin(), a.end(), out);
  });
}

double FreeCaseAssembly::det_residual(long long upto) const {
  double worst = 0.0;
  for (long long n = 0; n <= upto; n = std::max(n + 1, n + n / 64)) {
    auto r = r_matrix(n);
    cdouble det = r[0] * r[3] - r[1] * r[2];
    worst = std::max(worst, std::abs(det - cdouble{1.0, 0.0}));
  }
  return worst;
}

FreeCaseAssembly assemble_free_case(const Perturbation& pert, cdouble z, long long horizon) {
  double m = std::abs(z);
  if (!(m > 0.0 && m < 1.0))
    throw std::invalid_argument("assemble_free_case: need 0 < |z| < 1");
  cdouble x = z + 1.0 / z;
  if (x.imag() == 0.0)
    throw std::invalid_argument("assemble_free_case: z + 1/z must lie off the real axis");
  FreeCaseAssembly a;
  a.z = z;
  a.x = x;
  a.pert = pert;
  a.horizon = horizon;
  return a;
}

DiagonalSumReport diagonal_sum_check(const FreeCaseAssembly& asmb,
                                     const std::vector<long long>& checkpoints,
                                     double tail_tol) {
  if (checkpoints.empty() || checkpoints.back() < 8)
    throw std::invalid_argument("diagonal_sum_check: checkpoints must reach at least 8");
  const long long n_max = checkpoints.back();
  DiagonalSumReport rep;
  KahanSum<cdouble> s11, s22;
  KahanSum<double> a2;
  cdouble q11{}, q22{}, h11{}, h22{};  // octave snapshots
  double a2_half = 0.0;
  size_t ci = 0;
  const long long id_limit = std::min<long long>(n_max, 100000);
  for (long long n = 1; n <= n_max; ++n) {
    auto a = asmb.a_matrix(n);
    s11.add(a[0]);
    s22.add(a[3]);
    a2.add(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]) + std::norm(a[3]));
    if (n <= id_limit) {
      double da = asmb.pert.da(n);
      double an = 1.0 + da;
      cdouble lhs = a[3] / asmb.z;
      cdouble rhs = cdouble{da * da / an, 0.0} - asmb.z * a[0];
      rep.identity_residual = std::max(rep.identity_residual, std::abs(lhs - rhs));
    }
    if (n == n_max / 4) {
      q11 = s11.value();
      q22 = s22.value();
    }
    if (n == n_max / 2) {
      h11 = s11.value();
      h22 = s22.value();
      a2_half = a2.value();
    }
    if (ci < checkpoints.size() && n == checkpoints[ci]) {
      rep.s11.emplace_back(n, s11.value());
      rep.s22.emplace_back(n, s22.value());
      rep.a2_partial.emplace_back(n, a2.value());
      ++ci;
    }
  }
  auto verdict = [&](cdouble v4, cdouble v2, cdouble v1, double* tail) {
    double t1 = std::abs(v2 - v4), t2 = std::abs(v1 - v2);
    *tail = t2;
    if (t2 < tail_tol) return SumVerdict::converged;
    if (t2 >= 1.05 * t1) return SumVerdict::diverged;
    return SumVerdict::inconclusive;
  };
  rep.verdict11 = verdict(q11, h11, s11.value(), &rep.tail11);
  rep.verdict22 = verdict(q22, h22, s22.value(), &rep.tail22);
  rep.a2_tail = a2.value() - a2_half;
  return rep;
}

PhiPsiReport phi_psi_limit_check(const FreeCaseAssembly& asmb, long long n_final) {
  if (n_final < 16) throw std::invalid_argument("phi_psi_limit_check: horizon too small");
  PhiPsiReport rep;
  CoffmanSystem sys = asmb.system();

  // The state y_n = (phi_{n-1}, psi_{n-1}) starts from (phi_0, psi_0) =
  // R_0^{-1} (1, 0) = (1, 0); window samples over [n/2, n] plus geometric
  // decay marks.
  std::vector<long long> marks = geometric_marks(n_final, 6);
  for (int k = 0; k <= 64; ++k) {
    long long n = n_final / 2 + (n_final - n_final / 2) * k / 64;
    marks.push_back(n);
  }
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  Trajectory traj = evolve(sys, {cdouble{1.0, 0.0}, cdouble{0.0, 0.0}}, n_final + 1, [&] {
    std::vector<long long> shifted;
    for (long long n : marks) shifted.push_back(n + 1);  // state index of (phi_n, psi_n)
    return shifted;
  }());

  const double log_z = std::log(std::abs(asmb.z));
  auto scaled_pair = [&](size_t t, cdouble* phi_zn, cdouble* psi_zn) {
    long long n = traj.ns[t] - 1;  // (phi_n, psi_n)
    const ScaledVec& sv = traj.states[t];
    cdouble zphase = power_phase(asmb.z, n);
    for (int comp = 0; comp < 2; ++comp) {
      cdouble v = sv.v[comp];
      cdouble* out = comp == 0 ? phi_zn : psi_zn;
      if (v == cdouble{0.0, 0.0}) {
        *out = {0.0, 0.0};
        continue;
      }
      double lr = sv.log_abs(comp) + n * log_z;
      *out = (v / std::abs(v)) * zphase * std::exp(lr);
    }
  };

  // Direct two-recurrence ratio at the same sample points.
  JacobiParams params{free_jacobi(), asmb.pert};
  RatioTrace direct = ratio_trace(params, asmb.x, n_final, 1);

  KahanSum<cdouble> c1_mean, ratio_mean;
  long long window_lo = n_final / 2;
  long long count = 0;
  for (size_t t = 0; t < traj.ns.size(); ++t) {
    long long n = traj.ns[t] - 1;
    cdouble phi_zn, psi_zn;
    scaled_pair(t, &phi_zn, &psi_zn);
    cdouble recon = phi_zn + psi_zn * asmb.z / asmb.poly_scaled(n);
    if (n >= 1) {
      const RatioSample& s = direct.samples[static_cast<size_t>(n - 1)];
      if (s.n != n) throw std::logic_error("phi_psi_limit_check: sample misalignment");
      rep.reconstruction_residual = std::max(
          rep.reconstruction_residual, std::abs(recon - s.r) / std::max(1e-300, std::abs(s.r)));
    }
    if (n >= window_lo) {
      c1_mean.add(phi_zn);
      ratio_mean.add(recon);
      ++count;
    }
    if (n == n_final) rep.second_final = std::abs(psi_zn);
    rep.second_decay.emplace_back(n, std::abs(psi_zn));
  }
  rep.c1 = c1_mean.value() / static_cast<double>(count);
  rep.ratio_limit = ratio_mean.value() / static_cast<double>(count);
  if (std::abs(rep.c1) < 1e-8 * std::max(1.0, std::abs(rep.ratio_limit)))
    throw std::runtime_error(
        "phi_psi_limit_check: leading component vanished; the polynomial would decay off the "
        "real axis, which is impossible");
  return rep;
}

}  // namespace fgj
