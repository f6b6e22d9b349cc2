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

#include "fgj/perturb.hpp"

#include <algorithm>

namespace fgj {

namespace {

// cos(2 pi sqrt(n)) via reduction of sqrt(n) mod 1; for n <= 1e8 the phase
// error stays below 1e-8 * 2 pi in double precision.
double cos_sqrt_phase(long long n) {
  double s = std::sqrt(static_cast<double>(n));
  return std::cos(2.0 * kPi * (s - std::floor(s)));
}

}  // namespace

Perturbation make_perturbation(Perturbation::Family family, double alpha, double omega) {
  Perturbation p;
  p.family = family;
  p.alpha = alpha;
  p.omega = omega;
  switch (family) {
    case Perturbation::Family::zero:
      break;
    case Perturbation::Family::example1:
      if (!(alpha > 0.5 && alpha < 1.0))
        throw std::invalid_argument("example1 requires alpha in (1/2, 1), got " + std::to_string(alpha));
      if (!(omega > 0.0 && omega < 1.0))
        throw std::invalid_argument("example1 requires omega in (0, 1), got " + std::to_string(omega));
      p.db = [alpha, omega](long long n) {
        return std::pow(static_cast<double>(n), -alpha) * std::cos(2.0 * kPi * frac01(omega * n));
      };
      break;
    case Perturbation::Family::example2:
      if (!(alpha > 0.75 && alpha < 1.0))
        throw std::invalid_argument("example2 requires alpha in (3/4, 1), got " + std::to_string(alpha));
      p.db = [alpha](long long n) {
        return std::pow(static_cast<double>(n), -alpha) * cos_sqrt_phase(n);
      };
      break;
    case Perturbation::Family::l1_decay:
      if (!(alpha > 1.0))
        throw std::invalid_argument("l1_decay requires alpha > 1, got " + std::to_string(alpha));
      p.db = [alpha](long long n) { return std::pow(static_cast<double>(n), -alpha); };
      break;
    case Perturbation::Family::custom:
      throw std::invalid_argument("use custom_perturbation for custom sequences");
  }
  return p;
}

Perturbation custom_perturbation(std::function<double(long long)> da,
                                 std::function<double(long long)> db) {
  Perturbation p;
  p.family = Perturbation::Family::custom;
  if (da) p.da = std::move(da);
  if (db) p.db = std::move(db);
  return p;
}

SequenceNorms sequence_norms(const Perturbation& p, long long n_max) {
  if (n_max < 10) throw std::invalid_argument("sequence_norms: need n_max >= 10");
  SequenceNorms out;
  // Octave samples for the growth fits.
  std::vector<long long> marks;
  for (long long m = n_max; m >= 16 && marks.size() < 7; m /= 2) marks.push_back(m);
  std::sort(marks.begin(), marks.end());
  std::vector<double> lx, l1y, l2y;
  KahanSum<double> l1, l2;
  size_t next = 0;
  for (long long n = 1; n <= n_max; ++n) {
    double da = p.da(n), db = p.db(n);
    l1.add(std::abs(da) + std::abs(db));
    l2.add(da * da + db * db);
    if (next < marks.size() && n == marks[next]) {
      ++next;
      if (l1.value() > 0 && l2.value() > 0) {
        lx.push_back(std::log(static_cast<double>(n)));
        l1y.push_back(std::log(l1.value()));
        l2y.push_back(std::log(l2.value()));
      }
    }
  }
  out.l1_sum = l1.value();
  out.l2_sum = l2.value();
  out.l1_fit = fit_line(lx, l1y);
  out.l2_fit = fit_line(lx, l2y);
  return out;
}

PartialSumSeries weighted_partial_sums(const Perturbation& p, char component, double x,
                                       const std::vector<long long>& checkpoints) {
  if (component != 'a' && component != 'b')
    throw std::invalid_argument("weighted_partial_sums: component must be 'a' or 'b'");
  for (size_t i = 1; i < checkpoints.size(); ++i)
    if (checkpoints[i] <= checkpoints[i - 1])
      throw std::invalid_argument("weighted_partial_sums: checkpoints must be increasing");
  PartialSumSeries out;
  out.x = x;
  out.component = component;
  if (checkpoints.empty()) return out;
  const auto& seq = (component == 'a') ? p.da : p.db;
  KahanSum<cdouble> acc;
  double phase = 0.0;
  size_t next = 0;
  for (long long n = 1; n <= checkpoints.back(); ++n) {
    phase = frac01(phase + x);
    double c = seq(n);
    if (c != 0.0) acc.add(cdouble{std::cos(2.0 * kPi * phase), std::sin(2.0 * kPi * phase)} * c);
    if (n == checkpoints[next]) {
      out.entries.emplace_back(n, acc.value());
      ++next;
      if (next == checkpoints.size()) break;
    }
  }
  return out;
}

const char* to_string(SumVerdict v) {
  switch (v) {
    case SumVerdict::converged: return "converged";
    case SumVerdict::diverged: return "diverged";
    default: return "inconclusive";
  }
}

namespace {

// Cauchy classification from values at N/4, N/2, N.
SumVerdict octave_verdict(cdouble s4, cdouble s2, cdouble s1, double tail_tol, double* tail_out) {
  double t1 = std::abs(s2 - s4);
  double t2 = std::abs(s1 - s2);
  if (tail_out) *tail_out = t2;
  if (t2 < tail_tol) return SumVerdict::converged;
  if (t2 >= 1.05 * t1) return SumVerdict::diverged;
  return SumVerdict::inconclusive;
}

std::vector<long long> with_octaves(const std::vector<long long>& checkpoints) {
  if (checkpoints.empty()) throw std::invalid_argument("checkpoints must be non-empty");
  long long n = checkpoints.back();
  if (n < 8) throw std::invalid_argument("checkpoints must reach at least 8");
  std::vector<long long> all(checkpoints);
  all.push_back(n / 2);
  all.push_back(n / 4);
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

cdouble value_at(const PartialSumSeries& s, long long n) {
  for (const auto& [m, v] : s.entries)
    if (m == n) return v;
  throw std::logic_error("missing checkpoint");
}

}  // namespace

std::vector<ConditionBEntry> check_condition_b(const Perturbation& p,
                                               const std::vector<double>& omegas, int kmax,
                                               const std::vector<long long>& checkpoints,
                                               double tail_tol) {
  if (kmax < 0) throw std::invalid_argument("check_condition_b: kmax must be non-negative");
  auto marks = with_octaves(checkpoints);
  const long long n_max = marks.back();
  std::vector<ConditionBEntry> out;
  for (const auto& k : k_box(static_cast<int>(omegas.size()), kmax)) {
    ConditionBEntry entry;
    entry.k = k;
    KahanSum<double> dot;
    for (size_t j = 0; j < k.size(); ++j) dot.add(k[j] * omegas[j]);
    entry.x = frac01(dot.value());
    auto sa = weighted_partial_sums(p, 'a', entry.x, marks);
    auto sb = weighted_partial_sums(p, 'b', entry.x, marks);
    entry.sum_a = value_at(sa, n_max);
    entry.sum_b = value_at(sb, n_max);
    entry.verdict_a = octave_verdict(value_at(sa, n_max / 4), value_at(sa, n_max / 2),
                                     entry.sum_a, tail_tol, &entry.tail_a);
    entry.verdict_b = octave_verdict(value_at(sb, n_max / 4), value_at(sb, n_max / 2),
                                     entry.sum_b, tail_tol, &entry.tail_b);
    // A carrier hitting the frequency module collapses the cosine to a
    // one-signed n^-alpha series.
    if (p.family == Perturbation::Family::example1 &&
        (dist_to_integers(entry.x - p.omega) < 1e-12 || dist_to_integers(entry.x + p.omega) < 1e-12)) {
      entry.resonant = true;
      entry.verdict_b = SumVerdict::diverged;
    }
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<ConditionBEntry> check_condition_b(const Perturbation& p,
                                               const EquilibriumMeasure& m, int kmax,
                                               const std::vector<long long>& checkpoints,
                                               double tail_tol) {
  return check_condition_b(p, m.harmonic_measures, kmax, checkpoints, tail_tol);
}

ConditionCReport check_condition_c(const Perturbation& p, const std::vector<double>& omegas,
                                   int kmax, long long n_max) {
  if (kmax < 1) throw std::invalid_argument("check_condition_c: kmax must be >= 1");
  ConditionCReport report;
  std::vector<double> kn, ls;
  for (const auto& k : k_box(static_cast<int>(omegas.size()), kmax)) {
    ConditionCEntry entry;
    entry.k = k;
    KahanSum<double> dot;
    int norm = 0;
    for (size_t j = 0; j < k.size(); ++j) {
      dot.add(k[j] * omegas[j]);
      norm = std::max(norm, std::abs(k[j]));
    }
    entry.x = frac01(dot.value());
    KahanSum<cdouble> sa, sb;
    double phase = 0.0;
    double sup = 0.0;
    for (long long n = 1; n <= n_max; ++n) {
      phase = frac01(phase + entry.x);
      cdouble w{std::cos(2.0 * kPi * phase), std::sin(2.0 * kPi * phase)};
      double da = p.da(n), db = p.db(n);
      if (da != 0.0) sa.add(w * da);
      if (db != 0.0) sb.add(w * db);
      sup = std::max(sup, std::abs(sa.value()) + std::abs(sb.value()));
    }
    entry.sup_abs = sup;
    report.entries.push_back(entry);
    if (sup > 0) {
      kn.push_back(static_cast<double>(norm));
      ls.push_back(std::log(sup));
    }
  }
  report.log_sup_vs_knorm = fit_line(kn, ls);
  return report;
}

ConditionCReport check_condition_c(const Perturbation& p, const EquilibriumMeasure& m,
                                   int kmax, long long n_max) {
  return check_condition_c(p, m.harmonic_measures, kmax, n_max);
}

BlockSumReport periodic_block_sums(const Perturbation& p, int period,
                                   const std::vector<long long>& checkpoints,
                                   double tail_tol) {
  if (period < 1) throw std::invalid_argument("periodic_block_sums: period must be >= 1");
  auto marks = with_octaves(checkpoints);
  const long long n_max = marks.back();
  std::vector<KahanSum<double>> acc_a(period), acc_b(period);
  // Residue sums at N/4, N/2, N for the verdicts.
  std::vector<std::vector<double>> snap_a(3, std::vector<double>(period)),
      snap_b(3, std::vector<double>(period));
  const long long quarts[3] = {n_max / 4, n_max / 2, n_max};
  int qi = 0;
  for (long long n = 1; n <= n_max; ++n) {
    int r = static_cast<int>((n - 1) % period);
    acc_a[r].add(p.da(n));
    acc_b[r].add(p.db(n));
    while (qi < 3 && n == quarts[qi]) {
      for (int j = 0; j < period; ++j) {
        snap_a[qi][j] = acc_a[j].value();
        snap_b[qi][j] = acc_b[j].value();
      }
      ++qi;
    }
  }
  BlockSumReport report;
  for (int j = 0; j < period; ++j) {
    BlockSumEntry e;
    e.residue = j + 1;
    e.sum_a = snap_a[2][j];
    e.sum_b = snap_b[2][j];
    e.verdict_a = octave_verdict(snap_a[0][j], snap_a[1][j], snap_a[2][j], tail_tol, &e.tail_a);
    e.verdict_b = octave_verdict(snap_b[0][j], snap_b[1][j], snap_b[2][j], tail_tol, &e.tail_b);
    report.entries.push_back(e);
  }
  // Exact identity: sum_{n<=N} e^{2 pi i q n / period} dc_n recombines from
  // the residue sums.  Compare against the direct frequency sums.
  for (int q = 0; q < period; ++q) {
    double x = static_cast<double>(q) / period;
    auto direct = weighted_partial_sums(p, 'b', x, {n_max});
    KahanSum<cdouble> recomb;
    for (int j = 0; j < period; ++j) {
      double ph = 2.0 * kPi * frac01(x * (j + 1));
      recomb.add(cdouble{std::cos(ph), std::sin(ph)} * snap_b[2][j]);
    }
    report.dft_residual = std::max(report.dft_residual,
                                   std::abs(recomb.value() - direct.entries.back().second));
  }
  return report;
}

WeightedSumReport almost_periodic_weighted_sum(const FourierModel& f, const Perturbation& p,
                                               const std::vector<double>& omegas,
                                               const std::vector<long long>& checkpoints,
                                               double tail_tol) {
  for (const auto& [k, c] : f.coeffs) {
    if (k.size() != omegas.size())
      throw std::invalid_argument("almost_periodic_weighted_sum: coefficient index length mismatch");
    int norm = 0;
    for (int kj : k) norm = std::max(norm, std::abs(kj));
    if (std::abs(c) > f.coeff_bound * std::exp(-f.coeff_rate * norm) * (1.0 + 1e-12))
      throw std::invalid_argument("almost_periodic_weighted_sum: coefficient violates the declared decay bound");
  }
  auto marks = with_octaves(checkpoints);
  const long long n_max = marks.back();
  // Frequencies of the model, reduced mod 1.
  std::vector<double> freqs;
  for (const auto& [k, c] : f.coeffs) {
    KahanSum<double> dot;
    for (size_t j = 0; j < k.size(); ++j) dot.add(k[j] * omegas[j]);
    freqs.push_back(frac01(dot.value()));
  }
  WeightedSumReport report;
  KahanSum<cdouble> sa, sb;
  std::vector<double> phases(freqs.size(), 0.0);
  cdouble snap_a[3]{}, snap_b[3]{};
  const long long quarts[3] = {n_max / 4, n_max / 2, n_max};
  int qi = 0;
  size_t next = 0;
  for (long long n = 1; n <= n_max; ++n) {
    KahanSum<cdouble> fn;
    for (size_t t = 0; t < freqs.size(); ++t) {
      phases[t] = frac01(phases[t] + freqs[t]);
      double ph = 2.0 * kPi * phases[t];
      fn.add(f.coeffs[t].second * cdouble{std::cos(ph), std::sin(ph)});
    }
    cdouble w = fn.value();
    sa.add(w * p.da(n));
    sb.add(w * p.db(n));
    if (next < marks.size() && n == marks[next]) {
      report.entries_a.emplace_back(n, sa.value());
      report.entries_b.emplace_back(n, sb.value());
      ++next;
    }
    while (qi < 3 && n == quarts[qi]) {
      snap_a[qi] = sa.value();
      snap_b[qi] = sb.value();
      ++qi;
    }
  }
  report.verdict_a = octave_verdict(snap_a[0], snap_a[1], snap_a[2], tail_tol, &report.tail_a);
  report.verdict_b = octave_verdict(snap_b[0], snap_b[1], snap_b[2], tail_tol, &report.tail_b);
  return report;
}

std::vector<long long> default_checkpoints() { return {1000, 10000, 100000, 1000000}; }

std::vector<std::vector<int>> k_box(int dim, int kmax) {
  std::vector<std::vector<int>> out;
  std::vector<int> k(dim, -kmax);
  while (true) {
    out.push_back(k);
    int j = 0;
    for (; j < dim; ++j) {
      if (k[j] < kmax) {
        ++k[j];
        for (int i = 0; i < j; ++i) k[i] = -kmax;
        break;
      }
    }
    if (j == dim) break;
  }
  return out;
}

}  // namespace fgj
