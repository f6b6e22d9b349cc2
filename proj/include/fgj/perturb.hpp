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

#include <functional>
#include <map>
#include <optional>

#include "fgj/bandset.hpp"
#include "fgj/numerics.hpp"

namespace fgj {

/// A diagonal/off-diagonal perturbation sequence pair with family metadata.
/// Providers are pure and total for n >= 1.
struct Perturbation {
  enum class Family { zero, example1, example2, l1_decay, custom };

  Family family = Family::zero;
  double alpha = 0.0;
  double omega = 0.0;  // carrier frequency (example1 only)
  std::function<double(long long)> da = [](long long) { return 0.0; };
  std::function<double(long long)> db = [](long long) { return 0.0; };

  bool is_zero() const { return family == Family::zero; }
};

/// Families:
///   zero       da = db = 0
///   example1   db_n = n^-alpha cos(2 pi omega n),  alpha in (1/2,1), omega in (0,1)
///   example2   db_n = n^-alpha cos(2 pi sqrt(n)),  alpha in (3/4,1)
///   l1_decay   db_n = n^-alpha,                    alpha > 1
/// Out-of-range parameters are rejected with a message naming the range.
Perturbation make_perturbation(Perturbation::Family family, double alpha = 0.0,
                               double omega = 0.0);
Perturbation custom_perturbation(std::function<double(long long)> da,
                                 std::function<double(long long)> db);

struct SequenceNorms {
  double l2_sum = 0.0;  // sum of |da_n|^2 + |db_n|^2
  double l1_sum = 0.0;  // sum of |da_n| + |db_n|
  LineFit l1_fit;       // log-log growth of the l1 partial sums
  LineFit l2_fit;
};
SequenceNorms sequence_norms(const Perturbation& p, long long n_max);

/// Partial sums S_N = sum_{n<=N} e^{2 pi i x n} dc_n for component c in {a,b}.
struct PartialSumSeries {
  double x = 0.0;
  char component = 'b';
  std::vector<std::pair<long long, cdouble>> entries;
};
PartialSumSeries weighted_partial_sums(const Perturbation& p, char component, double x,
                                       const std::vector<long long>& checkpoints);

enum class SumVerdict { converged, diverged, inconclusive };
const char* to_string(SumVerdict v);

/// Octave-tail Cauchy classification: converged when |S(N) - S(N/2)| at the
/// largest checkpoint N stays below tail_tol; diverged when the octave tails
/// exceed it and keep growing (or a structural resonance is detected).
struct ConditionBEntry {
  std::vector<int> k;
  double x = 0.0;  // frac(k . omega)
  SumVerdict verdict_a = SumVerdict::converged, verdict_b = SumVerdict::converged;
  cdouble sum_a, sum_b;  // values at the largest checkpoint
  double tail_a = 0.0, tail_b = 0.0;
  bool resonant = false;
};
std::vector<ConditionBEntry> check_condition_b(const Perturbation& p,
                                               const std::vector<double>& omegas, int kmax,
                                               const std::vector<long long>& checkpoints,
                                               double tail_tol);
std::vector<ConditionBEntry> check_condition_b(const Perturbation& p,
                                               const EquilibriumMeasure& m, int kmax,
                                               const std::vector<long long>& checkpoints,
                                               double tail_tol);

struct ConditionCEntry {
  std::vector<int> k;
  double x = 0.0;
  double sup_abs = 0.0;  // sup_{M<=N} (|S^a_M| + |S^b_M|)
};
struct ConditionCReport {
  std::vector<ConditionCEntry> entries;
  LineFit log_sup_vs_knorm;  // slope of log sup against |k|_inf
};
ConditionCReport check_condition_c(const Perturbation& p, const std::vector<double>& omegas,
                                   int kmax, long long n_max);
ConditionCReport check_condition_c(const Perturbation& p, const EquilibriumMeasure& m,
                                   int kmax, long long n_max);

/// Per-residue block sums  sum_m dc_{m*period+j}, j = 1..period, with octave
/// Cauchy verdicts.  dft_residual reports the worst mismatch between the
/// residue sums recombined by a discrete Fourier transform and the directly
/// computed frequency sums at x = q/period (an exact identity up to rounding).
struct BlockSumEntry {
  int residue = 1;
  double sum_a = 0.0, sum_b = 0.0;
  SumVerdict verdict_a = SumVerdict::converged, verdict_b = SumVerdict::converged;
  double tail_a = 0.0, tail_b = 0.0;
};
struct BlockSumReport {
  std::vector<BlockSumEntry> entries;
  double dft_residual = 0.0;
};
BlockSumReport periodic_block_sums(const Perturbation& p, int period,
                                   const std::vector<long long>& checkpoints,
                                   double tail_tol = 5e-3);

/// Finite Fourier model of a real analytic almost periodic sequence
/// f_n = sum_k c_k e^{2 pi i (k . omega) n} with declared coefficient decay
/// |c_k| <= coeff_bound * exp(-coeff_rate |k|).
struct FourierModel {
  std::vector<std::pair<std::vector<int>, cdouble>> coeffs;
  double coeff_bound = 1.0;  // C
  double coeff_rate = 1.0;   // D
};
struct WeightedSumReport {
  std::vector<std::pair<long long, cdouble>> entries_a, entries_b;
  SumVerdict verdict_a = SumVerdict::converged, verdict_b = SumVerdict::converged;
  double tail_a = 0.0, tail_b = 0.0;
};
/// Sums f_n * dc_n with compensated accumulation.  Throws when a supplied
/// coefficient violates the declared bound.
WeightedSumReport almost_periodic_weighted_sum(const FourierModel& f, const Perturbation& p,
                                               const std::vector<double>& omegas,
                                               const std::vector<long long>& checkpoints,
                                               double tail_tol = 5e-3);

/// Default experiment checkpoints {1e3, 1e4, 1e5, 1e6}.
std::vector<long long> default_checkpoints();

/// All integer vectors with |k|_inf <= kmax in odometer order (dim may be 0).
std::vector<std::vector<int>> k_box(int dim, int kmax);

}  // namespace fgj
