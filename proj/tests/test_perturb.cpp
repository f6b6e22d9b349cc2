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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "fgj/perturb.hpp"

using namespace fgj;

TEST_CASE("family construction and parameter ranges") {
  Perturbation e2 = make_perturbation(Perturbation::Family::example2, 0.8);
  CHECK(e2.db(1) == doctest::Approx(1.0).epsilon(1e-14));  // cos(2 pi) with sqrt(1) = 1
  CHECK(e2.da(5) == 0.0);

  Perturbation e1 = make_perturbation(Perturbation::Family::example1, 0.8, 0.25);
  CHECK(e1.db(2) == doctest::Approx(-std::pow(2.0, -0.8)).epsilon(1e-14));

  CHECK_THROWS_WITH_AS(make_perturbation(Perturbation::Family::example1, 0.4, 0.3),
                       doctest::Contains("(1/2, 1)"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_perturbation(Perturbation::Family::example2, 0.6),
                       doctest::Contains("(3/4, 1)"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_perturbation(Perturbation::Family::l1_decay, 0.9),
                       doctest::Contains("> 1"), std::invalid_argument);
}

TEST_CASE("sequence norms") {
  SequenceNorms zero = sequence_norms(make_perturbation(Perturbation::Family::zero), 1000);
  CHECK(zero.l1_sum == 0.0);
  CHECK(zero.l2_sum == 0.0);
  CHECK_FALSE(zero.l1_fit.ok);

  SequenceNorms basel = sequence_norms(make_perturbation(Perturbation::Family::l1_decay, 2.0), 1000000);
  CHECK(std::abs(basel.l1_sum - kPi * kPi / 6.0) <= 1.1e-6);  // tail of the square-sum is ~1/N

  SequenceNorms e2 = sequence_norms(make_perturbation(Perturbation::Family::example2, 0.8), 1000000);
  CHECK(std::abs(e2.l1_fit.slope - 0.2) <= 0.05);  // partial sums grow like N^{1-alpha}
  CHECK(e2.l2_fit.slope < 0.02);                   // square sums converge
}

TEST_CASE("weighted partial sums: geometric series and the triangle bound") {
  Perturbation geo = custom_perturbation(nullptr, [](long long n) { return std::pow(2.0, -static_cast<double>(n)); });
  PartialSumSeries s = weighted_partial_sums(geo, 'b', 0.0, {10, 100});
  CHECK(std::abs(s.entries.back().second - cdouble{1.0, 0.0}) <= 1e-12);

  Perturbation e1 = make_perturbation(Perturbation::Family::example1, 0.8, 0.382);
  double l1 = 0.0;
  for (long long n = 1; n <= 5000; ++n) l1 += std::abs(e1.db(n));
  for (double x : {0.0, 0.1, 0.382, 0.77}) {
    PartialSumSeries w = weighted_partial_sums(e1, 'b', x, {5000});
    CHECK(std::abs(w.entries.back().second) <= l1 * (1.0 + 1e-12));
  }
  CHECK_THROWS_AS(weighted_partial_sums(geo, 'q', 0.0, {10}), std::invalid_argument);
  CHECK_THROWS_AS(weighted_partial_sums(geo, 'b', 0.0, {10, 5}), std::invalid_argument);
}

TEST_CASE("linearity of the weighted sums") {
  auto f = [](long long n) { return std::cos(0.7 * n) / (n * std::sqrt(static_cast<double>(n))); };
  auto g = [](long long n) { return 1.0 / (n * n + 3.0); };
  Perturbation pf = custom_perturbation(nullptr, f);
  Perturbation pg = custom_perturbation(nullptr, g);
  Perturbation sum = custom_perturbation(nullptr, [=](long long n) { return f(n) + g(n); });
  for (double x : {0.13, 0.5}) {
    cdouble a = weighted_partial_sums(pf, 'b', x, {4000}).entries.back().second;
    cdouble b = weighted_partial_sums(pg, 'b', x, {4000}).entries.back().second;
    cdouble c = weighted_partial_sums(sum, 'b', x, {4000}).entries.back().second;
    CHECK(std::abs(c - (a + b)) <= 1e-12);
  }
}

TEST_CASE("condition (b): zero, convergent, and resonant families") {
  std::vector<double> omegas = {0.5};
  auto checkpoints = std::vector<long long>{1000, 10000, 100000};

  auto zero = check_condition_b(make_perturbation(Perturbation::Family::zero), omegas, 2,
                                checkpoints, 5e-3);
  CHECK(zero.size() == 5);
  for (const auto& e : zero) {
    CHECK(e.verdict_b == SumVerdict::converged);
    CHECK(std::abs(e.sum_b) == 0.0);
  }

  auto e2 = check_condition_b(make_perturbation(Perturbation::Family::example2, 0.8), omegas, 2,
                              checkpoints, 2e-2);
  for (const auto& e : e2) CHECK(e.verdict_b == SumVerdict::converged);

  // Carrier inside the frequency module: flagged and divergent.
  auto res = check_condition_b(make_perturbation(Perturbation::Family::example1, 0.8, 0.5),
                               omegas, 2, checkpoints, 5e-3);
  int flagged = 0;
  for (const auto& e : res) {
    if (e.resonant) {
      ++flagged;
      CHECK(e.verdict_b == SumVerdict::diverged);
      CHECK(std::abs(e.x - 0.5) <= 1e-12);
    }
  }
  CHECK(flagged == 2);  // k = -1 and k = +1 land on the carrier

  // k = 0 equals the plain x = 0 weighted sum.
  Perturbation e1 = make_perturbation(Perturbation::Family::example1, 0.9, 0.3);
  auto entries = check_condition_b(e1, omegas, 1, checkpoints, 5e-3);
  cdouble direct = weighted_partial_sums(e1, 'b', 0.0, checkpoints).entries.back().second;
  bool found = false;
  for (const auto& e : entries) {
    if (e.k == std::vector<int>{0}) {
      CHECK(std::abs(e.sum_b - direct) <= 1e-12);
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("condition (c): bounded sups for the square-root carrier") {
  std::vector<double> omegas = {0.5};
  auto zero = check_condition_c(make_perturbation(Perturbation::Family::zero), omegas, 2, 1000);
  for (const auto& e : zero.entries) CHECK(e.sup_abs == 0.0);

  auto rep = check_condition_c(make_perturbation(Perturbation::Family::example2, 0.8), omegas, 3,
                               100000);
  CHECK(rep.entries.size() == 7);
  for (const auto& e : rep.entries) {
    CHECK(e.sup_abs > 0.0);
    CHECK(e.sup_abs < 10.0);
  }
  CHECK(rep.log_sup_vs_knorm.ok);
  CHECK(std::abs(rep.log_sup_vs_knorm.slope) <= 0.3);
  CHECK_THROWS_AS(check_condition_c(make_perturbation(Perturbation::Family::zero), omegas, 0, 100),
                  std::invalid_argument);
}

TEST_CASE("per-residue block sums and the recombination identity") {
  // Alternating slow decay: each residue class is one-signed and divergent,
  // while the full alternating sum converges.
  Perturbation alt = custom_perturbation(nullptr, [](long long n) {
    return (n % 2 ? -1.0 : 1.0) * std::pow(static_cast<double>(n), -0.8);
  });
  BlockSumReport rep = periodic_block_sums(alt, 2, {1000, 10000, 100000});
  REQUIRE(rep.entries.size() == 2);
  for (const auto& e : rep.entries) CHECK(e.verdict_b == SumVerdict::diverged);
  CHECK(rep.dft_residual <= 1e-9);

  auto full = check_condition_b(alt, std::vector<double>{}, 0, {1000, 10000, 100000}, 5e-3);
  REQUIRE(full.size() == 1);
  CHECK(full[0].verdict_b == SumVerdict::converged);

  BlockSumReport l1 = periodic_block_sums(make_perturbation(Perturbation::Family::l1_decay, 2.0),
                                          3, {1000, 10000, 100000});
  for (const auto& e : l1.entries) {
    CHECK(e.verdict_a == SumVerdict::converged);
    CHECK(e.verdict_b == SumVerdict::converged);
  }
  BlockSumReport zero = periodic_block_sums(make_perturbation(Perturbation::Family::zero), 4,
                                            {1000, 10000});
  for (const auto& e : zero.entries) {
    CHECK(e.sum_a == 0.0);
    CHECK(e.sum_b == 0.0);
  }
}

TEST_CASE("almost periodic weighted sums") {
  std::vector<double> omegas = {0.5};
  Perturbation e2 = make_perturbation(Perturbation::Family::example2, 0.8);

  FourierModel constant{{{std::vector<int>{0}, cdouble{1.0, 0.0}}}, 1.0, 1.0};
  WeightedSumReport rep = almost_periodic_weighted_sum(constant, e2, omegas, {1000, 10000, 100000}, 2e-2);
  CHECK(rep.verdict_b == SumVerdict::converged);
  cdouble direct = weighted_partial_sums(e2, 'b', 0.0, {100000}).entries.back().second;
  CHECK(std::abs(rep.entries_b.back().second - direct) <= 1e-10);

  FourierModel null{{}, 1.0, 1.0};
  WeightedSumReport z = almost_periodic_weighted_sum(null, e2, omegas, {1000, 10000});
  CHECK(std::abs(z.entries_b.back().second) == 0.0);

  // f_n = cos(2 pi omega_1 n) against a non-resonant linear carrier.
  Perturbation e1 = make_perturbation(Perturbation::Family::example1, 0.8,
                                      std::sqrt(2.0) - 1.0);
  FourierModel cosine{{{std::vector<int>{1}, cdouble{0.5, 0.0}},
                       {std::vector<int>{-1}, cdouble{0.5, 0.0}}},
                      1.0, 0.5};
  WeightedSumReport c = almost_periodic_weighted_sum(cosine, e1, omegas, {1000, 10000, 100000}, 2e-2);
  CHECK(c.verdict_b == SumVerdict::converged);

  FourierModel bad{{{std::vector<int>{3}, cdouble{0.9, 0.0}}}, 1.0, 1.0};  // 0.9 > e^{-3}
  CHECK_THROWS_WITH_AS(almost_periodic_weighted_sum(bad, e2, omegas, {1000, 10000}),
                       doctest::Contains("decay bound"), std::invalid_argument);
}

TEST_CASE("phase reduction of the square-root carrier stays accurate") {
  Perturbation e2 = make_perturbation(Perturbation::Family::example2, 0.8);
  std::mt19937_64 rng(23);
  for (int t = 0; t < 200; ++t) {
    long long n = 1 + static_cast<long long>(uniform01(rng) * 1e8);
    double s = std::sqrt(static_cast<double>(n));
    double direct = std::cos(2.0 * kPi * s) * std::pow(static_cast<double>(n), -0.8);
    // The two evaluation orders differ only by the rounding of 2*pi*sqrt(n).
    CHECK(std::abs(e2.db(n) - direct) <= 1e-9);
  }
}
