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
#include "fgj/eigens.hpp"

using namespace fgj;

namespace {

JacobiParams free_params() {
  return {free_jacobi(), make_perturbation(Perturbation::Family::zero)};
}

JacobiParams bump_params(double height) {
  return {free_jacobi(),
          custom_perturbation(nullptr, [height](long long n) { return n == 1 ? height : 0.0; })};
}

}  // namespace

TEST_CASE("free truncation spectra match the closed forms") {
  auto two = eigenvalues_truncation(free_params(), 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == doctest::Approx(-1.0).epsilon(1e-11));
  CHECK(two[1] == doctest::Approx(1.0).epsilon(1e-11));

  auto three = eigenvalues_truncation(free_params(), 3);
  CHECK(three[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-11));
  CHECK(std::abs(three[1]) <= 1e-11);
  CHECK(three[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-11));

  auto ten = eigenvalues_truncation(free_params(), 10);
  for (int k = 1; k <= 10; ++k)
    CHECK(ten[10 - k] == doctest::Approx(2.0 * std::cos(k * kPi / 11.0)).epsilon(1e-10));
}

TEST_CASE("Sturm counts agree with the computed spectrum everywhere") {
  std::mt19937_64 rng(5);
  JacobiParams params{make_periodic({1.0, 0.6}, {0.2, -0.4}),
                      custom_perturbation(nullptr, [&](long long n) { return std::sin(2.7 * n) / n; })};
  Truncation t = make_truncation(params, 40);
  auto eigs = eigenvalues_truncation(params, 40);
  for (int probe = 0; probe < 60; ++probe) {
    double x = -4.0 + 8.0 * uniform01(rng);
    long long expected = std::count_if(eigs.begin(), eigs.end(), [&](double e) { return e < x; });
    CHECK(t.count_below(x) == expected);
  }
}

TEST_CASE("adjacent truncation spectra interlace") {
  JacobiParams params{make_periodic({1, 2}, {0, 0}),
                      custom_perturbation(nullptr, [](long long n) { return 0.5 / (n * n); })};
  auto small = eigenvalues_truncation(params, 12);
  auto big = eigenvalues_truncation(params, 13);
  for (size_t k = 0; k < small.size(); ++k) {
    CHECK(big[k] <= small[k] + 1e-11);
    CHECK(small[k] <= big[k + 1] + 1e-11);
  }
}

TEST_CASE("unperturbed truncations approach the half-line spectrum") {
  // Free base: the extremal eigenvalues creep up to the band edges from
  // inside, so the gap to the edges shrinks monotonically.
  JacobiParams free_p = free_params();
  double prev = 1e300;
  for (long long n : {100LL, 1000LL, 10000LL}) {
    Truncation t = make_truncation(free_p, n);
    double worst = std::max(2.0 - t.eigenvalue(n - 1, 1e-12), t.eigenvalue(0, 1e-12) + 2.0);
    CHECK(worst < prev);
    prev = worst;
  }
  CHECK(prev <= 1e-6);

  // Two-band base in the boundary phase without a genuine gap state: the
  // truncation's own cut spawns a right-edge state in the gap, which the
  // boundary filter must remove, leaving nothing outside the bands.
  JacobiParams clean{make_periodic({2, 1}, {0, 0}), make_perturbation(Perturbation::Family::zero)};
  BandSet e = bands_of_periodic(clean.base);
  for (long long n : {1000LL, 10000LL}) {
    OutsideEigsResult r = outside_eigenvalues(clean, n, e, 1e-3);
    CHECK(r.kept.empty());
  }

  // The opposite phase has a genuine half-line eigenvalue at the gap center
  // (the explicit decaying solution (1, 0, -1/2, 0, 1/4, ...)); the filter
  // must keep it.
  JacobiParams bound{make_periodic({1, 2}, {0, 0}), make_perturbation(Perturbation::Family::zero)};
  OutsideEigsResult r = outside_eigenvalues(bound, 4000, e, 1e-3);
  REQUIRE_FALSE(r.kept.empty());
  double nearest = 1e300;
  for (double x : r.kept) nearest = std::min(nearest, std::abs(x));
  CHECK(nearest <= 1e-8);
}

TEST_CASE("margin filter and q-sums") {
  auto eigs = eigenvalues_truncation(free_params(), 60);
  EigenReport none = gap_eigenvalues(eigs, bands_of_periodic(free_jacobi()), 1e-6);
  CHECK(none.outside.empty());
  CHECK(q_sum(none, bands_of_periodic(free_jacobi()), 0.5) == 0.0);

  BandSet band = make_band_set({{-2, 2}});
  EigenReport fake;
  fake.outside = {3.0};
  CHECK(q_sum(fake, band, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
  fake.outside = {3.0, -2.5};
  CHECK(q_sum(fake, band, 0.5) == doctest::Approx(1.0 + std::sqrt(0.5)).epsilon(1e-14));
  CHECK(fake.q_sums.at(0.5) == doctest::Approx(1.0 + std::sqrt(0.5)).epsilon(1e-14));
  // Term-wise monotonicity in q: d^q decreases in q for d < 1, increases for d > 1.
  CHECK(q_sum(fake, band, 0.75) <= q_sum(fake, band, 0.5) + 1.0 * (std::pow(1.0, 0.75)));
  CHECK(std::pow(0.5, 0.75) < std::pow(0.5, 0.5));
  CHECK(std::pow(1.5, 0.75) > std::pow(1.5, 0.5));

  CHECK_THROWS_AS(gap_eigenvalues(eigs, band, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(q_sum(fake, band, 0.0), std::invalid_argument);
}

TEST_CASE("rank-one bump pushes one eigenvalue to the secular root") {
  // J = free + 3 * e_1 e_1^T has a single eigenvalue above the band at the
  // root of 1 = 3 (E - sqrt(E^2 - 4)) / 2, i.e. E = 10/3.
  JacobiParams params = bump_params(3.0);
  BandSet e = bands_of_periodic(free_jacobi());
  double secular = 10.0 / 3.0;
  {
    double lo = 2.0 + 1e-9, hi = 10.0;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      double val = 3.0 * (mid - std::sqrt(mid * mid - 4.0)) / 2.0 - 1.0;
      (val > 0 ? lo : hi) = mid;
    }
    CHECK(0.5 * (lo + hi) == doctest::Approx(secular).epsilon(1e-9));
  }
  auto eigs = eigenvalues_truncation(params, 2000);
  EigenReport rep = gap_eigenvalues(eigs, e, 1e-6);
  REQUIRE(rep.outside.size() == 1);
  CHECK(rep.outside[0] == doctest::Approx(secular).epsilon(1e-8));
}

TEST_CASE("bulk outside-eigenvalue scan agrees with the full spectrum path") {
  JacobiParams params{free_jacobi(), make_perturbation(Perturbation::Family::example2, 0.8)};
  BandSet e = bands_of_periodic(free_jacobi());
  const long long n = 3000;
  auto full = eigenvalues_truncation(params, n);
  EigenReport filtered = gap_eigenvalues(full, e, 1e-6);
  OutsideEigsResult fast = outside_eigenvalues(params, n, e, 1e-6);
  std::vector<double> fast_all = fast.kept;
  fast_all.insert(fast_all.end(), fast.filtered.begin(), fast.filtered.end());
  std::sort(fast_all.begin(), fast_all.end());
  REQUIRE(fast_all.size() == filtered.outside.size());
  for (size_t i = 0; i < fast_all.size(); ++i)
    CHECK(fast_all[i] == doctest::Approx(filtered.outside[i]).epsilon(1e-9));
}

TEST_CASE("boundary-localized states are filtered as truncation artifacts") {
  const long long n = 2000;
  // A bump planted in the trailing 2% of the truncation window.
  JacobiParams params{free_jacobi(), custom_perturbation(nullptr, [n](long long k) {
                        return (k >= n - 40 && k <= n - 10) ? 0.8 : 0.0;
                      })};
  BandSet e = bands_of_periodic(free_jacobi());
  OutsideEigsResult r = outside_eigenvalues(params, n, e, 1e-4);
  CHECK(r.kept.empty());
  CHECK_FALSE(r.filtered.empty());

  // The same bump in the bulk is genuine and kept.
  JacobiParams bulk{free_jacobi(), custom_perturbation(nullptr, [](long long k) {
                      return (k >= 900 && k <= 930) ? 0.8 : 0.0;
                    })};
  OutsideEigsResult rb = outside_eigenvalues(bulk, n, e, 1e-4);
  CHECK_FALSE(rb.kept.empty());
}

TEST_CASE("variational data for the free base") {
  PeriodicJacobi base = free_jacobi();
  Perturbation e2 = make_perturbation(Perturbation::Family::example2, 0.8);

  VariationalReport r5 = variational_bound(base, e2, 5);
  CHECK(r5.block_lo == 1595);
  CHECK(r5.block_hi == 1605);
  CHECK(r5.bound > 0.0);
  CHECK(r5.norm2 >= 0.5 * 5.0);  // grows like m

  // Zero perturbation: no positive term, and the base term is the exact
  // tent-vector value -2/m.
  VariationalReport rz = variational_bound(base, make_perturbation(Perturbation::Family::zero), 6);
  CHECK(rz.pert_term == 0.0);
  CHECK(rz.rayleigh <= 0.0);
  CHECK(rz.base_term == doctest::Approx(-2.0 / 6.0).epsilon(1e-9));

  // Rayleigh principle: the full quotient cannot exceed the top truncation
  // eigenvalue gap.
  JacobiParams params{base, e2};
  Truncation t = make_truncation(params, r5.block_hi + 200);
  double top = t.eigenvalue(t.size() - 1, 1e-12);
  CHECK(r5.rayleigh <= (top - 2.0) + 1e-12);

  CHECK_THROWS_AS(variational_bound(base, e2, 0), std::invalid_argument);
}

TEST_CASE("variational sweep decays like the expected power") {
  PeriodicJacobi base = free_jacobi();
  BandSet e = bands_of_periodic(base);
  BandEdgeSolutions edge = band_edge_solutions(base, e.upper());
  Perturbation e2 = make_perturbation(Perturbation::Family::example2, 0.8);
  std::vector<double> lx, ly;
  for (int m : {4, 8, 16, 32}) {
    VariationalReport r = variational_bound(base, edge, e2, m);
    REQUIRE(r.bound > 0.0);
    lx.push_back(std::log(static_cast<double>(m)));
    ly.push_back(std::log(r.bound));
  }
  LineFit fit = fit_line(lx, ly);
  REQUIRE(fit.ok);
  CHECK(std::abs(fit.slope - (-1.6)) <= 0.3);
}

TEST_CASE("variational bound on a two-band base") {
  PeriodicJacobi base = make_periodic({1, 2}, {0, 0});
  Perturbation e2 = make_perturbation(Perturbation::Family::example2, 0.8);
  VariationalReport r = variational_bound(base, e2, 8);
  CHECK(r.bound > 0.0);
  CHECK(r.norm2 > 0.0);
}
