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
#include "fgj/bandset.hpp"

using namespace fgj;

TEST_CASE("band set construction validates and sorts") {
  BandSet e = make_band_set({{-2, 2}});
  CHECK(e.gaps() == 0);

  BandSet two = make_band_set({{1, 3}, {-3, -1}});
  CHECK(two.gaps() == 1);
  CHECK(two.bands[0].first == -3);
  CHECK(two.bands[1].second == 3);

  CHECK_THROWS_WITH_AS(make_band_set({{-2, 0}, {0, 2}}),
                       doctest::Contains("overlapping or touching"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_band_set({{-1, -2}}), doctest::Contains("pair 0"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_band_set({{0, 1}, {3, 2}}), doctest::Contains("pair 1"),
                       std::invalid_argument);
  CHECK_THROWS_AS(make_band_set({}), std::invalid_argument);
}

TEST_CASE("distance to the bands") {
  BandSet one = make_band_set({{-2, 2}});
  CHECK(dist_to_bands(3, one) == doctest::Approx(1.0));
  CHECK(dist_to_bands(0, one) == 0.0);
  BandSet two = make_band_set({{-3, -1}, {1, 3}});
  CHECK(dist_to_bands(0, two) == doctest::Approx(1.0));
  CHECK(dist_to_bands(-5, two) == doctest::Approx(2.0));
}

TEST_CASE("single band: arcsine density, unit capacity") {
  EquilibriumMeasure m = equilibrium_measure(make_band_set({{-2, 2}}));
  CHECK(m.gap_roots.empty());
  CHECK(m.capacity == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.mass_residual <= 1e-10);
  for (double x : {-1.9, -1.0, 0.0, 0.3, 1.95}) {
    double exact = 1.0 / (kPi * std::sqrt(4.0 - x * x));
    CHECK(std::abs(m.density(x) - exact) <= 1e-12 * exact);
  }
  // Capacity of an interval is a quarter of its length.
  EquilibriumMeasure small = equilibrium_measure(make_band_set({{0, 1}}));
  CHECK(small.capacity == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("symmetric two-band sets") {
  EquilibriumMeasure m = equilibrium_measure(make_band_set({{-2, -1}, {1, 2}}));
  REQUIRE(m.gap_roots.size() == 1);
  CHECK(std::abs(m.gap_roots[0]) <= 1e-9);
  CHECK(m.harmonic_measures[0] == doctest::Approx(0.5).epsilon(1e-9));
  // Square-map closed form: capacity of {x : x^2 in [c, d]} is sqrt(d - c)/2.
  CHECK(m.capacity == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-10));

  EquilibriumMeasure wide = equilibrium_measure(make_band_set({{-3, -1}, {1, 3}}));
  CHECK(wide.harmonic_measures[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(wide.capacity == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("equilibrium invariants on random band sets") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 12; ++trial) {
    int nb = 1 + static_cast<int>(uniform01(rng) * 3.0);
    std::vector<std::pair<double, double>> iv;
    double cursor = -4.0 + 2.0 * uniform01(rng);
    for (int j = 0; j < nb; ++j) {
      double lo = cursor + 0.2 + uniform01(rng);
      double hi = lo + 0.3 + 1.5 * uniform01(rng);
      iv.emplace_back(lo, hi);
      cursor = hi;
    }
    EquilibriumMeasure m = equilibrium_measure(make_band_set(iv));
    CHECK(m.mass_residual <= 1e-10);
    CHECK(m.max_gap_residual <= 1e-10);
    for (size_t j = 0; j < m.gap_roots.size(); ++j) {
      auto [lo, hi] = m.band_set.gap(static_cast<int>(j));
      CHECK(m.gap_roots[j] > lo);
      CHECK(m.gap_roots[j] < hi);
    }
    for (size_t j = 0; j < m.harmonic_measures.size(); ++j) {
      CHECK(m.harmonic_measures[j] > 0.0);
      CHECK(m.harmonic_measures[j] < 1.0);
      if (j > 0) CHECK(m.harmonic_measures[j] > m.harmonic_measures[j - 1]);
    }
  }
}

TEST_CASE("reflection symmetry pairs gap roots and harmonic measures") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 6; ++trial) {
    double a = 0.2 + uniform01(rng);
    double b = a + 0.5 + uniform01(rng);
    double c = b + 0.4 + uniform01(rng);
    double d = c + 0.5 + uniform01(rng);
    // Four bands symmetric under x -> -x: three gaps.
    EquilibriumMeasure m =
        equilibrium_measure(make_band_set({{-d, -c}, {-b, -a}, {a, b}, {c, d}}));
    REQUIRE(m.gap_roots.size() == 3);
    CHECK(std::abs(m.gap_roots[1]) <= 1e-8);
    CHECK(m.gap_roots[0] == doctest::Approx(-m.gap_roots[2]).epsilon(1e-8));
    CHECK(m.harmonic_measures[0] + m.harmonic_measures[2] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(m.harmonic_measures[1] == doctest::Approx(0.5).epsilon(1e-9));
  }
}

TEST_CASE("affine covariance of the equilibrium data") {
  BandSet base = make_band_set({{-1.5, -0.25}, {0.5, 2.0}});
  EquilibriumMeasure m0 = equilibrium_measure(base);
  const double shift = 0.7, scale = 2.5;

  EquilibriumMeasure shifted = equilibrium_measure(make_band_set(
      {{base.bands[0].first + shift, base.bands[0].second + shift},
       {base.bands[1].first + shift, base.bands[1].second + shift}}));
  CHECK(shifted.gap_roots[0] == doctest::Approx(m0.gap_roots[0] + shift).epsilon(1e-9));
  CHECK(shifted.harmonic_measures[0] == doctest::Approx(m0.harmonic_measures[0]).epsilon(1e-9));
  CHECK(shifted.capacity == doctest::Approx(m0.capacity).epsilon(1e-9));

  EquilibriumMeasure scaled = equilibrium_measure(make_band_set(
      {{base.bands[0].first * scale, base.bands[0].second * scale},
       {base.bands[1].first * scale, base.bands[1].second * scale}}));
  CHECK(scaled.gap_roots[0] == doctest::Approx(m0.gap_roots[0] * scale).epsilon(1e-9));
  CHECK(scaled.harmonic_measures[0] == doctest::Approx(m0.harmonic_measures[0]).epsilon(1e-9));
  CHECK(scaled.capacity == doctest::Approx(m0.capacity * scale).epsilon(1e-9));
}

TEST_CASE("frequency module values") {
  EquilibriumMeasure m = equilibrium_measure(make_band_set({{-3, -1}, {1, 3}}));
  CHECK(frequency_of(FrequencyVector{{0}}, m) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(frequency_of(FrequencyVector{{2}}, m) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(frequency_of(FrequencyVector{{1}}, m) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK_THROWS_AS(frequency_of(FrequencyVector{{1, 2}}, m), std::invalid_argument);
}

TEST_CASE("Green's function closed forms and behavior") {
  EquilibriumMeasure one = equilibrium_measure(make_band_set({{-2, 2}}));
  CHECK(green_function(one, 2.5) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK(green_function(one, 4.0) == doctest::Approx(std::log(2.0 + std::sqrt(3.0))).epsilon(1e-10));
  // Interval closed form g(x) = log |u + sqrt(u^2 - 1)| with u the affine
  // image of x, checked on both sides.
  for (double x : {-6.0, -2.3, 2.1, 3.7, 9.0}) {
    double u = x / 2.0;
    double exact = std::log(std::abs(u) + std::sqrt(u * u - 1.0));
    CHECK(green_function(one, x) == doctest::Approx(exact).epsilon(1e-9));
  }
  CHECK_THROWS_AS(green_function(one, 0.5), std::domain_error);
  CHECK(green_function(one, 2.0 + 1e-9) <= 1e-4);  // vanishes toward the edge

  EquilibriumMeasure two = equilibrium_measure(make_band_set({{-3, -1}, {1, 3}}));
  CHECK(green_function(two, 0.0) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-9));
  // The square map halves the Green's function of the image interval [1, 9].
  for (double x : {0.4, 3.5, 5.0, -4.2}) {
    double w = x * x;
    double img = std::log((std::abs(2.0 * w - 10.0) + 2.0 * std::sqrt((w - 1.0) * (w - 9.0))) / 8.0);
    CHECK(green_function(two, x) == doctest::Approx(0.5 * img).epsilon(1e-8));
  }
  // Strictly positive off the bands and increasing beyond the hull.
  double prev = 0.0;
  for (double x : {3.05, 3.5, 4.5, 8.0, 30.0}) {
    double g = green_function(two, x);
    CHECK(g > prev);
    prev = g;
  }
}

TEST_CASE("diophantine quality over the frequency box") {
  EquilibriumMeasure two = equilibrium_measure(make_band_set({{-3, -1}, {1, 3}}));  // omega = 1/2
  DiophantineResult r = diophantine_quality(two, 0.618034, 10, 0);
  CHECK_FALSE(r.resonant);
  CHECK(r.constant == doctest::Approx(0.118034).epsilon(1e-9));

  // Brute-force oracle over the same box.
  double best = 1e300;
  for (int k = -10; k <= 10; ++k)
    for (int sign : {+1, -1})
      best = std::min(best, frac01(sign * 0.618034 + k * two.harmonic_measures[0]));
  CHECK(r.constant == doctest::Approx(best).epsilon(1e-12));

  DiophantineResult res = diophantine_quality(two, two.harmonic_measures[0], 3, 1);
  CHECK(res.resonant);
  CHECK(res.constant == 0.0);
  REQUIRE(res.worst_k.size() == 1);
  CHECK(std::abs(res.worst_k[0]) == 1);

  EquilibriumMeasure zero_gaps = equilibrium_measure(make_band_set({{-2, 2}}));
  DiophantineResult flat = diophantine_quality(zero_gaps, 0.25, 5, 0);
  CHECK(flat.constant == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(diophantine_quality(two, 0.3, -1, 0), std::invalid_argument);
}
