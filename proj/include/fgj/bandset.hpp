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

#include <utility>
#include <vector>

#include "fgj/numerics.hpp"

namespace fgj {

/// A finite union of disjoint closed intervals [alpha_j, beta_j], kept sorted
/// with strictly increasing endpoints (touching intervals are rejected).
struct BandSet {
  std::vector<std::pair<double, double>> bands;

  int gaps() const { return static_cast<int>(bands.size()) - 1; }
  double lower() const { return bands.front().first; }
  double upper() const { return bands.back().second; }
  double span() const { return upper() - lower(); }
  /// Gap j = (beta_j, alpha_{j+1}), 0-based, j < gaps().
  std::pair<double, double> gap(int j) const {
    return {bands[j].second, bands[j + 1].first};
  }
};

/// Validates and sorts the intervals.  Throws std::invalid_argument naming the
/// index (in the caller's list) of the offending pair for reversed endpoints
/// or overlapping/touching intervals.
BandSet make_band_set(std::vector<std::pair<double, double>> intervals);

/// Euclidean distance from x to the union of bands; 0 iff x lies in a band.
double dist_to_bands(double x, const BandSet& e);

/// Equilibrium measure data for a band set.  The density on the bands is
/// |P(x)| / (pi * sqrt(|R(x)|)) where R is the monic polynomial vanishing at
/// every band endpoint and P is monic of degree `gaps()` with one root per
/// gap, fixed by the condition that the density integrates to zero across
/// each gap.  harmonic_measures[j] is the measure of the first j+1 bands.
struct EquilibriumMeasure {
  BandSet band_set;
  std::vector<double> gap_roots;          // one per gap, ascending
  double capacity = 0.0;                  // logarithmic capacity
  std::vector<double> harmonic_measures;  // gaps() values, strictly increasing in (0,1)
  double quad_tol = 0.0;
  std::vector<double> band_masses;        // per-band measure, sums to 1
  double mass_residual = 0.0;             // |sum of band masses - 1|
  double max_gap_residual = 0.0;          // largest gap moment of the density

  /// Monic polynomial with the gap roots, evaluated via its root product.
  double poly(double x) const;
  /// Product of (x - e) over every band endpoint.
  double endpoint_poly(double x) const;
  /// Density of the measure at a point strictly inside a band.
  double density(double x) const;
};

EquilibriumMeasure equilibrium_measure(const BandSet& e, double quad_tol = 1e-10);

struct FrequencyVector {
  std::vector<int> k;
};

/// (k . omega) mod 1, in [0, 1).  Throws on length mismatch.
double frequency_of(const FrequencyVector& k, const EquilibriumMeasure& m);

/// Potential-theoretic Green's function with pole at infinity, evaluated at a
/// real point off the bands.  Throws std::domain_error for x inside a band.
double green_function(const EquilibriumMeasure& m, double x);

struct DiophantineResult {
  double constant = 0.0;      // min over the box of frac(+-omega0 + k.omega) * (1+|k|)^s
  std::vector<int> worst_k;   // argmin (the offending k when resonant)
  int worst_sign = 1;         // sign of omega0 at the argmin
  bool resonant = false;      // frac within 1e-12 of an integer somewhere in the box
};

/// Scans every integer vector with |k|_inf <= kmax.  A resonance (omega0
/// congruent mod 1 to an element of the frequency module within 1e-12)
/// reports constant = 0 together with the offending k.
DiophantineResult diophantine_quality(const EquilibriumMeasure& m, double omega0,
                                      int kmax, int s);

}  // namespace fgj
