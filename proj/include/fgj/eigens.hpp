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

#include <map>

#include "fgj/oprl.hpp"

namespace fgj {

/// The N x N symmetric tridiagonal truncation of the Jacobi matrix:
/// diagonal b_1..b_N, off-diagonal a_1..a_{N-1}.
struct Truncation {
  std::vector<double> diag;
  std::vector<double> off2;  // squared off-diagonals, length N-1

  long long size() const { return static_cast<long long>(diag.size()); }
  /// Number of eigenvalues strictly below x (Sturm count).
  long long count_below(double x) const;
  std::pair<double, double> spectral_bounds() const;  // Gershgorin interval
  /// k-th smallest eigenvalue (0-based), bisected to eig_tol.
  double eigenvalue(long long k, double eig_tol) const;
};
Truncation make_truncation(const JacobiParams& params, long long n);

/// All N eigenvalues by Sturm bisection, ascending.  Cost grows like N^2;
/// intended for moderate N (use outside_eigenvalues for bulk scans).
std::vector<double> eigenvalues_truncation(const JacobiParams& params, long long n,
                                           double eig_tol = 1e-12);

struct EigenReport {
  long long truncation_size = 0;
  double margin = 0.0;
  std::vector<double> outside;        // eigenvalues with dist(x, bands) > margin
  std::map<double, double> q_sums;    // filled by q_sum callers
};

/// Filters a spectrum down to the eigenvalues farther than `margin` from the
/// band set (margin must exceed the bisection tolerance used to compute them).
EigenReport gap_eigenvalues(const std::vector<double>& eigs, const BandSet& e, double margin);

/// Sum of dist(x_k, bands)^q over the retained eigenvalues; recorded in the
/// report's q_sums map as well.
double q_sum(EigenReport& report, const BandSet& e, double q);

/// Bulk path: locates only the eigenvalues outside the margin-enlarged band
/// set via Sturm counts at the region boundaries, then drops eigenvalues
/// whose inverse-iteration eigenvector concentrates its mass in the trailing
/// `boundary_fraction` of indices (truncation-edge artifacts).
struct OutsideEigsResult {
  std::vector<double> kept;
  std::vector<double> filtered;  // boundary-localized, discarded
};
OutsideEigsResult outside_eigenvalues(const JacobiParams& params, long long n,
                                      const BandSet& e, double margin,
                                      double eig_tol = 1e-12,
                                      double boundary_fraction = 0.05,
                                      double boundary_mass_threshold = 0.5);

/// Rayleigh-quotient data for the trial vector glued from the two band-edge
/// solutions over the index block [(8m)^2 - m, (8m)^2 + m].  `bound` is the
/// perturbative component <phi, (J - Jbase) phi> / |phi|^2, the quantity with
/// the m^{-2 alpha} lower bound; `rayleigh` adds the base-edge term (which
/// behaves like -1/m^2 and dominates at desk-scale m).
struct VariationalReport {
  int m = 0;
  long long block_lo = 0, block_hi = 0;
  double norm2 = 0.0;        // |phi|^2 (grows like m)
  double pert_term = 0.0;    // <phi, (J - Jbase) phi>
  double base_term = 0.0;    // <phi, (Jbase - E) phi> (magnitude O(1/m))
  double bound = 0.0;        // pert_term / norm2
  double rayleigh = 0.0;     // (pert_term + base_term) / norm2
};
VariationalReport variational_bound(const PeriodicJacobi& base, const Perturbation& pert,
                                    int m);
VariationalReport variational_bound(const PeriodicJacobi& base, const BandEdgeSolutions& edge,
                                    const Perturbation& pert, int m);

}  // namespace fgj
