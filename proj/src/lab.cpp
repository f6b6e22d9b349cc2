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

#include "fgj/lab.hpp"

#include <algorithm>
#include <sstream>

namespace fgj::lab {

namespace {

std::string join_k(const std::vector<int>& k) {
  std::string s;
  for (size_t i = 0; i < k.size(); ++i) s += (i ? ":" : "") + std::to_string(k[i]);
  return s.empty() ? "0" : s;
}

std::vector<long long> checkpoints_from(const Config& cfg) {
  auto cps = cfg.get_ints("checkpoints");
  return cps.empty() ? default_checkpoints() : cps;
}

// Trailing-window oscillation (max - min of |r| and of arg r over (n/2, n])
// attached to each recorded sample.
std::vector<double> rolling_osc(const std::vector<RatioSample>& samples) {
  std::vector<double> osc(samples.size(), 0.0);
  size_t left = 0;
  for (size_t i = 0; i < samples.size(); ++i) {
    while (samples[left].n * 2 <= samples[i].n) ++left;
    double alo = std::abs(samples[left].r), ahi = alo;
    double glo = 0.0, ghi = 0.0;
    for (size_t j = left; j <= i; ++j) {
      double a = std::abs(samples[j].r);
      alo = std::min(alo, a);
      ahi = std::max(ahi, a);
      double g = std::arg(samples[j].r / samples[left].r);
      glo = std::min(glo, g);
      ghi = std::max(ghi, g);
    }
    osc[i] = std::max(ahi - alo, ghi - glo);
  }
  return osc;
}

}  // namespace

PeriodicJacobi base_from_config(const Config& cfg) {
  auto a = cfg.get_doubles("a");
  auto b = cfg.get_doubles("b");
  if (a.empty() && b.empty()) return free_jacobi();
  if (b.empty()) b.assign(a.size(), 0.0);
  long long p = cfg.get_int("p", static_cast<long long>(a.size()));
  if (p != static_cast<long long>(a.size()))
    throw std::invalid_argument("config: p disagrees with the length of a");
  return make_periodic(a, b);
}

Perturbation perturbation_from_config(const Config& cfg) {
  std::string family = cfg.get_string("family", "zero");
  double alpha = cfg.get_double("alpha", 0.0);
  double omega = cfg.get_double("omega", 0.0);
  if (family == "zero") return make_perturbation(Perturbation::Family::zero);
  if (family == "example1") return make_perturbation(Perturbation::Family::example1, alpha, omega);
  if (family == "example2") return make_perturbation(Perturbation::Family::example2, alpha);
  if (family == "l1_decay") return make_perturbation(Perturbation::Family::l1_decay, alpha);
  throw std::invalid_argument("config: unknown family '" + family + "'");
}

LabResult run_bands(const Config& cfg) {
  LabResult res;
  res.config = cfg;
  BandSet e = make_band_set(cfg.get_intervals("intervals"));
  res.report.note("num_bands", static_cast<double>(e.bands.size()));
  res.report.note("num_gaps", static_cast<double>(e.gaps()));
  for (size_t j = 0; j < e.bands.size(); ++j) {
    res.report.note("band_" + std::to_string(j),
                    format_double(e.bands[j].first) + ":" + format_double(e.bands[j].second));
  }
  auto xs = cfg.get_doubles("x");
  if (!xs.empty()) {
    Table t;
    t.name = "dist";
    t.header = {"x", "dist"};
    for (double x : xs) t.add_row({format_double(x), format_double(dist_to_bands(x, e))});
    res.report.tables.push_back(std::move(t));
  }
  return res;
}

LabResult run_equilibrium(const Config& cfg) {
  LabResult res;
  res.config = cfg;
  BandSet e = make_band_set(cfg.get_intervals("intervals"));
  EquilibriumMeasure m = equilibrium_measure(e, cfg.get_double("quad_tol", 1e-10));
  res.report.note("capacity", m.capacity);
  res.report.note("mass_residual", m.mass_residual);
  res.report.note("max_gap_residual", m.max_gap_residual);
  for (size_t j = 0; j < m.gap_roots.size(); ++j)
    res.report.note("gap_root_" + std::to_string(j + 1), m.gap_roots[j]);
  for (size_t j = 0; j < m.harmonic_measures.size(); ++j)
    res.report.note("omega_" + std::to_string(j + 1), m.harmonic_measures[j]);
  res.report.check("mass_within_tol", m.mass_residual <= m.quad_tol);
  res.report.check("gap_residuals_within_tol", m.max_gap_residual <= m.quad_tol);
  auto xs = cfg.get_doubles("x");
  if (!xs.empty()) {
    Table t;
    t.name = "green";
    t.header = {"x", "green"};
    for (double x : xs) t.add_row({format_double(x), format_double(green_function(m, x))});
    res.report.tables.push_back(std::move(t));
  }
  return res;
}

LabResult run_torus(const Config& cfg) {
  LabResult res;
  res.config = cfg;
  PeriodicJacobi base = base_from_config(cfg);
  double root_tol = cfg.get_double("root_tol", 1e-12);
  BandSet e = bands_of_periodic(base, root_tol);
  res.report.note("num_bands", static_cast<double>(e.bands.size()));
  for (size_t j = 0; j < e.bands.size(); ++j)
    res.report.note("band_" + std::to_string(j),
                    format_double(e.bands[j].first) + ":" + format_double(e.bands[j].second));
  auto rationals = periodic_harmonic_measures(base, root_tol);
  for (size_t j = 0; j < rationals.size(); ++j)
    res.report.note("omega_" + std::to_string(j + 1),
                    std::to_string(rationals[j].num) + "/" + std::to_string(rationals[j].den));

  double cross_tol = cfg.get_double("cross_tol", 1e-8);
  if (e.gaps() > 0) {
    EquilibriumMeasure m = equilibrium_measure(e, cfg.get_double("quad_tol", 1e-10));
    double worst = 0.0;
    for (size_t j = 0; j < rationals.size(); ++j)
      worst = std::max(worst, std::abs(m.harmonic_measures[j] - rationals[j].value()));
    res.report.note("harmonic_measure_mismatch", worst);
    res.report.check("rational_rule_matches_quadrature", worst <= cross_tol);
  }

  BandEdgeSolutions edge = band_edge_solutions(base, e.upper(), root_tol);
  res.report.note("edge_energy", edge.energy);
  res.report.note("kappa", edge.kappa);
  res.report.note("u_upper", edge.u_upper);
  res.report.note("remainder_bound", edge.remainder_bound);
  // Wronskian constancy over a sample of indices.
  double w0 = base.a_at(0) * (edge.u(0) * edge.v(1) - edge.u(1) * edge.v(0));
  double worst_w = 0.0;
  for (long long n = 1; n <= 10000; n = std::max(n + 1, n + n / 8)) {
    double wn = base.a_at(n) * (edge.u(n) * edge.v(n + 1) - edge.u(n + 1) * edge.v(n));
    worst_w = std::max(worst_w, std::abs(wn - w0) / std::max(1.0, std::abs(w0)));
  }
  res.report.note("wronskian_residual", worst_w);
  res.report.check("wronskian_constant", worst_w <= 1e-10);

  Table t;
  t.name = "edge_solutions";
  t.header = {"n", "u", "v"};
  for (long long n = 0; n <= 4 * base.period(); ++n)
    t.add_row({std::to_string(n), format_double(edge.u(n)), format_double(edge.v(n))});
  res.report.tables.push_back(std::move(t));
  return res;
}

LabResult run_ratio(const Config& cfg) {
  LabResult res;
  res.config = cfg;
  JacobiParams params{base_from_config(cfg), perturbation_from_config(cfg)};
  long long n = cfg.get_int("n", 1000000);
  long long stride = cfg.get_int("stride", 100);
  int windows = static_cast<int>(cfg.get_int("windows", 6));
  double tol = cfg.get_double("tol", 1e-3);
  long long prefix = cfg.get_int("prefix", n / 100);
  auto xs = cfg.get_complexes("x");
  if (xs.empty()) xs = {cdouble{0.0, 1.0}};

  for (size_t xi = 0; xi < xs.size(); ++xi) {
    RatioTrace trace = ratio_trace(params, xs[xi], n, stride);
    SzegoVerdict full = detect_szego_limit(trace, windows, tol);
    const std::string tag = "x" + std::to_string(xi);
    res.report.note(tag + "_x", format_complex(xs[xi]));
    res.report.note(tag + "_verdict", to_string(full.verdict));
    res.report.note(tag + "_limit", format_complex(full.limit));
    res.report.note(tag + "_final_osc", full.window_osc.empty() ? 0.0 : full.window_osc.back());
    res.report.note(tag + "_decay_exponent", full.decay_exponent);

    if (prefix >= 8) {
      RatioTrace head;
      head.x = trace.x;
      for (const auto& s : trace.samples)
        if (s.n <= prefix) head.samples.push_back(s);
      SzegoVerdict early = detect_szego_limit(head, 3, tol);
      if (!early.window_osc.empty() && !full.window_osc.empty()) {
        double ratio = early.window_osc.back() / std::max(full.window_osc.back(), 1e-300);
        res.report.note(tag + "_osc_shrink_factor", ratio);
        if (cfg.has("min_shrink"))
          res.report.check(tag + "_osc_shrink", ratio >= cfg.get_double("min_shrink", 3.0));
      }
    }
    if (cfg.has("expect_verdict"))
      res.report.check(tag + "_expected_verdict",
                       cfg.get_string("expect_verdict", "") == to_string(full.verdict));
    if (cfg.has("min_decay_exponent"))
      res.report.check(tag + "_decay_exponent_floor",
                       full.decay_exponent > cfg.get_double("min_decay_exponent", 0.2));

    Table t;
    t.name = "ratio_" + tag;
    t.header = {"n", "re_r", "im_r", "abs_r", "osc_window"};
    auto osc = rolling_osc(trace.samples);
    for (size_t i = 0; i < trace.samples.size(); ++i) {
      const auto& s = trace.samples[i];
      t.add_row({std::to_string(s.n), format_double(s.r.real()), format_double(s.r.imag()),
                 format_double(std::abs(s.r)), format_double(osc[i])});
    }
    res.report.tables.push_back(std::move(t));
  }
  return res;
}

LabResult run_sums(const Config& cfg) {
  LabResult res;
  res.config = cfg;
  Perturbation pert = perturbation_from_config(cfg);
  PeriodicJacobi base = base_from_config(cfg);
  auto checkpoints = checkpoints_from(cfg);
  double tail_tol = cfg.get_double("tail_tol", 5e-3);
  int kmax = static_cast<int>(cfg.get_int("kmax", 3));

  SequenceNorms norms = sequence_norms(pert, checkpoints.back());
  res.report.note("l1_sum", norms.l1_sum);
  res.report.note("l2_sum", norms.l2_sum);
  if (norms.l1_fit.ok) res.report.note("l1_growth_exponent", norms.l1_fit.slope);
  if (norms.l2_fit.ok) res.report.note("l2_growth_exponent", norms.l2_fit.slope);

  std::vector<double> omegas;
  BandSet e = bands_of_periodic(base);
  if (e.gaps() > 0) {
    EquilibriumMeasure m = equilibrium_measure(e, cfg.get_double("quad_tol", 1e-10));
    omegas = m.harmonic_measures;
  }

  auto entries = check_condition_b(pert, omegas, kmax, checkpoints, tail_tol);
  Table tb;
  tb.name = "condition_b";
  tb.header = {"k", "x", "verdict_a", "verdict_b", "abs_S_a", "abs_S_b", "tail_b", "resonant"};
  bool all_b = true;
  for (const auto& entry : entries) {
    all_b = all_b && entry.verdict_a == SumVerdict::converged &&
            entry.verdict_b == SumVerdict::converged;
    tb.add_row({join_k(entry.k), format_double(entry.x), to_string(entry.verdict_a),
                to_string(entry.verdict_b), format_double(std::abs(entry.sum_a)),
                format_double(std::abs(entry.sum_b)), format_double(entry.tail_b),
                entry.resonant ? "yes" : "no"});
  }
  res.report.tables.push_back(std::move(tb));
  if (cfg.get_string("expect_b", "") == "converged") res.report.check("condition_b_converged", all_b);

  long long n_c = cfg.get_int("n_c", checkpoints.back());
  int kmax_c = static_cast<int>(cfg.get_int("kmax_c", kmax));
  auto creport = check_condition_c(pert, omegas, std::max(1, kmax_c), n_c);
  Table tc;
  tc.name = "condition_c";
  tc.header = {"k", "sup_abs_S", "N"};
  for (const auto& entry : creport.entries)
    tc.add_row({join_k(entry.k), format_double(entry.sup_abs), std::to_string(n_c)});
  res.report.tables.push_back(std::move(tc));
  if (creport.log_sup_vs_knorm.ok) {
    res.report.note("condition_c_slope", creport.log_sup_vs_knorm.slope);
    res.report.note("condition_c_slope_stderr", creport.log_sup_vs_knorm.slope_stderr);
    if (cfg.has("max_c_slope"))
      res.report.check("condition_c_bounded",
                       creport.log_sup_vs_knorm.slope <= cfg.get_double("max_c_slope", 0.1));
  }

  long long block_period = cfg.get_int("block_period", base.period());
  auto blocks = periodic_block_sums(pert, static_cast<int>(block_period), checkpoints, tail_tol);
  Table tr;
  tr.name = "block_sums";
  tr.header = {"residue", "sum_a", "sum_b", "verdict_a", "verdict_b"};
  for (const auto& entry : blocks.entries)
    tr.add_row({std::to_string(entry.residue), format_double(entry.sum_a),
                format_double(entry.sum_b), to_string(entry.verdict_a), to_string(entry.verdict_b)});
  res.report.tables.push_back(std::move(tr));
  res.report.note("block_dft_residual", blocks.dft_residual);
  res.report.check("block_dft_identity", blocks.dft_residual <= 1e-9);
  return res;
}

namespace {

void run_coffman_assembly(const Config& cfg, LabResult& res) {
  Perturbation pert = perturbation_from_config(cfg);
  cdouble z = cfg.get_complex("z", cdouble{0.0, 0.5});
  long long n = cfg.get_int("n", 1000000);
  auto checkpoints = checkpoints_from(cfg);
  if (checkpoints.back() > n) checkpoints.back() = n;
  double tail_tol = cfg.get_double("tail_tol", 5e-3);

  FreeCaseAssembly asmb = assemble_free_case(pert, z, n);
  res.report.note("x_of_z", format_complex(asmb.x));
  double detres = asmb.det_residual(std::min<long long>(n, 100000));
  res.report.note("det_residual", detres);
  res.report.check("det_constant", detres <= 1e-10);

  DiagonalSumReport diag = diagonal_sum_check(asmb, checkpoints, tail_tol);
  res.report.note("diag11_tail", diag.tail11);
  res.report.note("diag22_tail", diag.tail22);
  res.report.note("identity_residual", diag.identity_residual);
  res.report.note("a2_sum", diag.a2_partial.back().second);
  res.report.note("a2_tail", diag.a2_tail);
  res.report.check("diag_sums_cauchy", diag.verdict11 == SumVerdict::converged &&
                                           diag.verdict22 == SumVerdict::converged);
  res.report.check("diagonal_identity", diag.identity_residual <= 1e-12);

  PhiPsiReport pp = phi_psi_limit_check(asmb, n);
  res.report.note("c1", format_complex(pp.c1));
  res.report.note("ratio_limit", format_complex(pp.ratio_limit));
  res.report.note("second_component_final", pp.second_final);
  res.report.note("reconstruction_residual", pp.reconstruction_residual);
  res.report.check("reconstruction_matches", pp.reconstruction_residual <= 1e-8);
  double agree = std::abs(pp.c1 - pp.ratio_limit);
  res.report.note("c1_vs_ratio_limit", agree);
  if (cfg.has("agree_tol"))
    res.report.check("c1_matches_ratio", agree <= cfg.get_double("agree_tol", 1e-3));

  Table t;
  t.name = "second_component";
  t.header = {"n", "abs_scaled_second"};
  for (const auto& [m, v] : pp.second_decay) t.add_row({std::to_string(m), format_double(v)});
  res.report.tables.push_back(std::move(t));
}

void run_coffman_random(const Config& cfg, LabResult& res) {
  const long long seed = cfg.get_int("seed", 20260808);
  const int count = static_cast<int>(cfg.get_int("count", 20));
  const long long n = cfg.get_int("n", 10000);
  const double amplitude = cfg.get_double("amplitude", 0.01);
  const double res_tol = cfg.get_double("res_tol", 1e-6);

  Table t;
  t.name = "random_systems";
  t.header = {"system", "d", "profile_target_res", "profile_cross_res", "classify_j",
              "classify_c_err"};
  double worst_target = 0.0, worst_cross = 0.0, worst_c = 0.0;
  bool all_j = true;
  for (int s = 0; s < count; ++s) {
    std::mt19937_64 rng(static_cast<unsigned long long>(seed) + s);
    const int d = 2 + (s % 2);
    std::vector<cdouble> lambda(d);
    double mod = 2.4;
    for (int i = 0; i < d; ++i) {
      double ang = 2.0 * kPi * uniform01(rng);
      lambda[i] = mod * cdouble{std::cos(ang), std::sin(ang)};
      mod *= 0.45;
    }
    const bool diagonal_only = s % 2 == 1;  // exact product oracle available
    std::vector<double> coeff(d * d);
    for (double& c : coeff) c = 2.0 * uniform01(rng) - 1.0;
    auto sys = make_coffman(lambda, [d, amplitude, coeff, diagonal_only](long long m, cdouble* out) {
      double decay = amplitude * std::pow(static_cast<double>(m), -1.2);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          out[r * d + c] = (diagonal_only && r != c) ? cdouble{0.0, 0.0}
                                                     : cdouble{coeff[r * d + c] * decay, 0.0};
    });

    ProfileResult prof = find_profile_solution(sys, 0, n);
    worst_target = std::max(worst_target, prof.target_residual.back());
    worst_cross = std::max(worst_cross, prof.cross_residual.back());

    // Classification of the dominant profile against the diagonal product.
    ClassifyResult cls = classify_solution(sys, prof.y1, n, {n / 8, n / 4, n / 2, n});
    all_j = all_j && !cls.refused && cls.j == 0;
    // Oracle: gamma_0(n)/lambda_0^n, averaged exactly as classify averages.
    std::vector<long long> marks;
    for (int k = 0; k <= 32; ++k) {
      long long mn = n / 2 + (n - n / 2) * k / 32;
      if (marks.empty() || mn > marks.back()) marks.push_back(mn);
    }
    KahanSum<cdouble> oracle_mean;
    for (long long mn : marks) {
      LogComplex g = gamma_product(sys, 0, mn);
      double lr = g.log_abs - mn * std::log(std::abs(lambda[0]));
      double ang = std::arg(lambda[0]) * static_cast<double>(mn) / (2.0 * kPi);
      double th = 2.0 * kPi * frac01(ang);
      oracle_mean.add(g.phase * std::conj(cdouble{std::cos(th), std::sin(th)}) * std::exp(lr));
    }
    cdouble oracle = oracle_mean.value() / static_cast<double>(marks.size());
    double c_err = std::abs(cls.c - oracle);
    worst_c = std::max(worst_c, c_err);
    t.add_row({std::to_string(s), std::to_string(d), format_double(prof.target_residual.back()),
               format_double(prof.cross_residual.back()), std::to_string(cls.j),
               format_double(c_err)});
  }
  res.report.tables.push_back(std::move(t));
  res.report.note("worst_profile_target_residual", worst_target);
  res.report.note("worst_profile_cross_residual", worst_cross);
  res.report.note("worst_classify_c_error", worst_c);
  res.report.check("profile_residuals", worst_target <= res_tol && worst_cross <= res_tol);
  res.report.check("classify_matches_oracle", all_j && worst_c <= res_tol);
}

}  // namespace

LabResult run_coffman(const Config& cfg) {
  LabResult res;
  res.config = cfg;
  std::string mode = cfg.get_string("mode", "assembly");
  if (mode == "assembly")
    run_coffman_assembly(cfg, res);
  else if (mode == "random")
    run_coffman_random(cfg, res);
  else
    throw std::invalid_argument("config: coffman mode must be 'assembly' or 'random'");
  return res;
}

LabResult run_eigs(const Config& cfg) {
  LabResult res;
  res.config = cfg;
  JacobiParams params{base_from_config(cfg), perturbation_from_config(cfg)};
  BandSet e = bands_of_periodic(params.base);
  auto n_list = cfg.get_ints("n_list");
  if (n_list.empty()) n_list = {8000, 32000, 128000, 512000};
  double margin = cfg.get_double("margin", 1e-4);
  double eig_tol = cfg.get_double("eig_tol", 1e-12);
  auto q_list = cfg.get_doubles("q_list");
  if (q_list.empty()) q_list = {0.5, 0.25};

  Table t;
  t.name = "qsum_sweep";
  t.header = {"N", "num_outside"};
  for (double q : q_list) t.header.push_back("qsum_" + format_double(q));
  std::vector<std::vector<double>> sums(q_list.size());
  for (long long n : n_list) {
    OutsideEigsResult outside = outside_eigenvalues(params, n, e, margin, eig_tol);
    EigenReport rep;
    rep.truncation_size = n;
    rep.margin = margin;
    rep.outside = outside.kept;
    std::vector<std::string> row{std::to_string(n), std::to_string(outside.kept.size())};
    for (size_t qi = 0; qi < q_list.size(); ++qi) {
      double v = q_sum(rep, e, q_list[qi]);
      row.push_back(format_double(v));
      sums[qi].push_back(v);
    }
    t.add_row(std::move(row));
  }
  res.report.tables.push_back(std::move(t));
  bool nondecreasing = true;
  for (size_t i = 1; i < sums[0].size(); ++i)
    if (sums[0][i] < sums[0][i - 1] * (1.0 - 1e-12)) nondecreasing = false;
  for (size_t qi = 0; qi < q_list.size(); ++qi) {
    res.report.note("qsum_" + format_double(q_list[qi]) + "_first", sums[qi].front());
    res.report.note("qsum_" + format_double(q_list[qi]) + "_last", sums[qi].back());
  }
  std::string trend = cfg.get_string("trend_check", "");
  if (trend == "grow") {
    double factor = cfg.get_double("grow_factor", 2.0);
    res.report.check("qsum_nondecreasing", nondecreasing);
    res.report.check("qsum_growth_factor", sums[0].back() >= factor * sums[0].front());
  } else if (trend == "stable" && sums[0].size() >= 2) {
    double rel = cfg.get_double("stable_rel", 0.05);
    double drift = std::abs(sums[0].back() - sums[0][sums[0].size() - 2]);
    res.report.check("qsum_stable", drift <= rel * std::max(1e-300, sums[0].back()));
  }
  return res;
}

LabResult run_variational(const Config& cfg) {
  LabResult res;
  res.config = cfg;
  PeriodicJacobi base = base_from_config(cfg);
  Perturbation pert = perturbation_from_config(cfg);
  auto m_list = cfg.get_ints("m_list");
  if (m_list.empty())
    for (long long m = 4; m <= 32; ++m) m_list.push_back(m);

  BandSet e = bands_of_periodic(base);
  BandEdgeSolutions edge = band_edge_solutions(base, e.upper());

  Table t;
  t.name = "variational";
  t.header = {"m", "norm2", "pert_term", "base_term", "bound", "rayleigh"};
  std::vector<double> lx, ly;
  long long first_positive = -1;
  for (long long m : m_list) {
    VariationalReport rep = variational_bound(base, edge, pert, static_cast<int>(m));
    t.add_row({std::to_string(m), format_double(rep.norm2), format_double(rep.pert_term),
               format_double(rep.base_term), format_double(rep.bound),
               format_double(rep.rayleigh)});
    if (rep.bound > 0.0) {
      if (first_positive < 0) first_positive = m;
      lx.push_back(std::log(static_cast<double>(m)));
      ly.push_back(std::log(rep.bound));
    }
  }
  res.report.tables.push_back(std::move(t));
  LineFit fit = fit_line(lx, ly);
  if (fit.ok) {
    res.report.note("bound_slope", fit.slope);
    res.report.note("bound_slope_stderr", fit.slope_stderr);
  }
  res.report.note("first_positive_m",
                  static_cast<double>(first_positive < 0 ? -1 : first_positive));
  if (cfg.has("max_first_positive_m"))
    res.report.check("bound_positive_early",
                     first_positive > 0 && first_positive <= cfg.get_int("max_first_positive_m", 8));
  if (cfg.has("slope_target")) {
    double target = cfg.get_double("slope_target", -1.6);
    double window = cfg.get_double("slope_window", 0.3);
    res.report.check("bound_slope_matches", fit.ok && std::abs(fit.slope - target) <= window);
  }
  return res;
}

LabResult run_free_closed_form(const Config& cfg) {
  LabResult res;
  res.config = cfg;
  JacobiParams free_params{free_jacobi(), make_perturbation(Perturbation::Family::zero)};
  auto xs = cfg.get_complexes("x");
  if (xs.empty()) xs = {cdouble{2.5, 0.0}, cdouble{0.0, 1.0}, cdouble{1.0, 1.0}, cdouble{0.3, -2.0}};
  long long n_max = cfg.get_int("n", 100);
  double worst = 0.0;
  for (cdouble x : xs) {
    cdouble p_prev{0.0, 0.0}, p_curr{1.0, 0.0};
    for (long long n = 1; n <= n_max; ++n) {
      cdouble next = x * p_curr - p_prev;
      p_prev = p_curr;
      p_curr = next;
      cdouble closed = free_closed_form(x, n);
      worst = std::max(worst, std::abs(p_curr - closed) / std::abs(closed));
    }
  }
  res.report.note("max_relative_deviation", worst);
  res.report.check("closed_form_matches", worst <= cfg.get_double("tol", 1e-9));
  return res;
}

LabResult run_subcommand(const std::string& name, const Config& cfg) {
  if (name == "bands") return run_bands(cfg);
  if (name == "equilibrium") return run_equilibrium(cfg);
  if (name == "torus") return run_torus(cfg);
  if (name == "ratio") return run_ratio(cfg);
  if (name == "sums") return run_sums(cfg);
  if (name == "coffman") return run_coffman(cfg);
  if (name == "eigs") return run_eigs(cfg);
  if (name == "variational") return run_variational(cfg);
  if (name == "free-closed-form") return run_free_closed_form(cfg);
  throw std::invalid_argument("unknown subcommand '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"free-closed-form", "example1", "example2", "qsum-trend",
          "qsum-control",    "coffman-assembly", "coffman-random", "variational"};
}

LabResult run_preset(const std::string& name, const Config& overrides) {
  Config cfg;
  std::string sub;
  if (name == "free-closed-form") {
    sub = "free-closed-form";
    cfg.set("n", "100");
    cfg.set("tol", "1e-9");
  } else if (name == "example1") {
    sub = "ratio";
    cfg.set("a", "1,2");
    cfg.set("b", "0,0");
    cfg.set("family", "example1");
    cfg.set("alpha", "0.8");
    cfg.set("omega", "0.41421356237309515");
    cfg.set("x", "0+1i,1+1i");
    cfg.set("n", "1000000");
    cfg.set("prefix", "10000");
    cfg.set("min_shrink", "3");
    cfg.set("min_decay_exponent", "0.2");
    cfg.set("expect_verdict", "converged");
  } else if (name == "example2") {
    sub = "ratio";
    cfg.set("family", "example2");
    cfg.set("alpha", "0.8");
    cfg.set("x", "0+1i,1+1i");
    cfg.set("n", "1000000");
    cfg.set("prefix", "10000");
    cfg.set("min_shrink", "3");
    cfg.set("min_decay_exponent", "0.2");
  } else if (name == "qsum-trend") {
    sub = "eigs";
    cfg.set("family", "example2");
    cfg.set("alpha", "0.8");
    cfg.set("n_list", "8000,32000,128000,512000");
    cfg.set("margin", "1e-6");
    cfg.set("q_list", "0.5,0.25");
    cfg.set("trend_check", "grow");
    cfg.set("grow_factor", "2");
  } else if (name == "qsum-control") {
    sub = "eigs";
    cfg.set("family", "l1_decay");
    cfg.set("alpha", "2");
    cfg.set("n_list", "8000,32000,128000,512000");
    cfg.set("margin", "1e-6");
    cfg.set("q_list", "0.5,0.25");
    cfg.set("trend_check", "stable");
    cfg.set("stable_rel", "0.05");
  } else if (name == "coffman-assembly") {
    sub = "coffman";
    cfg.set("mode", "assembly");
    cfg.set("family", "example2");
    cfg.set("alpha", "0.8");
    cfg.set("z", "0+0.5i");
    cfg.set("n", "1000000");
    cfg.set("agree_tol", "1e-3");
  } else if (name == "coffman-random") {
    sub = "coffman";
    cfg.set("mode", "random");
    cfg.set("seed", "20260808");
    cfg.set("count", "20");
    cfg.set("n", "10000");
    cfg.set("res_tol", "1e-6");
  } else if (name == "variational") {
    sub = "variational";
    cfg.set("family", "example2");
    cfg.set("alpha", "0.8");
    cfg.set("max_first_positive_m", "8");
    cfg.set("slope_target", "-1.6");
    cfg.set("slope_window", "0.3");
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  cfg.merge(overrides);
  cfg.set("preset", name);
  return run_subcommand(sub, cfg);
}

}  // namespace fgj::lab
