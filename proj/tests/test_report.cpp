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
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "fgj/lab.hpp"

using namespace fgj;

TEST_CASE("complex round trip") {
  CHECK(format_complex(cdouble{0.0, 1.0}) == "0+1i");
  CHECK(format_complex(cdouble{0.4, -0.3}) == "0.4-0.3i");
  CHECK(parse_complex("0+1i") == cdouble{0.0, 1.0});
  CHECK(parse_complex("1.5") == cdouble{1.5, 0.0});
  CHECK(parse_complex("-2i") == cdouble{0.0, -2.0});
  CHECK(parse_complex("0.3-2i") == cdouble{0.3, -2.0});
  for (cdouble z : {cdouble{0.0, 0.0}, cdouble{-1.25, 3e-7}, cdouble{1e17, -2.5}}) {
    CHECK(parse_complex(format_complex(z)) == z);
  }
  CHECK_THROWS_AS(parse_complex("pear"), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("1+2j"), std::invalid_argument);
}

TEST_CASE("config parsing, typed getters, precedence") {
  Config cfg;
  cfg.set("alpha", "0.8");
  cfg.set("n", "1000000");
  cfg.set("x", "0+1i,1+1i");
  cfg.set("intervals", "-2:2,3:4.5");
  CHECK(cfg.get_double("alpha", 0.0) == 0.8);
  CHECK(cfg.get_int("n", 0) == 1000000);
  CHECK(cfg.get_complexes("x").size() == 2);
  CHECK(cfg.get_intervals("intervals")[1].second == 4.5);
  CHECK(cfg.get_double("missing", 7.5) == 7.5);
  cfg.set("bad", "zzz");
  CHECK_THROWS_WITH_AS(cfg.get_double("bad", 0.0), doctest::Contains("bad"),
                       std::invalid_argument);

  Config overlay;
  overlay.set("alpha", "0.9");
  cfg.merge(overlay);
  CHECK(cfg.get_double("alpha", 0.0) == 0.9);
}

TEST_CASE("config files: comments, spaces, malformed lines") {
  std::string path = "test_config_tmp.txt";
  {
    std::ofstream out(path);
    out << "# comment line\n"
        << "alpha = 0.8\n"
        << "\n"
        << "family=example2   # trailing comment\n";
  }
  Config cfg = load_config_file(path);
  CHECK(cfg.get_double("alpha", 0.0) == 0.8);
  CHECK(cfg.get_string("family", "") == "example2");
  {
    std::ofstream out(path);
    out << "no equals sign here\n";
  }
  CHECK_THROWS_AS(load_config_file(path), std::invalid_argument);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config_file("does_not_exist_anywhere.cfg"), std::invalid_argument);
}

TEST_CASE("summaries embed the resolved config and render deterministically") {
  Config cfg;
  cfg.set("family", "example2");
  cfg.set("alpha", "0.8");
  Report rep;
  rep.note("limit", format_complex(cdouble{1.25, -0.5}));
  rep.check("sanity", true);
  std::string once = render_summary(rep, cfg);
  CHECK(once.find("config.family=example2") != std::string::npos);
  CHECK(once.find("limit=1.25-0.5i") != std::string::npos);
  CHECK(once.find("all_checks=pass") != std::string::npos);
  CHECK(render_summary(rep, cfg) == once);

  Table t;
  t.name = "series";
  t.header = {"n", "value"};
  t.add_row({"1", format_double(0.1)});
  t.add_row({"2", format_double(0.25)});
  std::string csv = render_csv(t);
  CHECK(csv == "n,value\n1,0.1\n2,0.25\n");
}

TEST_CASE("identical runs produce byte-identical tables") {
  Config cfg;
  cfg.set("family", "example1");
  cfg.set("alpha", "0.8");
  cfg.set("omega", "0.41421356237309515");
  cfg.set("x", "0+1i");
  cfg.set("n", "20000");
  cfg.set("stride", "100");
  cfg.set("prefix", "2000");
  lab::LabResult a = lab::run_ratio(cfg);
  lab::LabResult b = lab::run_ratio(cfg);
  REQUIRE(a.report.tables.size() == b.report.tables.size());
  for (size_t i = 0; i < a.report.tables.size(); ++i)
    CHECK(render_csv(a.report.tables[i]) == render_csv(b.report.tables[i]));
  CHECK(render_summary(a.report, a.config) == render_summary(b.report, b.config));
}

TEST_CASE("lab wiring for bands and equilibrium") {
  Config cfg;
  cfg.set("intervals", "-2:2");
  cfg.set("x", "3,0");
  lab::LabResult bands = lab::run_bands(cfg);
  REQUIRE(bands.report.tables.size() == 1);
  CHECK(bands.report.tables[0].rows[0][1] == "1");
  CHECK(bands.report.tables[0].rows[1][1] == "0");

  Config eq_cfg;
  eq_cfg.set("intervals", "-2:2");
  eq_cfg.set("x", "3,4");  // Green's function wants points off the bands
  lab::LabResult eq = lab::run_equilibrium(eq_cfg);
  CHECK(eq.report.passed);

  Config bad;
  bad.set("intervals", "-2:2,2:3");
  CHECK_THROWS_AS(lab::run_bands(bad), std::invalid_argument);
  CHECK_THROWS_AS(lab::run_subcommand("nonsense", cfg), std::invalid_argument);
}

TEST_CASE("preset names resolve") {
  for (const std::string& name : lab::preset_names()) CHECK_FALSE(name.empty());
  CHECK_THROWS_AS(lab::run_preset("nonsense", Config{}), std::invalid_argument);
}
