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
#include <string>
#include <vector>

#include "fgj/numerics.hpp"

namespace fgj {

/// Complex values travel as "re+imi" / "re-imi" (e.g. "0+1i", "0.4-0.3i").
std::string format_complex(cdouble z);
cdouble parse_complex(const std::string& s);

std::string format_double(double v);  // shortest round-trippable, locale-free

/// Key=value experiment configuration; later sources override earlier ones.
struct Config {
  std::map<std::string, std::string> kv;

  bool has(const std::string& key) const { return kv.count(key) != 0; }
  void set(const std::string& key, const std::string& value) { kv[key] = value; }
  /// Typed getters throw std::invalid_argument naming the key on bad values.
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  cdouble get_complex(const std::string& key, cdouble fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;            // comma list
  std::vector<long long> get_ints(const std::string& key) const;            // comma list
  std::vector<cdouble> get_complexes(const std::string& key) const;         // comma list
  std::vector<std::pair<double, double>> get_intervals(const std::string& key) const;  // a:b,c:d

  /// Merges `other` on top of this one.
  void merge(const Config& other);
  /// Canonical sorted key=value lines.
  std::string resolved() const;
};

/// Loads key=value lines ('#' comments, blank lines ignored).
Config load_config_file(const std::string& path);

struct Table {
  std::string name;                   // file stem, written as <name>.csv
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

/// One experiment's output: summary records plus CSV tables; `passed` is the
/// conjunction of every declared check the experiment ran.
struct Report {
  std::vector<std::pair<std::string, std::string>> records;
  std::vector<Table> tables;
  bool passed = true;
  bool has_checks = false;

  void note(const std::string& key, const std::string& value) { records.emplace_back(key, value); }
  void note(const std::string& key, double value) { records.emplace_back(key, format_double(value)); }
  void check(const std::string& key, bool ok) {
    has_checks = true;
    passed = passed && ok;
    records.emplace_back(key, ok ? "pass" : "FAIL");
  }
};

/// Writes summary.txt (resolved config first, then the records) and one CSV
/// per table into the directory, creating it if needed.
void write_report(const Report& report, const Config& config, const std::string& out_dir);

/// In-memory renderings (used by the writers and by determinism tests).
std::string render_summary(const Report& report, const Config& config);
std::string render_csv(const Table& table);

}  // namespace fgj
