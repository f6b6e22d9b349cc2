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

#include "fgj/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fgj {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  double back = std::strtod(buf, nullptr);
  if (back == v) {
    // Prefer the shortest representation that round-trips.
    for (int prec = 1; prec <= 16; ++prec) {
      char shorter[40];
      std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
      if (std::strtod(shorter, nullptr) == v) return shorter;
    }
  }
  return buf;
}

std::string format_complex(cdouble z) {
  std::string re = format_double(z.real());
  std::string im = format_double(std::abs(z.imag()));
  return re + (z.imag() < 0.0 ? "-" : "+") + im + "i";
}

cdouble parse_complex(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_complex: empty string");
  const char* p = s.c_str();
  char* end = nullptr;
  double first = std::strtod(p, &end);
  if (end == p) throw std::invalid_argument("parse_complex: cannot parse '" + s + "'");
  while (*end == ' ') ++end;
  if (*end == '\0') return {first, 0.0};
  if (*end == 'i') {
    if (*(end + 1) != '\0') throw std::invalid_argument("parse_complex: trailing junk in '" + s + "'");
    return {0.0, first};
  }
  if (*end != '+' && *end != '-')
    throw std::invalid_argument("parse_complex: expected sign in '" + s + "'");
  const char* q = end;
  char* end2 = nullptr;
  double second = std::strtod(q, &end2);
  if (end2 == q || *end2 != 'i' || *(end2 + 1) != '\0')
    throw std::invalid_argument("parse_complex: cannot parse imaginary part of '" + s + "'");
  return {first, second};
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double to_double(const std::string& key, const std::string& s) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw std::invalid_argument("config: key '" + key + "' has a malformed number '" + s + "'");
  return v;
}

}  // namespace

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : to_double(key, it->second);
}

long long Config::get_int(const std::string& key, long long fallback) const {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  double v = to_double(key, it->second);
  long long n = static_cast<long long>(v);
  if (static_cast<double>(n) != v)
    throw std::invalid_argument("config: key '" + key + "' expects an integer, got '" + it->second + "'");
  return n;
}

cdouble Config::get_complex(const std::string& key, cdouble fallback) const {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  try {
    return parse_complex(it->second);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("config: key '" + key + "' has a malformed complex value '" + it->second + "'");
  }
}

std::vector<double> Config::get_doubles(const std::string& key) const {
  std::vector<double> out;
  auto it = kv.find(key);
  if (it == kv.end() || it->second.empty()) return out;
  for (const std::string& part : split(it->second, ',')) out.push_back(to_double(key, part));
  return out;
}

std::vector<long long> Config::get_ints(const std::string& key) const {
  std::vector<long long> out;
  for (double v : get_doubles(key)) {
    long long n = static_cast<long long>(v);
    if (static_cast<double>(n) != v)
      throw std::invalid_argument("config: key '" + key + "' expects integers");
    out.push_back(n);
  }
  return out;
}

std::vector<cdouble> Config::get_complexes(const std::string& key) const {
  std::vector<cdouble> out;
  auto it = kv.find(key);
  if (it == kv.end() || it->second.empty()) return out;
  for (const std::string& part : split(it->second, ',')) {
    try {
      out.push_back(parse_complex(part));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("config: key '" + key + "' has a malformed complex value '" + part + "'");
    }
  }
  return out;
}

std::vector<std::pair<double, double>> Config::get_intervals(const std::string& key) const {
  std::vector<std::pair<double, double>> out;
  auto it = kv.find(key);
  if (it == kv.end() || it->second.empty()) return out;
  for (const std::string& part : split(it->second, ',')) {
    auto ends = split(part, ':');
    if (ends.size() != 2)
      throw std::invalid_argument("config: key '" + key + "' expects a:b interval pairs");
    out.emplace_back(to_double(key, ends[0]), to_double(key, ends[1]));
  }
  return out;
}

void Config::merge(const Config& other) {
  for (const auto& [k, v] : other.kv) kv[k] = v;
}

std::string Config::resolved() const {
  std::ostringstream os;
  for (const auto& [k, v] : kv) os << "config." << k << "=" << v << "\n";
  return os.str();
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  Config cfg;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    size_t last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    size_t vs = val.find_first_not_of(" \t");
    val = vs == std::string::npos ? "" : val.substr(vs);
    cfg.set(key, val);
  }
  return cfg;
}

std::string render_summary(const Report& report, const Config& config) {
  std::ostringstream os;
  os << config.resolved();
  for (const auto& [k, v] : report.records) os << k << "=" << v << "\n";
  if (report.has_checks) os << "all_checks=" << (report.passed ? "pass" : "FAIL") << "\n";
  return os.str();
}

std::string render_csv(const Table& table) {
  std::ostringstream os;
  for (size_t i = 0; i < table.header.size(); ++i)
    os << table.header[i] << (i + 1 < table.header.size() ? "," : "");
  os << "\n";
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) os << row[i] << (i + 1 < row.size() ? "," : "");
    os << "\n";
  }
  return os.str();
}

void write_report(const Report& report, const Config& config, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream out(out_dir + "/summary.txt", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_dir + "/summary.txt");
    out << render_summary(report, config);
  }
  for (const Table& t : report.tables) {
    std::ofstream out(out_dir + "/" + t.name + ".csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_dir + "/" + t.name + ".csv");
    out << render_csv(t);
  }
}

}  // namespace fgj
