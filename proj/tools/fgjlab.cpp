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

// Batch experiment runner: spectral-theory experiments on finite-gap Jacobi
// matrices, emitting a key=value summary and CSV tables per run.
//
//   fgjlab <subcommand> [--config file] [--out dir] [key=value ...]
//   fgjlab preset <name> [--out dir] [key=value ...]
//
// Exit codes: 0 all declared checks passed, 1 a check failed, 2 bad config.

#include <iostream>

#include "CLI11.hpp"
#include "fgj/lab.hpp"

namespace {

int run(const std::string& sub, const std::string& preset, const std::string& config_path,
        const std::string& out_dir, const std::vector<std::string>& kv_args) {
  fgj::Config cfg;
  if (!config_path.empty()) cfg.merge(fgj::load_config_file(config_path));
  for (const std::string& kv : kv_args) {
    size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: expected key=value, got '" << kv << "'\n";
      return 2;
    }
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  fgj::lab::LabResult result =
      preset.empty() ? fgj::lab::run_subcommand(sub, cfg) : fgj::lab::run_preset(preset, cfg);
  if (!out_dir.empty()) {
    fgj::write_report(result.report, result.config, out_dir);
  } else {
    std::cout << fgj::render_summary(result.report, result.config);
  }
  if (result.report.has_checks && !result.report.passed) {
    std::cerr << "one or more declared checks failed\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-gap Jacobi matrix laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_dir, preset_name;
  std::vector<std::string> kv_args;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value config file (flags override it)");
    sub->add_option("--out", out_dir, "output directory (summary.txt + CSV tables)");
    sub->add_option("params", kv_args, "key=value parameters");
  };

  const std::vector<std::pair<std::string, std::string>> subs = {
      {"bands", "validate a band set and distance queries"},
      {"equilibrium", "equilibrium measure, capacity, Green's function"},
      {"torus", "periodic matrix: discriminant bands and band-edge solutions"},
      {"ratio", "polynomial ratio traces and limit detection"},
      {"sums", "perturbation norms and conditional-summability checks"},
      {"coffman", "diagonal-system asymptotics and the single-band reduction"},
      {"eigs", "truncation eigenvalues outside the bands and q-sums"},
      {"variational", "band-edge trial-vector bounds"},
      {"free-closed-form", "recurrence vs. closed form for the free matrix"},
  };
  for (const auto& [name, desc] : subs) add_common(app.add_subcommand(name, desc));
  CLI::App* preset = app.add_subcommand("preset", "run a canned experiment");
  preset->add_option("name", preset_name, "preset name")->required();
  add_common(preset);
  CLI::App* list = app.add_subcommand("presets", "list preset names");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    for (const std::string& name : fgj::lab::preset_names()) std::cout << name << "\n";
    return 0;
  }
  std::string sub;
  for (const auto& [name, desc] : subs)
    if (app.get_subcommand(name)->parsed()) sub = name;

  try {
    return run(sub, preset->parsed() ? preset_name : "", config_path, out_dir, kv_args);
  } catch (const std::invalid_argument& err) {
    std::cerr << "configuration error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
