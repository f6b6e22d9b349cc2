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

#include "fgj/coffman.hpp"
#include "fgj/eigens.hpp"
#include "fgj/report.hpp"

namespace fgj::lab {

struct LabResult {
  Report report;
  Config config;  // fully resolved (defaults + file + flags)
};

/// Shared config keys:
///   p, a, b            base matrix (period, comma lists); default free
///   family             zero | example1 | example2 | l1_decay
///   alpha, omega       family parameters
///   seed               RNG seed (recorded in the output)
PeriodicJacobi base_from_config(const Config& cfg);
Perturbation perturbation_from_config(const Config& cfg);

LabResult run_bands(const Config& cfg);
LabResult run_equilibrium(const Config& cfg);
LabResult run_torus(const Config& cfg);
LabResult run_ratio(const Config& cfg);
LabResult run_sums(const Config& cfg);
LabResult run_coffman(const Config& cfg);
LabResult run_eigs(const Config& cfg);
LabResult run_variational(const Config& cfg);
LabResult run_free_closed_form(const Config& cfg);

/// Dispatch by subcommand name; throws std::invalid_argument for unknown names.
LabResult run_subcommand(const std::string& name, const Config& cfg);

std::vector<std::string> preset_names();
/// Canned experiment: preset defaults merged under the caller's overrides.
LabResult run_preset(const std::string& name, const Config& overrides);

}  // namespace fgj::lab
