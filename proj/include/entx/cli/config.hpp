// Copyright 2026 The entx Authors
//
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

#ifndef ENTX_CLI_CONFIG_HPP
#define ENTX_CLI_CONFIG_HPP

// Scenario configuration for the command-line front end. The file is JSON
// and every dimensional quantity carries its unit in the key name:
//
//   {
//     "seed": 2014,
//     "sources": { "a": {"type": "bell", "which": "phi+"},
//                  "b": {"type": "phase_noise_pair", "c": 0.9} },
//     "channel": {"form": "discrete", "steps": 8, "phase_offset_rad": 0.0},
//     "visibility": 0.8,               // or "spectral": {...}
//     "accounting": "b",
//     "hom": {"tau_ps": {"from": -1.5, "to": 1.5, "points": 61},
//             "noise": {"mean_counts": 2000}},
//     "tomography": {"mean_counts_per_setting": 1e5, "bootstrap_replicas": 100,
//                    "state": {...} | "state_path": "...", "counts_path": "..."},
//     "output": {"dir": "out", "format": "json"}
//   }
//
// "spectral" is either {"lab": {"pump_fwhm_fs", "pump_center_nm",
// "visible": {"center_nm", "fwhm_nm"}, "telecom": {...}}} or
// {"domega_per_s": {"p", "v", "t"}}.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "entx/channels.hpp"
#include "entx/protocol.hpp"
#include "entx/qdm.hpp"
#include "entx/spectral.hpp"
#include "entx/tomography.hpp"

namespace entx::cli {

enum class OutputFormat { Csv, Json };

struct HomNoise {
  double mean_counts = 0.0;
};

struct HomConfig {
  std::vector<double> taus_s;
  std::optional<HomNoise> noise;
};

struct TomographyConfig {
  double mean_counts_per_setting = 1e5;
  int bootstrap_replicas = 100;
  std::optional<StateSpec> state;
  std::optional<std::filesystem::path> state_path;
  std::optional<std::filesystem::path> counts_path;
  MleOptions mle;
};

struct ScenarioConfig {
  std::uint64_t seed = 0;
  StateSpec source_a = BellSpec{Bell::PhiPlus};
  StateSpec source_b = BellSpec{Bell::PhiPlus};
  std::optional<PhaseChannelSpec> channel;
  std::optional<double> visibility;
  std::optional<SpectralParams> spectral;
  Accounting accounting = Accounting::AlicePlusCorrected;
  HomConfig hom;
  TomographyConfig tomography;
  std::filesystem::path output_dir = "out";
  OutputFormat format = OutputFormat::Json;

  // v from "visibility", else from the spectral model; throws InputError if
  // neither is configured.
  double resolved_visibility() const;
};

// Parses and validates; relative paths resolve against `base_dir`. Throws
// InputError on any malformed or out-of-range field.
ScenarioConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);
ScenarioConfig load_config(const std::filesystem::path& path);

StateSpec parse_state_spec(const nlohmann::json& j);

}  // namespace entx::cli

#endif  // ENTX_CLI_CONFIG_HPP
