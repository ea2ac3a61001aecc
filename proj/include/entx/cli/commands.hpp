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

#ifndef ENTX_CLI_COMMANDS_HPP
#define ENTX_CLI_COMMANDS_HPP

#include <iosfwd>

#include "entx/cli/config.hpp"

namespace entx::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitConfig = 2,
  kExitNumeric = 3,
  kExitNonConvergence = 4,
};

enum class TomoMode { Simulate, Fit, End2End };

// Each command writes its artifacts under cfg.output_dir and a short summary
// to `console`. Exceptions propagate; `run` maps them to exit codes.
int cmd_pipeline(const ScenarioConfig& cfg, std::ostream& console);
int cmd_hom(const ScenarioConfig& cfg, std::ostream& console);
int cmd_tomo(const ScenarioConfig& cfg, TomoMode mode, std::ostream& console);

// Full command line: `entx <pipeline|hom|tomo MODE> --config PATH [--seed N]
// [--out DIR] [--format csv|json]`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace entx::cli

#endif  // ENTX_CLI_COMMANDS_HPP
