// Copyright 2026 The STAR Toolkit Authors
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
#pragma once

#include "json.hpp"
#include "star/synth.hpp"

namespace star::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitInternalError = 2,
};

/// Runs the star command line. Subcommands: build-dataset, link, eval,
/// stats, gen-synth. Returns the process exit code.
int run(int argc, const char* const* argv);

/// Scenario from a gen-synth spec document; absent keys keep their defaults.
ScenarioSpec scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const ScenarioSpec& s);

}  // namespace star::cli
