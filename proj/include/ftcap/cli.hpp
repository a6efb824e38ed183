// Copyright 2026 The ftcap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Every command renders its result into a string
// (JSON for single evaluations, CSV for sweeps), writes it to --out or
// stdout, and writes a run manifest holding the resolved arguments and the
// SHA-256 of the output. `replay` re-runs a manifest in memory and compares
// digests.
//
// Exit codes: 0 success, 1 replay mismatch or internal error, 2 input
// validation, 3 domain violation, 4 non-convergence (output still written).

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ftcap {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitNoConvergence = 4;

std::string sha256_hex(const std::string& data);

struct CommandResult {
    int exit_code = kExitOk;
    std::string output;          ///< rendered JSON or CSV
    nlohmann::json manifest;     ///< empty if the arguments did not parse
};

/// Parses and runs one command (args exclude the program name). With
/// `side_effects` false nothing is written to disk or to `out`.
CommandResult run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                          bool side_effects = true);

/// Entry point used by the executable.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ftcap
