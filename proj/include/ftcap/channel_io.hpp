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

// Channel file format:
//   {"dim_in": 2, "dim_out": 2,
//    "kraus": [ [[[re, im], [re, im]], [[re, im], [re, im]]], ... ]}
// Each Kraus operator is a list of dim_out rows of dim_in [re, im] pairs.

#pragma once

#include <filesystem>
#include <string_view>

#include <nlohmann/json.hpp>

#include "ftcap/quantum.hpp"

namespace ftcap {

/// Completeness tolerance enforced when loading channels from files.
inline constexpr double kLoaderTolerance = 1e-8;

/// Parses and validates a channel; throws ValidationError on malformed input
/// or when sum K†K deviates from the identity by more than kLoaderTolerance.
QuantumChannel channel_from_json(const nlohmann::json& j);
QuantumChannel load_channel(const std::filesystem::path& path);

nlohmann::json channel_to_json(const QuantumChannel& channel);

/// File path if it exists, otherwise a builtin name (see builtin_channel).
QuantumChannel resolve_channel(std::string_view path_or_builtin);

}  // namespace ftcap
