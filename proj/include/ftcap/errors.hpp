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

#pragma once

#include <stdexcept>
#include <string>

namespace ftcap {

/// Bad argument: wrong dimensions, invalid index, value outside the accepted range.
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A bound formula was evaluated outside the region where it is defined
/// (for example a denominator that is no longer positive).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Input data (JSON files, configs) failed validation.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A documented precondition of a numerical routine does not hold.
struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace ftcap
