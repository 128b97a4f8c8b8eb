// Copyright 2026 The Uncollapse Authors
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

#ifndef UNCOLLAPSE_ERRORS_H
#define UNCOLLAPSE_ERRORS_H

#include <stdexcept>
#include <string>

namespace uncollapse {

/// Argument outside the physically meaningful range (angles, strengths, durations).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// The conditional state carries no in-well population, so normalized quantities do not exist.
struct UndefinedStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A pulse sequence that cannot be executed (missing preparation, overlapping steps, ...).
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularInversionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateBackgroundError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace uncollapse

#endif
