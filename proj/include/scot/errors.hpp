// Copyright 2026 The scot-sim Authors
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

#include <stdexcept>
#include <string>

namespace scot {

/// Malformed or out-of-range caller input.
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Instance exceeds the enumeration/dense-storage caps.
class CapacityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// No causal placement exists for a protocol step on the given layout.
class SchedulingError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An internal consistency check failed. Indicates a bug, not bad input.
class InvariantError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

} // namespace scot
