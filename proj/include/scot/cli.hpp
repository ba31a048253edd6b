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

// Command-line front end: run, bounds, attack, verify.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace scot::cli {

enum ExitCode : int {
    kOk = 0,
    kVerifyFailed = 1,
    kConfigError = 2,
    kSchedulingError = 3,
    kCapacityError = 4,
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "SCOT_OUT_DIR";

/// args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace scot::cli
