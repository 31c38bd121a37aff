// Copyright 2026 The AAWF Authors
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

#include <functional>
#include <ostream>

namespace aawf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitPartialSweep = 4;

/// aawf <characterize|oracle|converge|sweep> --config <path> [--seed <u64>]
///      [--out <dir>] [--workers <int>]
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs `body`, mapping ConfigError to 2 and NumericError to 3 (message to `err`).
int guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace aawf::cli
