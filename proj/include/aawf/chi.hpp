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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aawf/common.hpp"

namespace aawf {

/// Provenance of a process matrix. `n` is empty for exact (density-matrix)
/// characterisations.
struct ChiMeta {
  std::optional<std::size_t> n;
  std::size_t no_jump = 0;   // S
  std::size_t jumped = 0;    // J = n - S, disposed trajectories included
  std::size_t disposed = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> labels;
};

/// D_q^2 x D_q^2 process matrix in the order of its operator basis.
struct ChiMatrix {
  CMatrix data;
  ChiMeta meta;

  bool exact() const { return !meta.n.has_value(); }
  std::size_t size() const { return static_cast<std::size_t>(data.rows()); }
};

}  // namespace aawf
