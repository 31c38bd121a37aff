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

// Persisted process matrices and CSV tables.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "aawf/chi.hpp"

namespace aawf::cli {

inline constexpr int kSchemaVersion = 1;

struct Metrics {
  std::optional<double> trace_distance_to_ideal;
  std::optional<double> fidelity_to_ideal;
  std::optional<double> nojump_upper_bound;
  std::optional<double> nojump_upper_bound_single;
};

struct ChiArtifact {
  int schema_version = kSchemaVersion;
  std::size_t d_q = 0;
  ChiMatrix chi;
  nlohmann::ordered_json model;
  Metrics metrics;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();  // command-specific notes
};

nlohmann::ordered_json to_json(const ChiArtifact& a);
/// Throws ConfigError on a schema mismatch or malformed document.
ChiArtifact from_json(const nlohmann::ordered_json& doc);

std::string dump_artifact(const ChiArtifact& a);
void write_artifact(const std::string& path, const ChiArtifact& a);
ChiArtifact read_artifact(const std::string& path);

/// %.17g; reads back as the same double.
std::string format_double(double x);

/// Writes a header row and then `rows`, fields joined by commas.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace aawf::cli
