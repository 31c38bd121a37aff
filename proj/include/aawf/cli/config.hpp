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

// Run configuration. Files are strict JSON: unknown keys are rejected and
// every dimensional quantity carries its unit in the key name.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aawf/channels.hpp"
#include "aawf/common.hpp"
#include "aawf/rydberg.hpp"

namespace aawf::cli {

enum class ModelKind { kAmplitudeDamping, kDephasing, kCustomMatrixFile, kRydbergCphase };

std::string model_name(ModelKind kind);

struct SweepPoint {
  double omega_b_mhz = 0.0;
  double blockade_mhz = 0.0;
};

struct SweepConfig {
  std::vector<double> omega_b_mhz{10, 20, 39, 60, 80, 120, 160};
  std::vector<double> blockade_mhz{10, 20, 30};
  std::optional<SweepPoint> flag_point = SweepPoint{39.0, 20.0};
};

struct ConvergeConfig {
  std::vector<std::size_t> n_list{20, 50, 100, 200, 500};
  std::size_t repeats = 50;
};

struct RunConfig {
  ModelKind model = ModelKind::kAmplitudeDamping;
  ChannelParams channel;
  rydberg::RydbergParams rydberg = rydberg::RydbergParams::operating_point();
  std::string custom_matrix_file;  // resolved against the config directory

  std::size_t n_trajectories = 500;
  std::uint64_t master_seed = 0;
  std::size_t workers = 1;
  OdeTolerances mcwf_tol = kTrajectoryTolerances;
  OdeTolerances oracle_tol = kOracleTolerances;
  bool aapc_check = true;
  ConvergeConfig converge;
  SweepConfig sweep;

  /// The parsed model section, echoed into artifacts.
  nlohmann::ordered_json model_echo;
};

/// Throws ConfigError with the offending key path.
RunConfig parse_config(const nlohmann::ordered_json& doc, const std::string& base_dir = ".");
RunConfig parse_config_text(const std::string& text, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path);

}  // namespace aawf::cli
