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

// Experiment runners behind the CLI subcommands. They compute; commands.cpp
// handles files and exit codes.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "aawf/cli/artifact.hpp"
#include "aawf/cli/config.hpp"
#include "aawf/model.hpp"

namespace aawf::cli {

struct ModelSetup {
  LindbladModel model;
  /// Declared ideal gate on the qubit register.
  CMatrix ideal_unitary;
};

/// Custom model file: JSON with "segments" [{duration_s, hamiltonian_rad_per_s}],
/// "jumps" [{label, op, to_loss?, cascade?}] and either "qubits" or
/// "full_dim" + "qubit_dims" + "qubit_index_map" (+ "loss_indices"); optional
/// "ideal_unitary". Matrix entries are numbers or [re, im] pairs.
ModelSetup load_custom_model(const std::string& path);

ModelSetup build_model(const RunConfig& cfg);

/// Exact propagator of the ideal-gate definition for channel models:
/// exp(-i hx X T) (identity when hx = 0).
CMatrix channel_ideal(const ChannelParams& p);

/// n trajectories of the ancilla-extended model, zeta extraction, chi and
/// the metrics against the declared ideal.
ChiArtifact characterize(const RunConfig& cfg, std::uint64_t seed, std::size_t n,
                         std::size_t workers);

/// Density-matrix SQPC (plus the AAPC cross-check when enabled).
ChiArtifact oracle(const RunConfig& cfg);

struct ConvergeRow {
  std::size_t n = 0;
  double mean_f = 0.0, std_f = 0.0, mean_t = 0.0, std_t = 0.0;
};

/// Repeat r at list position k uses master seed derive_seed(derive_seed(seed, k), r).
std::vector<ConvergeRow> converge(const RunConfig& cfg, std::uint64_t seed, std::size_t workers);

struct SweepRow {
  double omega_b_mhz = 0.0;
  double blockade_mhz = 0.0;
  double t = 0.0;
  double f = 0.0;
  std::optional<double> upper_bound;
  std::optional<double> upper_bound_single;
  std::size_t s = 0, j = 0, n = 0;
};

struct SweepFailure {
  double omega_b_mhz = 0.0;
  double blockade_mhz = 0.0;
  std::string message;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SweepFailure> failures;
  /// chi - chi_ideal at the flagged point.
  std::optional<CMatrix> flagged_delta;
  std::vector<std::string> labels;
};

/// Point p (blockade-major order) uses master seed derive_seed(seed, p).
/// Per-point numeric failures are collected, not thrown.
SweepResult sweep(const RunConfig& cfg, std::uint64_t seed, std::size_t workers,
                  const std::function<void(const SweepRow&)>& on_row = {});

}  // namespace aawf::cli
