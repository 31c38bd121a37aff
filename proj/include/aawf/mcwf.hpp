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

// Monte-Carlo wave-function trajectories with norm-threshold jump timing.
//
// Ancilla-extended states are D_full x D_anc row-major blocks (index =
// principal * D_anc + ancilla); every operator acts on the principal factor
// only, so H_eff and the jumps multiply the block from the left.

#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "aawf/common.hpp"
#include "aawf/model.hpp"

namespace aawf {

/// Per-segment H_eff = H - (i/2) sum_k L_k^dagger L_k on the principal space.
struct EffectiveHamiltonian {
  std::vector<CMatrix> segments;
};

EffectiveHamiltonian effective_hamiltonian(const LindbladModel& model);

/// splitmix64 finaliser of (master, index); seeds trajectory `index`.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  std::uint64_t seed() const { return seed_; }
  /// [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  /// (0, 1)
  double uniform_open() { return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

struct JumpRecord {
  double time = 0.0;
  std::string label;  // "parent" or "parent>cascade_child"
};

struct Trajectory {
  std::optional<CVector> final_state;
  std::vector<JumpRecord> jumps;
  bool disposed = false;
  std::optional<double> disposal_time;
  std::optional<double> survival_record;
  std::uint64_t seed = 0;

  bool no_jump() const { return jumps.empty() && !disposed; }
};

/// Position inside the piecewise-constant schedule.
struct SchedulePosition {
  std::size_t segment = 0;
  double time = 0.0;
  double step_hint = 0.0;  // last accepted step size, reused after a jump
};

enum class JumpOutcome { kContinue, kDisposed };

/// Index k with probability w_k / sum w by cumulative inversion of u in [0,1).
/// Throws NumericError when every weight vanishes.
std::size_t select_jump(const std::vector<double>& weights, double u);

class TrajectoryEngine {
 public:
  explicit TrajectoryEngine(const LindbladModel& model, std::size_t ancilla_dim = 1,
                            OdeTolerances tol = kTrajectoryTolerances);

  const LindbladModel& model() const { return *model_; }
  std::size_t ancilla_dim() const { return ancilla_; }
  /// Length of a state vector.
  std::size_t state_size() const { return dim_ * ancilla_; }
  bool has_jumps() const { return has_jumps_; }

  /// Integrates the unnormalised state under H_eff from `pos` until its
  /// squared norm falls to `threshold` (returns the crossing time, state
  /// and pos set there) or the schedule ends (returns nullopt).
  std::optional<double> evolve_no_jump(std::vector<cd>& state, SchedulePosition& pos,
                                       double threshold) const;

  /// delta p_k = |L_k psi|^2 in model jump order.
  std::vector<double> jump_weights(const std::vector<cd>& state) const;

  /// Applies jump k (and its cascade) and renormalises. Appends the record.
  JumpOutcome apply_jump(std::vector<cd>& state, std::size_t k, double time, RngStream& rng,
                         Trajectory& record) const;

  Trajectory run(const CVector& input, std::uint64_t seed) const;

 private:
  struct Op {
    std::vector<cd> rm;  // row-major
    bool zero = true;
  };
  void apply_op(const Op& op, const std::vector<cd>& in, std::vector<cd>& out) const;
  bool support_in_loss(const std::vector<cd>& state) const;

  const LindbladModel* model_;
  std::size_t dim_;
  std::size_t ancilla_;
  OdeTolerances tol_;
  std::vector<std::vector<cd>> generators_;  // row-major -i H_eff per segment
  std::vector<double> boundaries_;           // segment end times
  std::vector<Op> jumps_;
  std::vector<std::vector<Op>> cascades_;
  bool has_jumps_ = false;
};

/// (1/n) sum psi psi^dagger; disposed trajectories contribute zero but count.
CMatrix average_density(const std::vector<Trajectory>& trajectories, std::size_t dim);

/// Runs body(i) for i in [0, n) on `workers` threads. The first exception
/// thrown by any task is rethrown after all threads join.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& body);

/// Trajectory i uses derive_seed(master_seed, i); result order is by index.
std::vector<Trajectory> run_ensemble(const TrajectoryEngine& engine, const CVector& input,
                                     std::uint64_t master_seed, std::size_t n,
                                     std::size_t workers);

}  // namespace aawf
