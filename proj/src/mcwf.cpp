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

#include "aawf/mcwf.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

#include "aawf/ode.hpp"
#include "aawf/simd/kernels.hpp"

namespace aawf {

namespace {

std::vector<cd> row_major(const CMatrix& m) {
  std::vector<cd> out(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out[static_cast<std::size_t>(i * m.cols() + j)] = m(i, j);
    }
  }
  return out;
}

}  // namespace

EffectiveHamiltonian effective_hamiltonian(const LindbladModel& model) {
  const auto d = static_cast<Eigen::Index>(model.full_dim());
  CMatrix decay = CMatrix::Zero(d, d);
  for (const auto& j : model.jumps()) decay += j.op.adjoint() * j.op;
  EffectiveHamiltonian out;
  for (const auto& seg : model.schedule()) out.segments.push_back(seg.hamiltonian - 0.5 * kI * decay);
  return out;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::size_t select_jump(const std::vector<double>& weights, double u) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw NumericError("jump fired but every jump channel has zero weight");
  const double target = u * total;
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] <= 0.0) continue;
    acc += weights[k];
    last = k;
    if (target < acc) return k;
  }
  return last;
}

TrajectoryEngine::TrajectoryEngine(const LindbladModel& model, std::size_t ancilla_dim,
                                   OdeTolerances tol)
    : model_(&model), dim_(model.full_dim()), ancilla_(ancilla_dim), tol_(tol) {
  if (ancilla_ == 0) throw ConfigError("ancilla dimension must be positive");
  const EffectiveHamiltonian heff = effective_hamiltonian(model);
  double t = 0.0;
  for (std::size_t k = 0; k < heff.segments.size(); ++k) {
    generators_.push_back(row_major(-kI * heff.segments[k]));
    t += model.schedule()[k].duration;
    boundaries_.push_back(t);
  }
  auto make_op = [](const CMatrix& m) {
    Op op;
    op.rm = row_major(m);
    op.zero = m.isZero(0.0);
    return op;
  };
  for (const auto& j : model.jumps()) {
    jumps_.push_back(make_op(j.op));
    std::vector<Op> family;
    for (const auto& c : j.cascade) family.push_back(make_op(c.op));
    cascades_.push_back(std::move(family));
    has_jumps_ = has_jumps_ || !jumps_.back().zero;
  }
}

void TrajectoryEngine::apply_op(const Op& op, const std::vector<cd>& in,
                                std::vector<cd>& out) const {
  out.resize(in.size());
  simd::active_kernels().cmatmul(op.rm.data(), in.data(), out.data(), dim_, dim_, ancilla_);
}

bool TrajectoryEngine::support_in_loss(const std::vector<cd>& state) const {
  const auto& loss = model_->spec().loss_indices;
  if (loss.empty()) return false;
  double kept = 0.0;
  for (std::size_t p = 0; p < dim_; ++p) {
    if (std::find(loss.begin(), loss.end(), p) != loss.end()) continue;
    for (std::size_t a = 0; a < ancilla_; ++a) kept += std::norm(state[p * ancilla_ + a]);
  }
  return kept < 1e-14;
}

std::optional<double> TrajectoryEngine::evolve_no_jump(std::vector<cd>& state,
                                                       SchedulePosition& pos,
                                                       double threshold) const {
  const auto& kern = simd::active_kernels();
  const std::size_t n = state.size();
  if (n != state_size()) throw ConfigError("state length does not match the model");
  double norm2 = kern.squared_norm(state.data(), n);
  if (threshold >= norm2) throw NumericError("jump threshold is not below the current squared norm");

  std::vector<cd> probe(n);
  while (pos.segment < boundaries_.size()) {
    const double t_end = boundaries_[pos.segment];
    if (pos.time >= t_end) {
      ++pos.segment;
      continue;
    }
    const cd* g = generators_[pos.segment].data();
    auto rhs = [&kern, g, this](double, const cd* y, cd* dy) {
      kern.cmatmul(g, y, dy, dim_, dim_, ancilla_);
    };
    DormandPrince dp(n, tol_);
    dp.start(rhs, pos.time, state, t_end, pos.step_hint);
    while (dp.t() < t_end) {
      dp.step(rhs, t_end);
      const double next = kern.squared_norm(dp.y().data(), n);
      if (next > norm2 * (1.0 + 100.0 * tol_.rtol) + tol_.atol) {
        std::ostringstream msg;
        msg << "squared norm grew from " << norm2 << " to " << next << " at t=" << dp.t()
            << " (H_eff is not dissipative)";
        throw NumericError(msg.str());
      }
      if (next <= threshold) {
        double lo = dp.t_prev();
        double hi = dp.t();
        for (int it = 0; it < 200 && hi - lo > 1e-12 * std::abs(hi); ++it) {
          const double mid = 0.5 * (lo + hi);
          dp.dense(mid, probe);
          if (kern.squared_norm(probe.data(), n) <= threshold) {
            hi = mid;
          } else {
            lo = mid;
          }
        }
        dp.dense(hi, state);
        pos.time = hi;
        pos.step_hint = dp.suggested_step();
        return hi;
      }
      norm2 = next;
    }
    std::copy(dp.y().begin(), dp.y().end(), state.begin());
    pos.time = t_end;
    pos.step_hint = dp.suggested_step();
    ++pos.segment;
  }
  return std::nullopt;
}

std::vector<double> TrajectoryEngine::jump_weights(const std::vector<cd>& state) const {
  const auto& kern = simd::active_kernels();
  std::vector<double> w(jumps_.size(), 0.0);
  std::vector<cd> tmp(state.size());
  for (std::size_t k = 0; k < jumps_.size(); ++k) {
    if (jumps_[k].zero) continue;
    apply_op(jumps_[k], state, tmp);
    w[k] = kern.squared_norm(tmp.data(), tmp.size());
  }
  return w;
}

JumpOutcome TrajectoryEngine::apply_jump(std::vector<cd>& state, std::size_t k, double time,
                                         RngStream& rng, Trajectory& record) const {
  const auto& kern = simd::active_kernels();
  const JumpOperator& parent = model_->jumps().at(k);
  std::string label = parent.label;
  if (parent.to_loss) {
    record.jumps.push_back({time, label});
    return JumpOutcome::kDisposed;
  }
  std::vector<cd> tmp;
  auto project = [&](const Op& op) {
    apply_op(op, state, tmp);
    const double nn = kern.squared_norm(tmp.data(), tmp.size());
    if (!(nn > 0.0)) throw NumericError("jump '" + label + "' annihilates the state");
    const double s = 1.0 / std::sqrt(nn);
    for (std::size_t i = 0; i < tmp.size(); ++i) state[i] = tmp[i] * s;
  };
  project(jumps_[k]);

  if (!parent.cascade.empty()) {
    std::vector<double> w(cascades_[k].size(), 0.0);
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (cascades_[k][j].zero) continue;
      apply_op(cascades_[k][j], state, tmp);
      w[j] = kern.squared_norm(tmp.data(), tmp.size());
    }
    const std::size_t c = select_jump(w, rng.uniform());
    const JumpOperator& child = parent.cascade[c];
    label += ">" + child.label;
    if (child.to_loss) {
      record.jumps.push_back({time, label});
      return JumpOutcome::kDisposed;
    }
    project(cascades_[k][c]);
  }
  record.jumps.push_back({time, label});
  return support_in_loss(state) ? JumpOutcome::kDisposed : JumpOutcome::kContinue;
}

Trajectory TrajectoryEngine::run(const CVector& input, std::uint64_t seed) const {
  const std::size_t n = state_size();
  if (static_cast<std::size_t>(input.size()) != n) {
    throw ConfigError("input state length does not match the model");
  }
  if (std::abs(input.squaredNorm() - 1.0) > 1e-10) throw ConfigError("input state is not normalised");

  Trajectory tr;
  tr.seed = seed;
  RngStream rng(seed);
  std::vector<cd> state(input.data(), input.data() + n);
  SchedulePosition pos;
  for (;;) {
    const double threshold = has_jumps_ ? rng.uniform_open() : 0.0;
    const std::optional<double> hit = evolve_no_jump(state, pos, threshold);
    if (!hit) break;
    const std::size_t k = select_jump(jump_weights(state), rng.uniform());
    if (apply_jump(state, k, *hit, rng, tr) == JumpOutcome::kDisposed) {
      tr.disposed = true;
      tr.disposal_time = *hit;
      return tr;
    }
  }
  const double nn = simd::active_kernels().squared_norm(state.data(), n);
  if (!(nn > 0.0)) throw NumericError("trajectory ended with a vanishing state");
  if (tr.jumps.empty()) tr.survival_record = nn;
  CVector out(static_cast<Eigen::Index>(n));
  const double s = 1.0 / std::sqrt(nn);
  for (std::size_t i = 0; i < n; ++i) out(static_cast<Eigen::Index>(i)) = state[i] * s;
  tr.final_state = std::move(out);
  return tr;
}

CMatrix average_density(const std::vector<Trajectory>& trajectories, std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  CMatrix rho = CMatrix::Zero(d, d);
  for (const auto& tr : trajectories) {
    if (!tr.final_state) continue;
    if (tr.final_state->size() != d) throw ConfigError("average_density: state dimension mismatch");
    rho.noalias() += *tr.final_state * tr.final_state->adjoint();
  }
  if (!trajectories.empty()) rho /= static_cast<double>(trajectories.size());
  return rho;
}

void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& body) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<Trajectory> run_ensemble(const TrajectoryEngine& engine, const CVector& input,
                                     std::uint64_t master_seed, std::size_t n,
                                     std::size_t workers) {
  std::vector<Trajectory> out(n);
  parallel_for(n, workers, [&](std::size_t i) { out[i] = engine.run(input, derive_seed(master_seed, i)); });
  return out;
}

}  // namespace aawf
