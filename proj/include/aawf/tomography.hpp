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

// zeta-vectors, process-matrix accumulation and the channel metrics.

#pragma once

#include <cstddef>
#include <vector>

#include "aawf/chi.hpp"
#include "aawf/mcwf.hpp"
#include "aawf/model.hpp"

namespace aawf {

/// Solution of kappa zeta = lambda for one trajectory. Only zeta zeta^dagger
/// is ever used, so the global phase is left as the trajectory produced it.
struct ZetaVector {
  CVector coeffs;
  std::size_t source = 0;
  bool jumped = false;
};

/// lambda = sqrt(D_q) * (amplitudes on qubit (x) ancilla); amplitudes on
/// non-qubit levels are dropped. Throws NumericError if |kappa zeta - lambda|
/// exceeds 1e-10.
ZetaVector zeta_from_state(const KappaSystem& kappa, const HilbertSpec& spec,
                           const CVector& final_state, std::size_t source = 0,
                           bool jumped = false);

/// Running sum of zeta zeta^dagger plus counters. Merging is exact in the
/// counters and associative up to rounding in the sums.
class ChiAccumulator {
 public:
  explicit ChiAccumulator(std::size_t size);

  void add(const ZetaVector& zeta);
  void add_disposed() { ++disposed_; }
  void merge(const ChiAccumulator& other);

  std::size_t total() const { return no_jump_ + jumped_ + disposed_; }
  std::size_t no_jump() const { return no_jump_; }
  std::size_t jumped() const { return jumped_ + disposed_; }
  std::size_t disposed() const { return disposed_; }

  /// sum / total, with S, J, n and disposed filled in.
  ChiMatrix finish() const;

 private:
  std::size_t size_;
  std::vector<cd> sum_;  // row-major
  std::size_t no_jump_ = 0, jumped_ = 0, disposed_ = 0;
};

/// chi = (1/n_total) sum zeta zeta^dagger.
ChiMatrix accumulate_chi(const std::vector<ZetaVector>& zetas, std::size_t disposed_count,
                         std::size_t n_total);

/// chi_S from the no-jump zetas alone, chi_J from the jumped ones (disposed
/// included as zeros), so that chi = (S/n) chi_S + (J/n) chi_J.
struct ChiSplit {
  CMatrix chi_s;
  CMatrix chi_j;
  std::size_t no_jump = 0;
  std::size_t jumped = 0;
  std::size_t n = 0;
};

ChiSplit split_chi(const std::vector<ZetaVector>& zetas, std::size_t disposed_count);

/// Everything tomography needs from one ensemble.
struct EnsembleChi {
  ChiMatrix chi;
  std::optional<ZetaVector> first_no_jump;
  std::optional<double> survival;  // squared no-jump norm of that trajectory
};

/// zeta extraction in parallel, accumulation sequential in trajectory order.
EnsembleChi ensemble_chi(const std::vector<Trajectory>& trajectories, const KappaSystem& kappa,
                         const HilbertSpec& spec, std::size_t workers = 1);

/// Coefficients of A in the basis: A = sum_m c_m E_m.
CVector basis_coefficients(const CMatrix& a, const OperatorBasis& basis);

/// c c^dagger for the expansion of an arbitrary operator A.
ChiMatrix operator_chi(const CMatrix& a, const OperatorBasis& basis);

/// operator_chi of a unitary target. Throws ConfigError if not unitary to 1e-10.
ChiMatrix ideal_chi(const CMatrix& target_unitary, const OperatorBasis& basis);

/// (1/2) sum |eig(A - B)|.
double trace_distance(const CMatrix& a, const CMatrix& b);
double trace_distance(const ChiMatrix& a, const ChiMatrix& b);

/// Eigenvalues below -clip make fidelity() throw; those in (-clip, 0) are zeroed.
inline constexpr double kFidelityClip = 1e-8;
inline constexpr double kFidelityClipLargeEnsemble = 1e-3;
double fidelity_clip_for(std::optional<std::size_t> n);

/// |sqrt(A) sqrt(B)|_tr
double fidelity(const CMatrix& a, const CMatrix& b, double clip = kFidelityClip);
double fidelity(const ChiMatrix& a, const ChiMatrix& b);

/// sqrt(c^dagger B c), the rank-one special case A = c c^dagger.
double fidelity_rank1(const CVector& c, const CMatrix& b, double clip = kFidelityClip);

/// T(chi_ideal, (S/n) chi_S) + J/(2n). Throws NumericError when S = 0.
double nojump_upper_bound(const CMatrix& chi_ideal, const CMatrix& chi_s, std::size_t no_jump,
                          std::size_t n);

/// Same bound from one no-jump trajectory, with S/n replaced by its squared
/// no-jump norm p and J/n by 1 - p.
double single_trajectory_upper_bound(const CMatrix& chi_ideal, const CMatrix& chi_s,
                                     double survival);

}  // namespace aawf
