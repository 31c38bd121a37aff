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

// Hilbert-space layout, time-dependent Lindblad models, operator bases and
// the structural matrices (kappa, K) that depend only on the basis choice.
//
// Index conventions (frozen, row-major throughout):
//   principal (x) ancilla vectors:  index = principal * D_q + ancilla
//   kappa:                          kappa(p * D_q + r, m) = <p|E_m|r>
//   K tensor:                       row = ((r * D_q + s) * D_q + p) * D_q + q
//                                   col = m * D_q^2 + n
//   Lambda / chi vectors:           same flattening as the K rows / columns

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "aawf/common.hpp"

namespace aawf {

struct HilbertSpec {
  std::size_t full_dim = 0;
  std::vector<std::size_t> qubit_dims;
  // qubit computational basis state r -> full-space basis index
  std::vector<std::size_t> qubit_index_map;
  std::vector<std::size_t> loss_indices;

  std::size_t qubit_dim() const;

  /// Throws ConfigError when the invariants do not hold.
  void validate() const;

  /// A plain D-level system whose whole space is the qubit register.
  static HilbertSpec qubits(std::size_t num_qubits);
};

/// A quantum-jump channel L_k.
///
/// When `to_loss` is set the jump leaves the simulated space (the target
/// level is not represented); only op^dagger op is meaningful and firing the
/// jump disposes the trajectory. `cascade` lists the immediate-successor
/// family applied at the same time stamp after this jump fires.
struct JumpOperator {
  std::string label;
  CMatrix op;
  bool to_loss = false;
  std::vector<JumpOperator> cascade;
};

struct Segment {
  double duration = 0.0;  // seconds
  CMatrix hamiltonian;    // rad/s, hbar = 1
};

class LindbladModel {
 public:
  LindbladModel(HilbertSpec spec, std::vector<Segment> schedule,
                std::vector<JumpOperator> jumps);

  const HilbertSpec& spec() const { return spec_; }
  const std::vector<Segment>& schedule() const { return schedule_; }
  const std::vector<JumpOperator>& jumps() const { return jumps_; }
  std::size_t full_dim() const { return spec_.full_dim; }
  double total_duration() const;

 private:
  HilbertSpec spec_;
  std::vector<Segment> schedule_;
  std::vector<JumpOperator> jumps_;
};

/// Scalar s with sum_j C_j^dagger C_j L = s L for the cascade family of L.
/// Throws ConfigError when the family's total rate is not uniform on the
/// range of L (the composed channels would then not be well defined).
double cascade_rate(const JumpOperator& parent);

class OperatorBasis {
 public:
  OperatorBasis(std::string name, std::vector<CMatrix> ops,
                std::vector<std::string> labels);

  const std::string& name() const { return name_; }
  /// D_q
  std::size_t dim() const { return dim_; }
  /// D_q^2
  std::size_t size() const { return ops_.size(); }
  const std::vector<CMatrix>& ops() const { return ops_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const CMatrix& op(std::size_t m) const { return ops_[m]; }

 private:
  std::string name_;
  std::size_t dim_ = 0;
  std::vector<CMatrix> ops_;
  std::vector<std::string> labels_;
};

/// Unnormalised Pauli products in lexicographic label order (I < X < Y < Z,
/// leftmost factor most significant). E_0 is the identity.
OperatorBasis pauli_basis(std::size_t num_qubits);

/// Unit-norm (1/sqrt(D_q)) sum_r |map(r)>_P |r>_A.
struct EntangledInput {
  CVector state;
  double normalization_scale = 1.0;  // sqrt(D_q)
  std::size_t full_dim = 0;
  std::size_t qubit_dim = 0;
};

EntangledInput maximally_entangled_input(const HilbertSpec& spec);

/// kappa together with its factorisation. Solves kappa zeta = lambda.
class KappaSystem {
 public:
  KappaSystem(CMatrix kappa, CMatrix bip_basis, std::string basis_name);

  const CMatrix& kappa() const { return kappa_; }
  /// Columns are the bipartite basis vectors |j>> in computational order.
  const CMatrix& bip_basis() const { return bip_basis_; }
  bool computational_bip_basis() const { return computational_; }

  /// Coefficients of a qubit (x) ancilla vector in the bipartite basis.
  CVector lambda_from_amplitudes(const CVector& amplitudes) const;

  /// LU solve of kappa zeta = lambda.
  CVector solve(const CVector& lambda) const;

  /// Residual |kappa zeta - lambda| / max(1, |lambda|).
  double residual(const CVector& zeta, const CVector& lambda) const;

 private:
  CMatrix kappa_;
  CMatrix bip_basis_;
  bool computational_ = true;
  Eigen::FullPivLU<CMatrix> lu_;
};

/// Column m holds the coefficients of (E_m (x) I) sum_r |r>|r> in the
/// orthonormal bipartite basis `bip_basis` (identity = computational).
KappaSystem build_kappa(const OperatorBasis& basis, const EntangledInput& input,
                        const CMatrix& bip_basis);
KappaSystem build_kappa(const OperatorBasis& basis, const EntangledInput& input);

/// K[(rs,pq)][(mn)] = <p|E_m|r> <s|E_n^dagger|q>. Refuses D_q > 8.
CMatrix build_K(const OperatorBasis& basis);

inline constexpr std::size_t kMaxKTensorDim = 8;

/// Flattened index of (r, s, p, q) in Lambda and in the K rows.
inline std::size_t lambda_index(std::size_t dq, std::size_t r, std::size_t s,
                                std::size_t p, std::size_t q) {
  return ((r * dq + s) * dq + p) * dq + q;
}

}  // namespace aawf
