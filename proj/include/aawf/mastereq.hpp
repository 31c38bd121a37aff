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

// Dense density-matrix propagation of the Lindblad master equation and the
// two density-matrix characterisation routes (standard: one propagation per
// input matrix |r><s|; ancilla-assisted: one propagation of the entangled
// projector). Both serve as exact references for the trajectory pipeline.

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/SparseCore>

#include "aawf/chi.hpp"
#include "aawf/common.hpp"
#include "aawf/model.hpp"

namespace aawf {

struct DensityMatrix {
  CMatrix data;

  std::size_t dim() const { return static_cast<std::size_t>(data.rows()); }
  cd trace() const { return data.trace(); }

  static DensityMatrix pure(const CVector& psi);

  /// Hermitian to `tol`, trace <= 1 + tol, eigenvalues >= -1e-8.
  void validate(double tol = 1e-10) const;
};

/// Right-hand side of the master equation for one schedule segment:
///   dX/dt = A X + X A^dagger + sum_c C X C^dagger,  A = -iH - (1/2) sum_k L_k^dagger L_k.
/// Cascading jumps enter through their composed channels C_j L / sqrt(s);
/// loss channels contribute only to A. With ancilla_dim > 1 every operator is
/// extended as O (x) 1.
class LindbladGenerator {
 public:
  LindbladGenerator(const LindbladModel& model, std::size_t segment, std::size_t ancilla_dim = 1);

  std::size_t dim() const { return static_cast<std::size_t>(dim_); }
  CMatrix apply(const CMatrix& x) const;
  void apply(const cd* x, cd* dx) const;

 private:
  using SparseC = Eigen::SparseMatrix<cd, Eigen::ColMajor>;
  Eigen::Index dim_ = 0;
  SparseC drift_;
  SparseC drift_adj_;
  std::vector<SparseC> recycle_;
  std::vector<SparseC> recycle_adj_;
};

/// Channels whose L X L^dagger term is kept by the master equation.
/// Cascades are replaced by their composed channels; loss channels dropped.
std::vector<CMatrix> recycling_operators(const LindbladModel& model);

/// Linear propagation of an arbitrary (possibly non-Hermitian) matrix through
/// the schedule. Accepts full_dim or full_dim * D_q (ancilla-extended) input.
CMatrix propagate_operator(const LindbladModel& model, const CMatrix& x0,
                           OdeTolerances tol = kOracleTolerances);

DensityMatrix propagate_density(const LindbladModel& model, const DensityMatrix& rho0,
                                OdeTolerances tol = kOracleTolerances);

/// Lambda[rs,pq] = <p| E(|r><s|) |q> on the qubit subspace, flattened with
/// lambda_index().
struct LambdaTensor {
  std::size_t dim = 0;
  CVector entries;

  cd operator()(std::size_t r, std::size_t s, std::size_t p, std::size_t q) const {
    return entries(static_cast<Eigen::Index>(lambda_index(dim, r, s, p, q)));
  }
};

LambdaTensor sqpc_lambda(const LindbladModel& model, OdeTolerances tol = kOracleTolerances);

/// sum_rs |r><s| (x) |r><s| on principal (x) ancilla, principal embedded via
/// the qubit index map.
CMatrix entangled_super_operator(const HilbertSpec& spec);

/// Tr_A[(1 (x) |s><r|) O_out], projected onto the qubit subspace.
CMatrix extract_channel_output(const HilbertSpec& spec, const CMatrix& out, std::size_t r,
                               std::size_t s);

LambdaTensor aapc_lambda(const LindbladModel& model, OdeTolerances tol = kOracleTolerances);

struct ChiSolveReport {
  Eigen::Index rank = 0;
  Eigen::Index unknowns = 0;
  double condition = 0.0;
  double hermiticity_defect = 0.0;
};

/// Minimum-norm least-squares solution of K chi = Lambda.
ChiMatrix chi_from_lambda(const OperatorBasis& basis, const CMatrix& k_tensor,
                          const LambdaTensor& lambda, ChiSolveReport* report = nullptr);

ChiMatrix sqpc_characterize(const LindbladModel& model, const OperatorBasis& basis,
                            OdeTolerances tol = kOracleTolerances);

ChiMatrix aapc_characterize_density(const LindbladModel& model, const OperatorBasis& basis,
                                    OdeTolerances tol = kOracleTolerances);

}  // namespace aawf
