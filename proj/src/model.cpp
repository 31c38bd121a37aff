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

#include "aawf/model.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace aawf {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double hermiticity_defect(const CMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  if (a.size() == 0) return true;
  const double scale = a.cwiseAbs().maxCoeff();
  return hermiticity_defect(a) <= rel_tol * scale;
}

// ---------------------------------------------------------------------------

std::size_t HilbertSpec::qubit_dim() const {
  return std::accumulate(qubit_dims.begin(), qubit_dims.end(), std::size_t{1},
                         std::multiplies<>());
}

void HilbertSpec::validate() const {
  if (full_dim == 0) throw ConfigError("HilbertSpec: full_dim must be positive");
  if (qubit_dims.empty()) throw ConfigError("HilbertSpec: qubit_dims is empty");
  for (std::size_t d : qubit_dims) {
    if (d == 0) throw ConfigError("HilbertSpec: zero qubit sub-dimension");
  }
  const std::size_t dq = qubit_dim();
  if (dq > full_dim) throw ConfigError("HilbertSpec: qubit dimension exceeds full_dim");
  if (qubit_index_map.size() != dq) {
    throw ConfigError("HilbertSpec: qubit_index_map must have one entry per qubit basis state");
  }
  std::set<std::size_t> image;
  for (std::size_t idx : qubit_index_map) {
    if (idx >= full_dim) throw ConfigError("HilbertSpec: qubit_index_map entry out of range");
    if (!image.insert(idx).second) throw ConfigError("HilbertSpec: qubit_index_map is not injective");
  }
  for (std::size_t idx : loss_indices) {
    if (idx >= full_dim) throw ConfigError("HilbertSpec: loss index out of range");
    if (image.count(idx) != 0) {
      throw ConfigError("HilbertSpec: loss index overlaps the qubit subspace");
    }
  }
}

HilbertSpec HilbertSpec::qubits(std::size_t num_qubits) {
  HilbertSpec spec;
  spec.qubit_dims.assign(num_qubits, 2);
  spec.full_dim = spec.qubit_dim();
  spec.qubit_index_map.resize(spec.full_dim);
  std::iota(spec.qubit_index_map.begin(), spec.qubit_index_map.end(), std::size_t{0});
  return spec;
}

// ---------------------------------------------------------------------------

namespace {

void check_square(const CMatrix& m, std::size_t dim, const std::string& what) {
  if (static_cast<std::size_t>(m.rows()) != dim || static_cast<std::size_t>(m.cols()) != dim) {
    std::ostringstream msg;
    msg << what << " must be " << dim << "x" << dim << " (got " << m.rows() << "x" << m.cols()
        << ")";
    throw ConfigError(msg.str());
  }
}

void check_jump(const JumpOperator& j, std::size_t dim, bool allow_cascade) {
  check_square(j.op, dim, "jump operator '" + j.label + "'");
  if (!j.op.allFinite()) throw ConfigError("jump operator '" + j.label + "' is not finite");
  if (!j.cascade.empty()) {
    if (!allow_cascade) {
      throw ConfigError("jump operator '" + j.label + "': nested cascades are not supported");
    }
    if (j.to_loss) {
      throw ConfigError("jump operator '" + j.label + "': a loss channel cannot cascade");
    }
    for (const auto& c : j.cascade) check_jump(c, dim, false);
    (void)cascade_rate(j);
  }
}

}  // namespace

LindbladModel::LindbladModel(HilbertSpec spec, std::vector<Segment> schedule,
                             std::vector<JumpOperator> jumps)
    : spec_(std::move(spec)), schedule_(std::move(schedule)), jumps_(std::move(jumps)) {
  spec_.validate();
  if (schedule_.empty()) throw ConfigError("LindbladModel: empty schedule");
  for (std::size_t i = 0; i < schedule_.size(); ++i) {
    const auto& seg = schedule_[i];
    if (!(seg.duration > 0.0) || !std::isfinite(seg.duration)) {
      throw ConfigError("LindbladModel: segment " + std::to_string(i) + " has non-positive duration");
    }
    check_square(seg.hamiltonian, spec_.full_dim, "segment " + std::to_string(i) + " Hamiltonian");
    if (!seg.hamiltonian.allFinite() || !is_hermitian(seg.hamiltonian, 1e-12)) {
      throw ConfigError("LindbladModel: segment " + std::to_string(i) +
                        " Hamiltonian is not Hermitian");
    }
  }
  for (const auto& j : jumps_) check_jump(j, spec_.full_dim, true);
}

double LindbladModel::total_duration() const {
  double t = 0.0;
  for (const auto& s : schedule_) t += s.duration;
  return t;
}

double cascade_rate(const JumpOperator& parent) {
  if (parent.cascade.empty()) throw ConfigError("cascade_rate: '" + parent.label + "' has no cascade");
  CMatrix total = CMatrix::Zero(parent.op.rows(), parent.op.cols());
  for (const auto& c : parent.cascade) total += c.op.adjoint() * c.op;
  const double parent_weight = (parent.op.adjoint() * parent.op).trace().real();
  if (parent_weight == 0.0) return 1.0;
  const double s = (parent.op.adjoint() * total * parent.op).trace().real() / parent_weight;
  const CMatrix defect = total * parent.op - s * parent.op;
  const double scale = std::max(1.0, total.cwiseAbs().maxCoeff()) * parent.op.cwiseAbs().maxCoeff();
  if (!(s > 0.0) || defect.cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw ConfigError("cascade of '" + parent.label +
                      "' does not have a uniform total rate on the range of the parent jump");
  }
  return s;
}

// ---------------------------------------------------------------------------

OperatorBasis::OperatorBasis(std::string name, std::vector<CMatrix> ops,
                             std::vector<std::string> labels)
    : name_(std::move(name)), ops_(std::move(ops)), labels_(std::move(labels)) {
  if (ops_.empty()) throw ConfigError("operator basis '" + name_ + "' is empty");
  dim_ = static_cast<std::size_t>(ops_.front().rows());
  if (ops_.size() != dim_ * dim_) {
    throw ConfigError("operator basis '" + name_ + "' must have D^2 elements");
  }
  if (labels_.size() != ops_.size()) {
    throw ConfigError("operator basis '" + name_ + "': one label per operator required");
  }
  for (const auto& op : ops_) check_square(op, dim_, "basis operator");
}

OperatorBasis pauli_basis(std::size_t num_qubits) {
  if (num_qubits == 0) throw ConfigError("pauli_basis: num_qubits must be at least 1");
  const char names[4] = {'I', 'X', 'Y', 'Z'};
  std::array<CMatrix, 4> sigma;
  sigma[0] = CMatrix::Identity(2, 2);
  sigma[1] = CMatrix::Zero(2, 2);
  sigma[1](0, 1) = sigma[1](1, 0) = 1.0;
  sigma[2] = CMatrix::Zero(2, 2);
  sigma[2](0, 1) = -kI;
  sigma[2](1, 0) = kI;
  sigma[3] = CMatrix::Zero(2, 2);
  sigma[3](0, 0) = 1.0;
  sigma[3](1, 1) = -1.0;

  const std::size_t count = std::size_t{1} << (2 * num_qubits);
  std::vector<CMatrix> ops;
  std::vector<std::string> labels;
  ops.reserve(count);
  labels.reserve(count);
  for (std::size_t m = 0; m < count; ++m) {
    CMatrix op = CMatrix::Identity(1, 1);
    std::string label;
    for (std::size_t q = 0; q < num_qubits; ++q) {
      const std::size_t digit = (m >> (2 * (num_qubits - 1 - q))) & 3u;
      op = kron(op, sigma[digit]);
      label.push_back(names[digit]);
    }
    ops.push_back(std::move(op));
    labels.push_back(std::move(label));
  }
  return OperatorBasis("pauli", std::move(ops), std::move(labels));
}

EntangledInput maximally_entangled_input(const HilbertSpec& spec) {
  spec.validate();
  const std::size_t dq = spec.qubit_dim();
  EntangledInput in;
  in.full_dim = spec.full_dim;
  in.qubit_dim = dq;
  in.normalization_scale = std::sqrt(static_cast<double>(dq));
  in.state = CVector::Zero(static_cast<Eigen::Index>(spec.full_dim * dq));
  for (std::size_t r = 0; r < dq; ++r) {
    in.state(static_cast<Eigen::Index>(spec.qubit_index_map[r] * dq + r)) =
        1.0 / in.normalization_scale;
  }
  return in;
}

// ---------------------------------------------------------------------------

KappaSystem::KappaSystem(CMatrix kappa, CMatrix bip_basis, std::string basis_name)
    : kappa_(std::move(kappa)), bip_basis_(std::move(bip_basis)) {
  const auto n = kappa_.rows();
  computational_ = bip_basis_.isIdentity(0.0);
  lu_.compute(kappa_);
  if (lu_.rank() < n) {
    throw ConfigError("operator basis '" + basis_name +
                      "' yields a singular kappa matrix (rank " + std::to_string(lu_.rank()) +
                      " of " + std::to_string(n) + ")");
  }
}

CVector KappaSystem::lambda_from_amplitudes(const CVector& amplitudes) const {
  if (computational_) return amplitudes;
  return bip_basis_.adjoint() * amplitudes;
}

CVector KappaSystem::solve(const CVector& lambda) const { return lu_.solve(lambda); }

double KappaSystem::residual(const CVector& zeta, const CVector& lambda) const {
  return (kappa_ * zeta - lambda).norm() / std::max(1.0, lambda.norm());
}

KappaSystem build_kappa(const OperatorBasis& basis, const EntangledInput& input,
                        const CMatrix& bip_basis) {
  const std::size_t dq = basis.dim();
  if (input.qubit_dim != dq) {
    throw ConfigError("build_kappa: operator basis dimension does not match the qubit register");
  }
  const auto n = static_cast<Eigen::Index>(dq * dq);
  if (bip_basis.rows() != n || bip_basis.cols() != n) {
    throw ConfigError("build_kappa: bipartite basis must be D_q^2 x D_q^2");
  }
  if ((bip_basis.adjoint() * bip_basis - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10) {
    throw ConfigError("build_kappa: bipartite basis is not orthonormal");
  }
  CMatrix raw(n, n);
  for (std::size_t m = 0; m < basis.size(); ++m) {
    const CMatrix& e = basis.op(m);
    for (std::size_t p = 0; p < dq; ++p) {
      for (std::size_t r = 0; r < dq; ++r) {
        raw(static_cast<Eigen::Index>(p * dq + r), static_cast<Eigen::Index>(m)) =
            e(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(r));
      }
    }
  }
  CMatrix kappa = bip_basis.isIdentity(0.0) ? raw : CMatrix(bip_basis.adjoint() * raw);
  return KappaSystem(std::move(kappa), bip_basis, basis.name());
}

KappaSystem build_kappa(const OperatorBasis& basis, const EntangledInput& input) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  return build_kappa(basis, input, CMatrix::Identity(n, n));
}

CMatrix build_K(const OperatorBasis& basis) {
  const std::size_t dq = basis.dim();
  if (dq > kMaxKTensorDim) {
    throw ConfigError("build_K: refusing D_q = " + std::to_string(dq) +
                      " (the K tensor has D_q^8 entries; limit is D_q <= 8)");
  }
  const std::size_t n2 = dq * dq;
  const auto rows = static_cast<Eigen::Index>(n2 * n2);
  CMatrix k = CMatrix::Zero(rows, rows);
  for (std::size_t m = 0; m < n2; ++m) {
    const CMatrix& em = basis.op(m);
    for (std::size_t n = 0; n < n2; ++n) {
      const CMatrix& en = basis.op(n);
      const auto col = static_cast<Eigen::Index>(m * n2 + n);
      for (std::size_t r = 0; r < dq; ++r) {
        for (std::size_t s = 0; s < dq; ++s) {
          for (std::size_t p = 0; p < dq; ++p) {
            const cd left = em(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(r));
            if (left == cd{}) continue;
            for (std::size_t q = 0; q < dq; ++q) {
              // <s|E_n^dagger|q> = conj(<q|E_n|s>)
              const cd right =
                  std::conj(en(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(s)));
              k(static_cast<Eigen::Index>(lambda_index(dq, r, s, p, q)), col) = left * right;
            }
          }
        }
      }
    }
  }
  return k;
}

}  // namespace aawf
