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

#include "aawf/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "aawf/simd/kernels.hpp"

namespace aawf {

namespace {

using RowMajorCMatrix = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_hermitian(const CMatrix& a, const char* what) {
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (hermiticity_defect(a) > 1e-8 * scale) {
    throw NumericError(std::string(what) + ": matrix is not Hermitian");
  }
}

// Hermitian square root after clipping small negative eigenvalues.
CMatrix psd_sqrt(const CMatrix& a, double clip) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (a + a.adjoint()));
  RVector ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  const double noise = 16.0 * static_cast<double>(ev.size()) * std::numeric_limits<double>::epsilon() * scale;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -clip * scale) {
      std::ostringstream msg;
      msg << "fidelity: eigenvalue " << ev(i) << " below the clipping floor " << -clip;
      throw NumericError(msg.str());
    }
    ev(i) = ev(i) <= noise ? 0.0 : std::sqrt(ev(i));
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

ZetaVector zeta_from_state(const KappaSystem& kappa, const HilbertSpec& spec,
                           const CVector& final_state, std::size_t source, bool jumped) {
  const std::size_t dq = spec.qubit_dim();
  if (static_cast<std::size_t>(final_state.size()) != spec.full_dim * dq) {
    throw ConfigError("zeta_from_state: state is not on principal (x) ancilla");
  }
  const double scale = std::sqrt(static_cast<double>(dq));
  CVector amp(static_cast<Eigen::Index>(dq * dq));
  for (std::size_t p = 0; p < dq; ++p) {
    for (std::size_t a = 0; a < dq; ++a) {
      amp(static_cast<Eigen::Index>(p * dq + a)) =
          scale * final_state(static_cast<Eigen::Index>(spec.qubit_index_map[p] * dq + a));
    }
  }
  const CVector lambda = kappa.lambda_from_amplitudes(amp);
  ZetaVector z;
  z.coeffs = kappa.solve(lambda);
  z.source = source;
  z.jumped = jumped;
  const double res = kappa.residual(z.coeffs, lambda);
  if (!(res <= 1e-10)) {
    std::ostringstream msg;
    msg << "zeta solve residual " << res << " exceeds 1e-10";
    throw NumericError(msg.str());
  }
  return z;
}

ChiAccumulator::ChiAccumulator(std::size_t size) : size_(size), sum_(size * size) {}

void ChiAccumulator::add(const ZetaVector& zeta) {
  if (static_cast<std::size_t>(zeta.coeffs.size()) != size_) {
    throw ConfigError("ChiAccumulator: zeta length mismatch");
  }
  simd::active_kernels().her_rank1(1.0, zeta.coeffs.data(), sum_.data(), size_);
  if (zeta.jumped) {
    ++jumped_;
  } else {
    ++no_jump_;
  }
}

void ChiAccumulator::merge(const ChiAccumulator& other) {
  if (other.size_ != size_) throw ConfigError("ChiAccumulator: size mismatch");
  for (std::size_t i = 0; i < sum_.size(); ++i) sum_[i] += other.sum_[i];
  no_jump_ += other.no_jump_;
  jumped_ += other.jumped_;
  disposed_ += other.disposed_;
}

ChiMatrix ChiAccumulator::finish() const {
  const std::size_t n = total();
  if (n == 0) throw ConfigError("cannot form chi from an empty ensemble");
  const auto s = static_cast<Eigen::Index>(size_);
  ChiMatrix out;
  out.data = Eigen::Map<const RowMajorCMatrix>(sum_.data(), s, s) / static_cast<double>(n);
  out.meta.n = n;
  out.meta.no_jump = no_jump_;
  out.meta.jumped = jumped_ + disposed_;
  out.meta.disposed = disposed_;
  return out;
}

ChiMatrix accumulate_chi(const std::vector<ZetaVector>& zetas, std::size_t disposed_count,
                         std::size_t n_total) {
  if (n_total != zetas.size() + disposed_count || n_total == 0) {
    throw ConfigError("accumulate_chi: n_total must equal the zeta count plus disposed count");
  }
  const std::size_t size = zetas.empty() ? 0 : static_cast<std::size_t>(zetas.front().coeffs.size());
  ChiAccumulator acc(size);
  for (const auto& z : zetas) acc.add(z);
  for (std::size_t i = 0; i < disposed_count; ++i) acc.add_disposed();
  return acc.finish();
}

ChiSplit split_chi(const std::vector<ZetaVector>& zetas, std::size_t disposed_count) {
  if (zetas.empty()) throw ConfigError("split_chi: no zeta vectors");
  const auto size = zetas.front().coeffs.size();
  ChiSplit out;
  out.chi_s = CMatrix::Zero(size, size);
  out.chi_j = CMatrix::Zero(size, size);
  for (const auto& z : zetas) {
    if (z.jumped) {
      out.chi_j.noalias() += z.coeffs * z.coeffs.adjoint();
      ++out.jumped;
    } else {
      out.chi_s.noalias() += z.coeffs * z.coeffs.adjoint();
      ++out.no_jump;
    }
  }
  out.jumped += disposed_count;
  out.n = out.no_jump + out.jumped;
  if (out.no_jump > 0) out.chi_s /= static_cast<double>(out.no_jump);
  if (out.jumped > 0) out.chi_j /= static_cast<double>(out.jumped);
  return out;
}

EnsembleChi ensemble_chi(const std::vector<Trajectory>& trajectories, const KappaSystem& kappa,
                         const HilbertSpec& spec, std::size_t workers) {
  if (trajectories.empty()) throw ConfigError("ensemble_chi: no trajectories");
  std::vector<std::optional<ZetaVector>> zetas(trajectories.size());
  parallel_for(trajectories.size(), workers, [&](std::size_t i) {
    const Trajectory& tr = trajectories[i];
    if (tr.final_state) zetas[i] = zeta_from_state(kappa, spec, *tr.final_state, i, !tr.no_jump());
  });
  const std::size_t size = spec.qubit_dim() * spec.qubit_dim();
  ChiAccumulator acc(size);
  EnsembleChi out;
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    if (!zetas[i]) {
      acc.add_disposed();
      continue;
    }
    acc.add(*zetas[i]);
    if (!zetas[i]->jumped && !out.first_no_jump) {
      out.first_no_jump = *zetas[i];
      out.survival = trajectories[i].survival_record;
    }
  }
  out.chi = acc.finish();
  return out;
}

CVector basis_coefficients(const CMatrix& a, const OperatorBasis& basis) {
  const auto d = static_cast<Eigen::Index>(basis.dim());
  if (a.rows() != d || a.cols() != d) throw ConfigError("operator dimension does not match the basis");
  CMatrix design(d * d, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t m = 0; m < basis.size(); ++m) {
    design.col(static_cast<Eigen::Index>(m)) = basis.op(m).reshaped();
  }
  const CVector target = a.reshaped();
  return design.colPivHouseholderQr().solve(target);
}

ChiMatrix operator_chi(const CMatrix& a, const OperatorBasis& basis) {
  const CVector c = basis_coefficients(a, basis);
  ChiMatrix out;
  out.data = c * c.adjoint();
  out.meta.labels = basis.labels();
  return out;
}

ChiMatrix ideal_chi(const CMatrix& target_unitary, const OperatorBasis& basis) {
  const auto d = target_unitary.rows();
  if (target_unitary.cols() != d ||
      (target_unitary.adjoint() * target_unitary - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10) {
    throw ConfigError("ideal_chi: target is not unitary");
  }
  return operator_chi(target_unitary, basis);
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ConfigError("trace_distance: dimension mismatch");
  }
  require_hermitian(a, "trace_distance");
  require_hermitian(b, "trace_distance");
  const CMatrix diff = a - b;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const ChiMatrix& a, const ChiMatrix& b) { return trace_distance(a.data, b.data); }

double fidelity_clip_for(std::optional<std::size_t> n) {
  return (n && *n >= 500) ? kFidelityClipLargeEnsemble : kFidelityClip;
}

double fidelity(const CMatrix& a, const CMatrix& b, double clip) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ConfigError("fidelity: dimension mismatch");
  require_hermitian(a, "fidelity");
  require_hermitian(b, "fidelity");
  const CMatrix prod = psd_sqrt(a, clip) * psd_sqrt(b, clip);
  Eigen::JacobiSVD<CMatrix> svd(prod);
  return svd.singularValues().sum();
}

double fidelity(const ChiMatrix& a, const ChiMatrix& b) {
  const double clip = std::max(fidelity_clip_for(a.meta.n), fidelity_clip_for(b.meta.n));
  return fidelity(a.data, b.data, clip);
}

double fidelity_rank1(const CVector& c, const CMatrix& b, double clip) {
  require_hermitian(b, "fidelity_rank1");
  const CMatrix root = psd_sqrt(b, clip);
  const CMatrix clipped = root * root;
  const double v = (c.adjoint() * clipped * c)(0, 0).real();
  return std::sqrt(std::max(v, 0.0));
}

double nojump_upper_bound(const CMatrix& chi_ideal, const CMatrix& chi_s, std::size_t no_jump,
                          std::size_t n) {
  if (no_jump == 0 || n == 0) {
    throw NumericError("no-jump upper bound is undefined without a surviving no-jump trajectory");
  }
  if (no_jump > n) throw ConfigError("nojump_upper_bound: S exceeds n");
  const double fs = static_cast<double>(no_jump) / static_cast<double>(n);
  const double fj = static_cast<double>(n - no_jump) / static_cast<double>(n);
  return trace_distance(chi_ideal, fs * chi_s) + 0.5 * fj;
}

double single_trajectory_upper_bound(const CMatrix& chi_ideal, const CMatrix& chi_s,
                                     double survival) {
  if (!(survival > 0.0) || survival > 1.0 + 1e-12) {
    throw NumericError("single-trajectory bound needs a survival probability in (0, 1]");
  }
  const double p = std::min(survival, 1.0);
  return trace_distance(chi_ideal, p * chi_s) + 0.5 * (1.0 - p);
}

}  // namespace aawf
