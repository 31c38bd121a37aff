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

#include "aawf/mastereq.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "aawf/ode.hpp"

namespace aawf {

DensityMatrix DensityMatrix::pure(const CVector& psi) { return {psi * psi.adjoint()}; }

void DensityMatrix::validate(double tol) const {
  if (data.rows() != data.cols()) throw NumericError("density matrix is not square");
  if (hermiticity_defect(data) > tol) throw NumericError("density matrix is not Hermitian");
  if (data.trace().real() > 1.0 + tol) throw NumericError("density matrix trace exceeds 1");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(data, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-8) throw NumericError("density matrix is not positive");
}

// ---------------------------------------------------------------------------

std::vector<CMatrix> recycling_operators(const LindbladModel& model) {
  std::vector<CMatrix> out;
  for (const auto& j : model.jumps()) {
    if (j.cascade.empty()) {
      if (!j.to_loss) out.push_back(j.op);
      continue;
    }
    const double s = cascade_rate(j);
    for (const auto& c : j.cascade) {
      if (!c.to_loss) out.push_back(c.op * j.op / std::sqrt(s));
    }
  }
  return out;
}

LindbladGenerator::LindbladGenerator(const LindbladModel& model, std::size_t segment,
                                     std::size_t ancilla_dim) {
  const auto d = static_cast<Eigen::Index>(model.full_dim());
  CMatrix decay = CMatrix::Zero(d, d);
  for (const auto& j : model.jumps()) decay += j.op.adjoint() * j.op;
  CMatrix drift = -kI * model.schedule().at(segment).hamiltonian - 0.5 * decay;
  std::vector<CMatrix> recycle = recycling_operators(model);
  if (ancilla_dim > 1) {
    const CMatrix id = CMatrix::Identity(static_cast<Eigen::Index>(ancilla_dim),
                                         static_cast<Eigen::Index>(ancilla_dim));
    drift = kron(drift, id);
    for (auto& c : recycle) c = kron(c, id);
  }
  auto sparse = [](const CMatrix& m) {
    SparseC out = m.sparseView(0.0, 0.0);
    out.makeCompressed();
    return out;
  };
  dim_ = drift.rows();
  drift_ = sparse(drift);
  drift_adj_ = sparse(drift.adjoint());
  for (const auto& c : recycle) {
    recycle_.push_back(sparse(c));
    recycle_adj_.push_back(sparse(c.adjoint()));
  }
}

void LindbladGenerator::apply(const cd* x, cd* dx) const {
  Eigen::Map<const CMatrix> xm(x, dim_, dim_);
  Eigen::Map<CMatrix> out(dx, dim_, dim_);
  out.noalias() = drift_ * xm;
  out.noalias() += xm * drift_adj_;
  CMatrix tmp(dim_, dim_);
  for (std::size_t k = 0; k < recycle_.size(); ++k) {
    tmp.noalias() = recycle_[k] * xm;
    out.noalias() += tmp * recycle_adj_[k];
  }
}

CMatrix LindbladGenerator::apply(const CMatrix& x) const {
  CMatrix out(x.rows(), x.cols());
  apply(x.data(), out.data());
  return out;
}

CMatrix propagate_operator(const LindbladModel& model, const CMatrix& x0, OdeTolerances tol) {
  const std::size_t full = model.full_dim();
  const std::size_t dq = model.spec().qubit_dim();
  std::size_t ancilla = 0;
  if (static_cast<std::size_t>(x0.rows()) == full) {
    ancilla = 1;
  } else if (static_cast<std::size_t>(x0.rows()) == full * dq) {
    ancilla = dq;
  }
  if (ancilla == 0 || x0.rows() != x0.cols()) {
    throw ConfigError("propagate: matrix dimension matches neither the model nor its ancilla extension");
  }
  CMatrix x = x0;
  double t = 0.0;
  for (std::size_t k = 0; k < model.schedule().size(); ++k) {
    const LindbladGenerator gen(model, k, ancilla);
    auto rhs = [&gen](double, const cd* y, cd* dy) { gen.apply(y, dy); };
    const double t_end = t + model.schedule()[k].duration;
    try {
      DormandPrince::integrate(rhs, t, t_end, std::span<cd>(x.data(), static_cast<std::size_t>(x.size())), tol);
    } catch (const NumericError& e) {
      std::ostringstream msg;
      msg << "master equation integration failed in segment " << k << " (t in [" << t << ", "
          << t_end << "]): " << e.what();
      throw NumericError(msg.str());
    }
    t = t_end;
  }
  return x;
}

DensityMatrix propagate_density(const LindbladModel& model, const DensityMatrix& rho0,
                                OdeTolerances tol) {
  rho0.validate(1e-10);
  return {propagate_operator(model, rho0.data, tol)};
}

// ---------------------------------------------------------------------------

LambdaTensor sqpc_lambda(const LindbladModel& model, OdeTolerances tol) {
  const auto& spec = model.spec();
  const std::size_t dq = spec.qubit_dim();
  const auto full = static_cast<Eigen::Index>(spec.full_dim);
  LambdaTensor lam{dq, CVector::Zero(static_cast<Eigen::Index>(dq * dq * dq * dq))};
  for (std::size_t r = 0; r < dq; ++r) {
    for (std::size_t s = 0; s < dq; ++s) {
      CMatrix o = CMatrix::Zero(full, full);
      o(static_cast<Eigen::Index>(spec.qubit_index_map[r]),
        static_cast<Eigen::Index>(spec.qubit_index_map[s])) = 1.0;
      const CMatrix out = propagate_operator(model, o, tol);
      for (std::size_t p = 0; p < dq; ++p) {
        for (std::size_t q = 0; q < dq; ++q) {
          lam.entries(static_cast<Eigen::Index>(lambda_index(dq, r, s, p, q))) =
              out(static_cast<Eigen::Index>(spec.qubit_index_map[p]),
                  static_cast<Eigen::Index>(spec.qubit_index_map[q]));
        }
      }
    }
  }
  return lam;
}

CMatrix entangled_super_operator(const HilbertSpec& spec) {
  const std::size_t dq = spec.qubit_dim();
  const auto n = static_cast<Eigen::Index>(spec.full_dim * dq);
  CMatrix o = CMatrix::Zero(n, n);
  for (std::size_t r = 0; r < dq; ++r) {
    for (std::size_t s = 0; s < dq; ++s) {
      o(static_cast<Eigen::Index>(spec.qubit_index_map[r] * dq + r),
        static_cast<Eigen::Index>(spec.qubit_index_map[s] * dq + s)) = 1.0;
    }
  }
  return o;
}

CMatrix extract_channel_output(const HilbertSpec& spec, const CMatrix& out, std::size_t r,
                               std::size_t s) {
  const std::size_t dq = spec.qubit_dim();
  const auto full = static_cast<Eigen::Index>(spec.full_dim);
  const auto da = static_cast<Eigen::Index>(dq);
  CMatrix flip = CMatrix::Zero(da, da);
  flip(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(r)) = 1.0;
  const CMatrix sandwiched = kron(CMatrix::Identity(full, full), flip) * out;
  CMatrix reduced = CMatrix::Zero(full, full);
  for (Eigen::Index p = 0; p < full; ++p) {
    for (Eigen::Index q = 0; q < full; ++q) {
      cd acc{};
      for (Eigen::Index a = 0; a < da; ++a) acc += sandwiched(p * da + a, q * da + a);
      reduced(p, q) = acc;
    }
  }
  CMatrix projected(da, da);
  for (std::size_t p = 0; p < dq; ++p) {
    for (std::size_t q = 0; q < dq; ++q) {
      projected(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) =
          reduced(static_cast<Eigen::Index>(spec.qubit_index_map[p]),
                  static_cast<Eigen::Index>(spec.qubit_index_map[q]));
    }
  }
  return projected;
}

LambdaTensor aapc_lambda(const LindbladModel& model, OdeTolerances tol) {
  const auto& spec = model.spec();
  const std::size_t dq = spec.qubit_dim();
  const CMatrix out = propagate_operator(model, entangled_super_operator(spec), tol);
  LambdaTensor lam{dq, CVector::Zero(static_cast<Eigen::Index>(dq * dq * dq * dq))};
  for (std::size_t r = 0; r < dq; ++r) {
    for (std::size_t s = 0; s < dq; ++s) {
      const CMatrix e = extract_channel_output(spec, out, r, s);
      for (std::size_t p = 0; p < dq; ++p) {
        for (std::size_t q = 0; q < dq; ++q) {
          lam.entries(static_cast<Eigen::Index>(lambda_index(dq, r, s, p, q))) =
              e(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
        }
      }
    }
  }
  return lam;
}

ChiMatrix chi_from_lambda(const OperatorBasis& basis, const CMatrix& k_tensor,
                          const LambdaTensor& lambda, ChiSolveReport* report) {
  if (lambda.dim != basis.dim() || k_tensor.rows() != lambda.entries.size()) {
    throw ConfigError("chi_from_lambda: K tensor, Lambda and basis dimensions disagree");
  }
  Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(k_tensor);
  const CVector x = cod.solve(lambda.entries);
  const std::size_t n2 = basis.size();
  CMatrix chi(static_cast<Eigen::Index>(n2), static_cast<Eigen::Index>(n2));
  for (std::size_t m = 0; m < n2; ++m) {
    for (std::size_t n = 0; n < n2; ++n) {
      chi(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) =
          x(static_cast<Eigen::Index>(m * n2 + n));
    }
  }
  ChiSolveReport rep;
  rep.rank = cod.rank();
  rep.unknowns = k_tensor.cols();
  {
    Eigen::BDCSVD<CMatrix> svd(k_tensor);
    const auto& sv = svd.singularValues();
    rep.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                            : std::numeric_limits<double>::infinity();
  }
  rep.hermiticity_defect = hermiticity_defect(chi);
  if (rep.rank < rep.unknowns) {
    std::clog << "warning: K tensor of basis '" << basis.name() << "' is rank deficient ("
              << rep.rank << " of " << rep.unknowns << ", condition " << rep.condition
              << "); using the minimum-norm solution\n";
  }
  if (report != nullptr) *report = rep;

  ChiMatrix out;
  // the integrator leaves a Hermiticity defect at the tolerance level
  out.data = 0.5 * (chi + chi.adjoint());
  out.meta.labels = basis.labels();
  return out;
}

ChiMatrix sqpc_characterize(const LindbladModel& model, const OperatorBasis& basis,
                            OdeTolerances tol) {
  if (basis.dim() != model.spec().qubit_dim()) {
    throw ConfigError("sqpc_characterize: basis dimension does not match the qubit register");
  }
  const CMatrix k = build_K(basis);
  return chi_from_lambda(basis, k, sqpc_lambda(model, tol));
}

ChiMatrix aapc_characterize_density(const LindbladModel& model, const OperatorBasis& basis,
                                    OdeTolerances tol) {
  if (basis.dim() != model.spec().qubit_dim()) {
    throw ConfigError("aapc_characterize_density: basis dimension does not match the qubit register");
  }
  const CMatrix k = build_K(basis);
  return chi_from_lambda(basis, k, aapc_lambda(model, tol));
}

}  // namespace aawf
