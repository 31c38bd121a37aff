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

#include <doctest.h>

#include <random>

#include <Eigen/QR>

#include "aawf/model.hpp"

using namespace aawf;

namespace {

CMatrix random_unitary(Eigen::Index d, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CMatrix a(d, d);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = cd(g(rng), g(rng));
  Eigen::HouseholderQR<CMatrix> qr(a);
  return qr.householderQ();
}

HilbertSpec two_level() { return HilbertSpec::qubits(1); }

}  // namespace

TEST_CASE("Pauli basis order and normalisation") {
  const OperatorBasis b = pauli_basis(2);
  REQUIRE(b.size() == 16);
  CHECK(b.labels()[0] == "II");
  CHECK(b.labels()[1] == "IX");
  CHECK(b.labels()[4] == "XI");
  CHECK(b.labels()[15] == "ZZ");
  CHECK(b.op(0).isIdentity());
  for (std::size_t m = 0; m < b.size(); ++m) {
    for (std::size_t n = 0; n < b.size(); ++n) {
      const cd ip = (b.op(m).adjoint() * b.op(n)).trace();
      CHECK(std::abs(ip - (m == n ? 4.0 : 0.0)) < 1e-14);
    }
  }
}

TEST_CASE("kappa^dagger kappa = D_q 1 for the Pauli basis") {
  for (std::size_t nq : {1u, 2u}) {
    const HilbertSpec spec = HilbertSpec::qubits(nq);
    const OperatorBasis b = pauli_basis(nq);
    const KappaSystem k = build_kappa(b, maximally_entangled_input(spec));
    const auto dq = static_cast<Eigen::Index>(spec.qubit_dim());
    const CMatrix gram = k.kappa().adjoint() * k.kappa();
    CHECK((gram - static_cast<double>(dq) * CMatrix::Identity(dq * dq, dq * dq)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("kappa columns hold <p|E_m|r>") {
  const OperatorBasis b = pauli_basis(1);
  const KappaSystem k = build_kappa(b, maximally_entangled_input(two_level()));
  for (std::size_t m = 0; m < 4; ++m) {
    for (std::size_t p = 0; p < 2; ++p) {
      for (std::size_t r = 0; r < 2; ++r) {
        CHECK(std::abs(k.kappa()(static_cast<Eigen::Index>(p * 2 + r), static_cast<Eigen::Index>(m)) -
                       b.op(m)(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(r))) < 1e-15);
      }
    }
  }
}

TEST_CASE("a rotated bipartite basis gives the same zeta") {
  const HilbertSpec spec = HilbertSpec::qubits(1);
  const OperatorBasis b = pauli_basis(1);
  const EntangledInput in = maximally_entangled_input(spec);
  const KappaSystem comp = build_kappa(b, in);
  const KappaSystem rot = build_kappa(b, in, random_unitary(4, 3));
  CHECK(!rot.computational_bip_basis());
  // (X (x) 1) |Psi>> scaled by sqrt(D_q)
  CVector amp = CVector::Zero(4);
  amp(1 * 2 + 0) = 1.0;
  amp(0 * 2 + 1) = 1.0;
  const CVector z1 = comp.solve(comp.lambda_from_amplitudes(amp));
  const CVector z2 = rot.solve(rot.lambda_from_amplitudes(amp));
  CHECK((z1 - z2).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(std::abs(z1(1)) - 1.0) < 1e-12);
}

TEST_CASE("K contracted with c c^dagger reproduces U |r><s| U^dagger") {
  for (std::size_t nq : {1u, 2u}) {
    const OperatorBasis b = pauli_basis(nq);
    const auto dq = static_cast<Eigen::Index>(b.dim());
    const CMatrix u = random_unitary(dq, 17 + static_cast<unsigned>(nq));
    CVector c(static_cast<Eigen::Index>(b.size()));
    for (std::size_t m = 0; m < b.size(); ++m) {
      c(static_cast<Eigen::Index>(m)) = (b.op(m).adjoint() * u).trace() / static_cast<double>(dq);
    }
    const CMatrix chi = c * c.adjoint();
    CVector x(chi.size());
    for (Eigen::Index m = 0; m < chi.rows(); ++m) {
      for (Eigen::Index n = 0; n < chi.cols(); ++n) x(m * chi.cols() + n) = chi(m, n);
    }
    const CVector lam = build_K(b) * x;
    double worst = 0.0;
    for (Eigen::Index r = 0; r < dq; ++r) {
      for (Eigen::Index s = 0; s < dq; ++s) {
        CMatrix o = CMatrix::Zero(dq, dq);
        o(r, s) = 1.0;
        const CMatrix out = u * o * u.adjoint();
        for (Eigen::Index p = 0; p < dq; ++p) {
          for (Eigen::Index q = 0; q < dq; ++q) {
            const auto idx = static_cast<Eigen::Index>(lambda_index(static_cast<std::size_t>(dq),
                static_cast<std::size_t>(r), static_cast<std::size_t>(s), static_cast<std::size_t>(p),
                static_cast<std::size_t>(q)));
            worst = std::max(worst, std::abs(lam(idx) - out(p, q)));
          }
        }
      }
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("K refuses large registers") {
  CHECK_THROWS_AS(build_K(pauli_basis(4)), ConfigError);
}

TEST_CASE("model validation") {
  const CMatrix z2 = CMatrix::Zero(2, 2);
  CMatrix bad = z2;
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(LindbladModel(two_level(), {{1.0, bad}}, {}), ConfigError);
  CHECK_THROWS_AS(LindbladModel(two_level(), {{0.0, z2}}, {}), ConfigError);
  CHECK_THROWS_AS(LindbladModel(two_level(), {}, {}), ConfigError);
  CHECK_THROWS_AS(LindbladModel(two_level(), {{1.0, CMatrix::Zero(3, 3)}}, {}), ConfigError);

  HilbertSpec s;
  s.full_dim = 3;
  s.qubit_dims = {2};
  s.qubit_index_map = {0, 0};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.qubit_index_map = {0, 2};
  s.loss_indices = {2};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.loss_indices = {1};
  CHECK_NOTHROW(s.validate());
}

TEST_CASE("cascade rates") {
  // three levels: 0, 1 and an intermediate 2; parent 1 -> 2, children 2 -> 0 and 2 -> 1
  auto kb = [](int i, int j) {
    CMatrix m = CMatrix::Zero(3, 3);
    m(i, j) = 1.0;
    return m;
  };
  JumpOperator parent{"up", 0.5 * kb(2, 1), false, {}};
  parent.cascade.push_back({"a", std::sqrt(0.3) * kb(0, 2), false, {}});
  parent.cascade.push_back({"b", std::sqrt(0.9) * kb(1, 2), false, {}});
  CHECK(cascade_rate(parent) == doctest::Approx(1.2).epsilon(1e-14));

  JumpOperator uneven{"up", kb(2, 1) + kb(0, 1), false, {}};
  uneven.cascade.push_back({"a", kb(0, 2), false, {}});
  CHECK_THROWS_AS(cascade_rate(uneven), ConfigError);

  HilbertSpec spec;
  spec.full_dim = 3;
  spec.qubit_dims = {2};
  spec.qubit_index_map = {0, 1};
  JumpOperator nested = parent;
  nested.cascade[0].cascade.push_back({"x", kb(0, 0), false, {}});
  CHECK_THROWS_AS(LindbladModel(spec, {{1.0, CMatrix::Zero(3, 3)}}, {nested}), ConfigError);
  JumpOperator lossy = parent;
  lossy.to_loss = true;
  CHECK_THROWS_AS(LindbladModel(spec, {{1.0, CMatrix::Zero(3, 3)}}, {lossy}), ConfigError);
  CHECK_NOTHROW(LindbladModel(spec, {{1.0, CMatrix::Zero(3, 3)}}, {parent}));
}
