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

#include "aawf/channels.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace aawf {
namespace {

CMatrix pauli_x() {
  CMatrix x = CMatrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  return x;
}

CMatrix pauli_z() {
  CMatrix z = CMatrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return z;
}

CMatrix lowering() {
  CMatrix l = CMatrix::Zero(2, 2);
  l(0, 1) = 1.0;
  return l;
}

CMatrix dephasing_op() {
  CMatrix d = CMatrix::Identity(2, 2);
  d(1, 1) = -1.0;
  return d;
}

void check_rates(double gamma, double duration) {
  if (!(gamma >= 0.0)) throw ConfigError("rates must be non-negative");
  if (!(duration > 0.0)) throw ConfigError("duration must be positive");
}

}  // namespace

LindbladModel amplitude_damping_model(const ChannelParams& p) {
  check_rates(p.gamma, p.duration);
  std::vector<Segment> schedule{{p.duration, p.hx * pauli_x()}};
  std::vector<JumpOperator> jumps{{"decay", std::sqrt(p.gamma) * lowering(), false, {}}};
  return LindbladModel(HilbertSpec::qubits(1), std::move(schedule), std::move(jumps));
}

LindbladModel dephasing_model(const ChannelParams& p) {
  check_rates(p.gamma, p.duration);
  std::vector<Segment> schedule{{p.duration, p.hx * pauli_x()}};
  std::vector<JumpOperator> jumps{{"dephase", std::sqrt(p.gamma) * dephasing_op(), false, {}}};
  return LindbladModel(HilbertSpec::qubits(1), std::move(schedule), std::move(jumps));
}

LindbladModel two_qubit_toy_model(const ToyTwoQubitParams& p) {
  check_rates(p.gamma, p.duration);
  check_rates(p.gamma_d, p.duration);
  const CMatrix id = CMatrix::Identity(2, 2);
  const CMatrix h = 0.5 * p.omega * (kron(pauli_x(), id) + kron(id, pauli_x())) +
                    p.coupling * kron(pauli_z(), pauli_z());
  std::vector<JumpOperator> jumps;
  jumps.push_back({"decay@0", std::sqrt(p.gamma) * kron(lowering(), id), false, {}});
  jumps.push_back({"decay@1", std::sqrt(p.gamma) * kron(id, lowering()), false, {}});
  jumps.push_back({"dephase@0", std::sqrt(p.gamma_d) * kron(dephasing_op(), id), false, {}});
  jumps.push_back({"dephase@1", std::sqrt(p.gamma_d) * kron(id, dephasing_op()), false, {}});
  return LindbladModel(HilbertSpec::qubits(2), {{p.duration, h}}, std::move(jumps));
}

CMatrix schedule_unitary(const LindbladModel& model) {
  const auto d = static_cast<Eigen::Index>(model.full_dim());
  CMatrix u = CMatrix::Identity(d, d);
  for (const auto& seg : model.schedule()) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(seg.hamiltonian);
    CVector phases(d);
    for (Eigen::Index i = 0; i < d; ++i) phases(i) = std::exp(-kI * es.eigenvalues()(i) * seg.duration);
    u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint() * u;
  }
  return u;
}

CMatrix qubit_block(const HilbertSpec& spec, const CMatrix& full) {
  const std::size_t dq = spec.qubit_dim();
  CMatrix out(static_cast<Eigen::Index>(dq), static_cast<Eigen::Index>(dq));
  for (std::size_t r = 0; r < dq; ++r) {
    for (std::size_t s = 0; s < dq; ++s) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) =
          full(static_cast<Eigen::Index>(spec.qubit_index_map[r]),
               static_cast<Eigen::Index>(spec.qubit_index_map[s]));
    }
  }
  return out;
}

}  // namespace aawf
