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

#include "aawf/rydberg.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace aawf::rydberg {

namespace {

CMatrix ket_bra(std::size_t i, std::size_t j) {
  CMatrix m = CMatrix::Zero(4, 4);
  m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
  return m;
}

JumpOperator embed(const JumpOperator& j, bool control, const std::string& prefix) {
  const CMatrix id = CMatrix::Identity(4, 4);
  JumpOperator out;
  out.label = prefix + j.label;
  out.op = control ? kron(j.op, id) : kron(id, j.op);
  out.to_loss = j.to_loss;
  for (const auto& c : j.cascade) out.cascade.push_back(embed(c, control, ""));
  return out;
}

}  // namespace

double mhz_to_angular(double mhz_over_2pi) { return 2.0 * std::numbers::pi * 1e6 * mhz_over_2pi; }

RydbergParams RydbergParams::operating_point(double gamma_d_khz_over_2pi) {
  RydbergParams p;
  p.delta = mhz_to_angular(2000.0);
  p.omega_r = mhz_to_angular(118.0);
  p.omega_b = mhz_to_angular(39.0);
  p.blockade = mhz_to_angular(20.0);
  p.gamma_p = mhz_to_angular(6.07);
  p.gamma_r = mhz_to_angular(0.53e-3);
  p.gamma_d = mhz_to_angular(gamma_d_khz_over_2pi * 1e-3);
  return p;
}

void RydbergParams::validate() const {
  if (!(delta != 0.0) || !std::isfinite(delta)) throw ConfigError("rydberg: detuning must be nonzero");
  for (double v : {omega_r, omega_b, blockade}) {
    if (!std::isfinite(v)) throw ConfigError("rydberg: non-finite frequency");
  }
  for (double v : {gamma_p, gamma_r, gamma_d, branching.c0, branching.c1, branching.cg}) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("rydberg: rates and branching ratios must be >= 0");
  }
  if (std::abs(branching.c0 + branching.c1 + branching.cg - 1.0) > 1e-12) {
    throw ConfigError("rydberg: branching ratios must sum to 1");
  }
  if (delta_e0 && !std::isfinite(*delta_e0)) throw ConfigError("rydberg: non-finite delta_e0");
}

double RydbergParams::gamma() const { return (branching.c0 + branching.c1 + branching.cg) * gamma_p; }

RydbergParams RydbergParams::without_dissipation() const {
  RydbergParams q = *this;
  q.gamma_p = q.gamma_r = q.gamma_d = 0.0;
  return q;
}

double delta_Er(const RydbergParams& p) {
  if (p.delta == 0.0) throw ConfigError("delta_Er: detuning must be nonzero");
  const double d2 = p.delta * p.delta;
  const double r2 = p.omega_r * p.omega_r;
  return (16.0 * d2 * (p.omega_b * p.omega_b - r2) - r2 * r2) / (64.0 * d2 * p.delta);
}

double omega_eff(const RydbergParams& p) {
  const double der = delta_Er(p);
  const double g = p.gamma();
  const double den = 8.0 * p.delta * (p.delta - der) + 2.0 * g * g;
  if (den == 0.0) throw ConfigError("omega_eff: vanishing denominator");
  return 2.0 * (2.0 * p.delta - der) * p.omega_r * p.omega_b / den;
}

double default_delta_e0(const RydbergParams& p) {
  const double g = p.gamma();
  const double den = 4.0 * p.delta * p.delta + g * g;
  if (den == 0.0) throw ConfigError("default_delta_e0: vanishing denominator");
  return p.delta * p.omega_r * p.omega_r / den;
}

double pi_pulse_time(const RydbergParams& p) {
  const double w = omega_eff(p);
  if (!(std::abs(w) > 0.0)) throw ConfigError("effective Rabi frequency vanishes; pulse time is infinite");
  return std::numbers::pi / std::abs(w);
}

CMatrix single_atom_hamiltonian(const RydbergParams& p) {
  p.validate();
  const double half = 0.5 * omega_eff(p);
  const double e0 = p.delta_e0.value_or(default_delta_e0(p)) - default_delta_e0(p);
  CMatrix h = half * (ket_bra(kLevel1, kLevelR) + ket_bra(kLevelR, kLevel1));
  h(0, 0) = e0;
  return h;
}

std::vector<JumpOperator> single_atom_jump_operators(const RydbergParams& p) {
  p.validate();
  const double g = p.gamma();
  const double der = delta_Er(p);
  const cd den_1 = cd(2.0 * p.delta, -g);
  const cd den_r = cd(2.0 * (p.delta - der), -g);
  const double c[3] = {p.branching.c0, p.branching.c1, p.branching.cg};
  const std::size_t target[3] = {kLevel0, kLevel1, kLevelP};
  const char* name[3] = {"0", "1", "g"};

  std::vector<JumpOperator> out;
  for (int j = 0; j < 3; ++j) {
    const double amp = std::sqrt(c[j] * p.gamma_p);
    JumpOperator l;
    l.label = std::string("gamma_p,") + name[j];
    l.op = (amp * p.omega_r / den_1) * ket_bra(target[j], kLevel1) +
           (amp * p.omega_b / den_r) * ket_bra(target[j], kLevelR);
    l.to_loss = j == 2;
    out.push_back(std::move(l));
  }

  JumpOperator deph;
  deph.label = "gamma_d";
  deph.op = std::sqrt(p.gamma_d) * (CMatrix::Identity(4, 4) - 2.0 * ket_bra(kLevelR, kLevelR));
  out.push_back(std::move(deph));

  JumpOperator decay;
  decay.label = "gamma_r";
  decay.op = std::sqrt(p.gamma_r) * ket_bra(kLevelP, kLevelR);
  for (int j = 0; j < 3; ++j) {
    JumpOperator child;
    child.label = name[j];
    // with gamma_p = 0 only the branching ratios are meaningful
    const double rate = p.gamma_p > 0.0 ? c[j] * p.gamma_p : c[j];
    child.op = std::sqrt(rate) * ket_bra(target[j], kLevelP);
    child.to_loss = j == 2;
    decay.cascade.push_back(std::move(child));
  }
  out.push_back(std::move(decay));
  return out;
}

LindbladModel build_cphase_model(const RydbergParams& p) {
  p.validate();
  const double t_pi = pi_pulse_time(p);
  const CMatrix h = single_atom_hamiltonian(p);
  const CMatrix id = CMatrix::Identity(4, 4);
  const CMatrix rr = ket_bra(kLevelR, kLevelR);
  const CMatrix blockade = p.blockade * kron(rr, rr);

  HilbertSpec spec;
  spec.full_dim = 16;
  spec.qubit_dims = {2, 2};
  spec.qubit_index_map = {0, 1, 4, 5};

  std::vector<Segment> schedule = {
      {t_pi, kron(h, id) + blockade},
      {2.0 * t_pi, kron(id, h) + blockade},
      {t_pi, kron(h, id) + blockade},
  };

  std::vector<JumpOperator> jumps;
  const auto single = single_atom_jump_operators(p);
  for (const auto& j : single) jumps.push_back(embed(j, true, "control:"));
  for (const auto& j : single) jumps.push_back(embed(j, false, "target:"));
  return LindbladModel(std::move(spec), std::move(schedule), std::move(jumps));
}

LindbladModel build_single_atom_pulse_model(const RydbergParams& p) {
  p.validate();
  HilbertSpec spec;
  spec.full_dim = 4;
  spec.qubit_dims = {2};
  spec.qubit_index_map = {0, 1};
  std::vector<Segment> schedule = {{pi_pulse_time(p), single_atom_hamiltonian(p)}};
  return LindbladModel(std::move(spec), std::move(schedule), single_atom_jump_operators(p));
}

CMatrix ideal_cphase() {
  CMatrix u = CMatrix::Zero(4, 4);
  u(0, 0) = 1.0;
  u(1, 1) = -1.0;
  u(2, 2) = -1.0;
  u(3, 3) = -1.0;
  return u;
}

}  // namespace aawf::rydberg
