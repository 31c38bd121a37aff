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

// Two-atom Rydberg-blockade C-PHASE gate.
//
// Per atom the levels are |0>, |1> (qubit), |r> (Rydberg) and |p> (the
// eliminated intermediate state, reintroduced only as the landing level of
// |r> decay). Loss to |g> is not represented; jumps into it dispose the
// trajectory. All frequencies and rates are angular (rad/s).

#pragma once

#include <optional>

#include "aawf/model.hpp"

namespace aawf::rydberg {

inline constexpr std::size_t kLevel0 = 0;
inline constexpr std::size_t kLevel1 = 1;
inline constexpr std::size_t kLevelR = 2;
inline constexpr std::size_t kLevelP = 3;

/// Converts a linear frequency in MHz (value / 2pi) to rad/s.
double mhz_to_angular(double mhz_over_2pi);

struct Branching {
  double c0 = 0.12;
  double c1 = 0.32;
  double cg = 0.56;
};

struct RydbergParams {
  double delta = 0.0;
  double omega_r = 0.0;
  double omega_b = 0.0;
  double blockade = 0.0;
  double gamma_p = 0.0;
  double gamma_r = 0.0;
  double gamma_d = 0.0;
  Branching branching;
  /// |0> light-shift compensation; defaults to Delta Omega_R^2 / (4 Delta^2 + gamma^2).
  std::optional<double> delta_e0;

  /// Delta/2pi = 2 GHz, Omega_R/2pi = 118 MHz, Omega_B/2pi = 39 MHz,
  /// B/2pi = 20 MHz, gamma_p/2pi = 6.07 MHz, gamma_r/2pi = 0.53 kHz and the
  /// given gamma_d/2pi.
  static RydbergParams operating_point(double gamma_d_khz_over_2pi = 1.0);

  /// Throws ConfigError on negative rates, zero detuning or bad branching.
  void validate() const;

  /// gamma = sum_j c_j gamma_p
  double gamma() const;

  /// Copy with gamma_p = gamma_r = gamma_d = 0.
  RydbergParams without_dissipation() const;
};

/// [16 D^2 (Omega_B^2 - Omega_R^2) - Omega_R^4] / (64 D^3)
double delta_Er(const RydbergParams& p);

/// 2 (2D - dEr) Omega_R Omega_B / (8 D (D - dEr) + 2 gamma^2)
double omega_eff(const RydbergParams& p);

double default_delta_e0(const RydbergParams& p);

/// pi / Omega_eff
double pi_pulse_time(const RydbergParams& p);

/// 4x4, |p> row and column zero.
CMatrix single_atom_hamiltonian(const RydbergParams& p);

/// gamma_p,{0,1,g}, gamma_d, gamma_r (with its |p> cascade), in that order.
std::vector<JumpOperator> single_atom_jump_operators(const RydbergParams& p);

/// Control pi, target 2pi, control pi; blockade B|rr><rr| and every jump
/// channel of both atoms active throughout. Control atom is the more
/// significant tensor factor.
LindbladModel build_cphase_model(const RydbergParams& p);

/// One atom, one pi pulse, qubit {|0>, |1>}.
LindbladModel build_single_atom_pulse_model(const RydbergParams& p);

/// diag(1, -1, -1, -1)
CMatrix ideal_cphase();

}  // namespace aawf::rydberg
