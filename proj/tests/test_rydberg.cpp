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

#include <cmath>
#include <numbers>

#include "aawf/channels.hpp"
#include "aawf/mastereq.hpp"
#include "aawf/mcwf.hpp"
#include "aawf/rydberg.hpp"
#include "aawf/tomography.hpp"

using namespace aawf;
using namespace aawf::rydberg;

namespace {

constexpr double kMHz = 2.0 * std::numbers::pi * 1e6;

// Reference values evaluated independently (NumPy, double precision) from the
// same parameter set: Delta/2pi = 2 GHz, Omega_R/2pi = 118 MHz,
// Omega_B/2pi = 39 MHz, B/2pi = 20 MHz, gamma_p/2pi = 6.07 MHz,
// gamma_r/2pi = 0.53 kHz, gamma_d/2pi = 1 kHz.
constexpr double kDeltaErMHz = -1.5507536675312499;
constexpr double kOmegaEffMHz = 1.1500516637597515;
constexpr double kPiPulse = 4.347630769607331e-07;
constexpr double kExactT = 0.05293406941144201;
constexpr double kExactF = 0.9772026690221374;
constexpr double kExactTrace = 0.9742927424005626;

double dissipation_free_fidelity(RydbergParams p) {
  const LindbladModel m = build_cphase_model(p.without_dissipation());
  const CMatrix projected = qubit_block(m.spec(), schedule_unitary(m));
  const OperatorBasis b = pauli_basis(2);
  return fidelity(ideal_chi(ideal_cphase(), b).data, operator_chi(projected, b).data);
}

}  // namespace

TEST_CASE("light shift and effective Rabi frequency") {
  const RydbergParams p = RydbergParams::operating_point();
  CHECK(delta_Er(p) / kMHz == doctest::Approx(kDeltaErMHz).epsilon(1e-12));
  CHECK(delta_Er(p) < 0.0);
  CHECK(omega_eff(p) / kMHz == doctest::Approx(kOmegaEffMHz).epsilon(1e-12));
  CHECK(pi_pulse_time(p) == doctest::Approx(kPiPulse).epsilon(1e-12));

  RydbergParams equal = p;
  equal.omega_b = equal.omega_r;
  CHECK(delta_Er(equal) ==
        doctest::Approx(-std::pow(p.omega_r, 4) / (64.0 * std::pow(p.delta, 3))).epsilon(1e-13));

  RydbergParams zero = p;
  zero.gamma_p = 0.0;
  zero.omega_b = std::sqrt(p.omega_r * p.omega_r + std::pow(p.omega_r, 4) / (16.0 * p.delta * p.delta));
  CHECK(std::abs(delta_Er(zero)) < 1e-9 * std::abs(delta_Er(p)));
  CHECK(omega_eff(zero) == doctest::Approx(zero.omega_r * zero.omega_b / (2.0 * zero.delta)).epsilon(1e-12));

  RydbergParams bad = p;
  bad.delta = 0.0;
  CHECK_THROWS_AS(delta_Er(bad), ConfigError);
  bad = p;
  bad.branching.cg = 0.5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("single-atom Hamiltonian") {
  RydbergParams p = RydbergParams::operating_point();
  const CMatrix h = single_atom_hamiltonian(p);
  CHECK(is_hermitian(h, 1e-15));
  CHECK(h(0, 0) == cd(0.0));
  CHECK(h.row(3).cwiseAbs().sum() == 0.0);
  CHECK(h.col(3).cwiseAbs().sum() == 0.0);
  CHECK(h(1, 2).real() == doctest::Approx(0.5 * omega_eff(p)));
  p.delta_e0 = default_delta_e0(p) + 1e5;
  CHECK(single_atom_hamiltonian(p)(0, 0).real() == doctest::Approx(1e5).epsilon(1e-6));
}

TEST_CASE("jump operators") {
  const RydbergParams p = RydbergParams::operating_point();
  const auto jumps = single_atom_jump_operators(p);
  REQUIRE(jumps.size() == 5);
  CHECK(jumps[2].to_loss);
  const CMatrix dd = jumps[3].op.adjoint() * jumps[3].op;
  CHECK((dd - p.gamma_d * CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-9 * p.gamma_d);
  REQUIRE(jumps[4].cascade.size() == 3);
  CHECK(jumps[4].cascade[2].to_loss);
  CHECK(cascade_rate(jumps[4]) == doctest::Approx(p.gamma_p).epsilon(1e-12));

  RydbergParams quiet = p;
  quiet.gamma_p = 0.0;
  const auto q = single_atom_jump_operators(quiet);
  for (int j = 0; j < 3; ++j) CHECK(q[static_cast<std::size_t>(j)].op.isZero(0.0));
  CHECK(cascade_rate(q[4]) == doctest::Approx(1.0));
}

TEST_CASE("cascade after |r> decay follows the branching ratios") {
  const RydbergParams p = RydbergParams::operating_point();
  const LindbladModel m = build_single_atom_pulse_model(p);
  const TrajectoryEngine engine(m);
  RngStream rng(123);
  const int draws = 20000;
  int to0 = 0, to1 = 0, lost = 0;
  for (int i = 0; i < draws; ++i) {
    std::vector<cd> psi{cd(0.0), cd(0.6), cd(0.8), cd(0.0)};
    Trajectory rec;
    const JumpOutcome out = engine.apply_jump(psi, 4, 1e-7, rng, rec);
    if (out == JumpOutcome::kDisposed) {
      ++lost;
      continue;
    }
    if (std::abs(psi[0]) > 0.5) ++to0;
    if (std::abs(psi[1]) > 0.5) ++to1;
  }
  const double c[3] = {0.12, 0.32, 0.56};
  const int counts[3] = {to0, to1, lost};
  for (int j = 0; j < 3; ++j) {
    const double sigma = std::sqrt(c[j] * (1 - c[j]) / draws);
    CHECK(std::abs(counts[j] / static_cast<double>(draws) - c[j]) < 4 * sigma);
  }
}

TEST_CASE("C-PHASE model structure") {
  const RydbergParams p = RydbergParams::operating_point();
  const LindbladModel m = build_cphase_model(p);
  CHECK(m.full_dim() == 16);
  CHECK(m.spec().qubit_dim() == 4);
  REQUIRE(m.schedule().size() == 3);
  CHECK(m.schedule()[1].duration == doctest::Approx(2.0 * pi_pulse_time(p)));
  CHECK(m.jumps().size() == 10);
  CHECK(m.jumps()[0].label == "control:gamma_p,0");
  CHECK(m.schedule()[0].hamiltonian(10, 10).real() == doctest::Approx(p.blockade));
  const CMatrix u = ideal_cphase();
  CHECK((u * u - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("|00> is dark under the pulse sequence") {
  const LindbladModel m = build_cphase_model(RydbergParams::operating_point().without_dissipation());
  const TrajectoryEngine engine(m);
  CVector in = CVector::Zero(16);
  in(0) = 1.0;
  const Trajectory t = engine.run(in, 1);
  CHECK(t.no_jump());
  CHECK((*t.final_state - in).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dissipation-free gate approaches C-PHASE as the blockade grows") {
  RydbergParams p = RydbergParams::operating_point();
  p.blockade = 1e6 * omega_eff(p);
  CHECK(dissipation_free_fidelity(p) > 1.0 - 1e-6);

  RydbergParams b20 = RydbergParams::operating_point();
  RydbergParams b30 = b20;
  b30.blockade = mhz_to_angular(30.0);
  CHECK(1.0 - dissipation_free_fidelity(b30) < 1.0 - dissipation_free_fidelity(b20));
}

TEST_CASE("exact chi of the gate at the reference parameters") {
  const RydbergParams p = RydbergParams::operating_point();
  const OperatorBasis b = pauli_basis(2);
  const ChiMatrix chi = sqpc_characterize(build_cphase_model(p), b);
  const ChiMatrix ideal = ideal_chi(ideal_cphase(), b);
  CHECK(trace_distance(ideal, chi) == doctest::Approx(kExactT).epsilon(1e-5));
  CHECK(fidelity(ideal.data, chi.data, 1e-6) == doctest::Approx(kExactF).epsilon(1e-6));
  CHECK(chi.data.trace().real() == doctest::Approx(kExactTrace).epsilon(1e-6));
}

TEST_CASE("gate time scales as 1/Omega_eff") {
  RydbergParams p = RydbergParams::operating_point();
  const double t1 = build_cphase_model(p).total_duration();
  p.omega_b *= 2.0;
  const double t2 = build_cphase_model(p).total_duration();
  CHECK(t1 * omega_eff(RydbergParams::operating_point()) == doctest::Approx(t2 * omega_eff(p)).epsilon(1e-12));
  CHECK(t1 == doctest::Approx(4.0 * kPiPulse).epsilon(1e-12));
}
