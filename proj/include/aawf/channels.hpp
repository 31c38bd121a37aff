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

// Built-in small models: single-qubit channels and a two-qubit toy register.

#pragma once

#include "aawf/model.hpp"

namespace aawf {

struct ChannelParams {
  double gamma = 0.0;     // 1/s
  double duration = 1.0;  // s
  double hx = 0.0;        // rad/s, H = hx * X
};

/// L = sqrt(gamma) |0><1|
LindbladModel amplitude_damping_model(const ChannelParams& p);

/// L = sqrt(gamma) (1 - 2|1><1|)
LindbladModel dephasing_model(const ChannelParams& p);

struct ToyTwoQubitParams {
  double omega = 0.8;      // rad/s, local X drive (omega/2) on each qubit
  double coupling = 0.3;   // rad/s, ZZ coupling
  double gamma = 0.02;     // 1/s, decay per qubit
  double gamma_d = 0.01;   // 1/s, dephasing per qubit
  double duration = 1.0;   // s
};

/// H = (omega/2)(XI + IX) + coupling ZZ; per-qubit decay and dephasing.
LindbladModel two_qubit_toy_model(const ToyTwoQubitParams& p);

/// exp(-i H_k t_k) composed over the schedule (dissipation ignored), full space.
CMatrix schedule_unitary(const LindbladModel& model);

/// Block of a full-space operator on the qubit subspace.
CMatrix qubit_block(const HilbertSpec& spec, const CMatrix& full);

}  // namespace aawf
