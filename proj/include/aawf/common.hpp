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

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace aawf {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr cd kI{0.0, 1.0};

/// Invalid user input: bad config, inconsistent model, singular basis choice.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure failed (integrator underflow, solver residual, ...).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integration tolerances for the adaptive solvers.
struct OdeTolerances {
  double rtol = 1e-8;
  double atol = 1e-12;
};

inline constexpr OdeTolerances kOracleTolerances{1e-9, 1e-12};
inline constexpr OdeTolerances kTrajectoryTolerances{1e-8, 1e-12};

/// Kronecker product, first factor most significant.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// max |A - A^dagger|, zero for Hermitian input.
double hermiticity_defect(const CMatrix& a);

/// True when A is Hermitian to `rel_tol` relative to max |A_ij|.
bool is_hermitian(const CMatrix& a, double rel_tol);

}  // namespace aawf
