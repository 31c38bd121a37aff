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

// Adaptive Dormand-Prince 5(4) integrator for complex linear systems, with
// the standard fourth-order continuous extension (dense output) over the last
// accepted step.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <vector>

#include "aawf/common.hpp"
#include "aawf/simd/kernels.hpp"

namespace aawf {

class DormandPrince {
 public:
  DormandPrince(std::size_t n, OdeTolerances tol)
      : n_(n), tol_(tol), y_(n), y_new_(n), tmp_(n), k1_(n), k2_(n), k3_(n),
        k4_(n), k5_(n), k6_(n), k7_(n), r2_(n), r3_(n), r4_(n), r5_(n) {}

  std::size_t size() const { return n_; }
  double t() const { return t_; }
  double t_prev() const { return t_prev_; }
  std::span<const cd> y() const { return y_; }
  double suggested_step() const { return h_; }
  std::size_t accepted_steps() const { return accepted_; }
  std::size_t rejected_steps() const { return rejected_; }

  /// Resets the state to (t0, y0). `t_end` bounds the initial step guess;
  /// a positive `h_hint` skips the automatic initial step estimate.
  template <class Rhs>
  void start(Rhs& f, double t0, std::span<const cd> y0, double t_end,
             double h_hint = 0.0) {
    t_ = t_prev_ = t0;
    std::copy(y0.begin(), y0.end(), y_.begin());
    f(t_, y_.data(), k1_.data());
    h_ = h_hint > 0.0 ? h_hint : initial_step(t_end - t0);
    has_dense_ = false;
  }

  /// Takes one accepted step without passing t_end.
  template <class Rhs>
  void step(Rhs& f, double t_end) {
    const auto& kern = simd::active_kernels();
    const double span = t_end - t_;
    if (span <= 0.0) throw NumericError("DormandPrince::step called at or beyond t_end");
    const double h_min =
        16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t_), std::abs(t_end));
    double h = std::min(h_, span);
    // avoid leaving a sliver at the end of the interval
    if (h < span && h > 0.99 * span) h = span;

    for (;;) {
      if (h < h_min) {
        std::ostringstream msg;
        msg << "step size underflow at t=" << t_ << " (h=" << h << ")";
        throw NumericError(msg.str());
      }
      stage(kern, {a21 * h}, {&k1_}, tmp_);
      f(t_ + c2 * h, tmp_.data(), k2_.data());
      stage(kern, {a31 * h, a32 * h}, {&k1_, &k2_}, tmp_);
      f(t_ + c3 * h, tmp_.data(), k3_.data());
      stage(kern, {a41 * h, a42 * h, a43 * h}, {&k1_, &k2_, &k3_}, tmp_);
      f(t_ + c4 * h, tmp_.data(), k4_.data());
      stage(kern, {a51 * h, a52 * h, a53 * h, a54 * h}, {&k1_, &k2_, &k3_, &k4_}, tmp_);
      f(t_ + c5 * h, tmp_.data(), k5_.data());
      stage(kern, {a61 * h, a62 * h, a63 * h, a64 * h, a65 * h},
            {&k1_, &k2_, &k3_, &k4_, &k5_}, tmp_);
      f(t_ + h, tmp_.data(), k6_.data());
      stage(kern, {a71 * h, 0.0, a73 * h, a74 * h, a75 * h, a76 * h},
            {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_}, y_new_);
      const double t_new = (h == span) ? t_end : t_ + h;
      f(t_new, y_new_.data(), k7_.data());

      // error estimate, reusing tmp_
      std::fill(tmp_.begin(), tmp_.end(), cd{});
      kern.axpy(e1 * h, k1_.data(), tmp_.data(), n_);
      kern.axpy(e3 * h, k3_.data(), tmp_.data(), n_);
      kern.axpy(e4 * h, k4_.data(), tmp_.data(), n_);
      kern.axpy(e5 * h, k5_.data(), tmp_.data(), n_);
      kern.axpy(e6 * h, k6_.data(), tmp_.data(), n_);
      kern.axpy(e7 * h, k7_.data(), tmp_.data(), n_);
      double acc = 0.0;
      for (std::size_t i = 0; i < n_; ++i) {
        const double sc = tol_.atol + tol_.rtol * std::max(std::abs(y_[i]), std::abs(y_new_[i]));
        acc += std::norm(tmp_[i]) / (sc * sc);
      }
      const double err = std::sqrt(acc / static_cast<double>(std::max<std::size_t>(n_, 1)));

      if (err <= 1.0) {
        build_dense(kern, h);
        t_prev_ = t_;
        t_ = t_new;
        std::swap(y_, y_new_);
        std::swap(k1_, k7_);
        const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h_ = h * fac;
        ++accepted_;
        return;
      }
      ++rejected_;
      if (!std::isfinite(err)) {
        h *= 0.1;
      } else {
        h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
      }
    }
  }

  /// Dense output on [t_prev(), t()].
  void dense(double t, std::span<cd> out) const {
    if (!has_dense_) throw NumericError("dense output requested before the first step");
    const double h = t_ - t_prev_;
    const double th = (t - t_prev_) / h;
    const double th1 = 1.0 - th;
    for (std::size_t i = 0; i < n_; ++i) {
      out[i] = r1_[i] + th * (r2_[i] + th1 * (r3_[i] + th * (r4_[i] + th1 * r5_[i])));
    }
  }

  /// Integrates from (t0, y) to t1 in place.
  template <class Rhs>
  static void integrate(Rhs& f, double t0, double t1, std::span<cd> y, OdeTolerances tol) {
    if (t1 <= t0) return;
    DormandPrince dp(y.size(), tol);
    dp.start(f, t0, y, t1);
    while (dp.t() < t1) dp.step(f, t1);
    std::copy(dp.y_.begin(), dp.y_.end(), y.begin());
  }

 private:
  using Vec = std::vector<cd>;

  template <std::size_t N>
  void stage(const simd::KernelTable& kern, const double (&coef)[N],
             const Vec* const (&ks)[N], Vec& out) const {
    std::copy(y_.begin(), y_.end(), out.begin());
    for (std::size_t j = 0; j < N; ++j) {
      if (coef[j] != 0.0) kern.axpy(coef[j], ks[j]->data(), out.data(), n_);
    }
  }

  // Scaled-norm heuristic h0 = 0.01 |y| / |f|; the controller grows it.
  double initial_step(double span) const {
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double sc = tol_.atol + tol_.rtol * std::abs(y_[i]);
      d0 += std::norm(y_[i]) / (sc * sc);
      d1 += std::norm(k1_[i]) / (sc * sc);
    }
    d0 = std::sqrt(d0 / n_);
    d1 = std::sqrt(d1 / n_);
    const double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1;
    return std::min(h0, span);
  }

  void build_dense(const simd::KernelTable& kern, double h) {
    r1_ = y_;
    for (std::size_t i = 0; i < n_; ++i) {
      r2_[i] = y_new_[i] - y_[i];
      r3_[i] = h * k1_[i] - r2_[i];
      r4_[i] = r2_[i] - h * k7_[i] - r3_[i];
    }
    std::fill(r5_.begin(), r5_.end(), cd{});
    kern.axpy(d1 * h, k1_.data(), r5_.data(), n_);
    kern.axpy(d3 * h, k3_.data(), r5_.data(), n_);
    kern.axpy(d4 * h, k4_.data(), r5_.data(), n_);
    kern.axpy(d5 * h, k5_.data(), r5_.data(), n_);
    kern.axpy(d6 * h, k6_.data(), r5_.data(), n_);
    kern.axpy(d7 * h, k7_.data(), r5_.data(), n_);
    has_dense_ = true;
  }

  static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                          a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                          a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
  static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                          a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
  static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                          e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
  static constexpr double d1 = -12715105075.0 / 11282082432.0,
                          d3 = 87487479700.0 / 32700410799.0,
                          d4 = -10690763975.0 / 1880347072.0,
                          d5 = 701980252875.0 / 199316789632.0,
                          d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

  std::size_t n_;
  OdeTolerances tol_;
  double t_ = 0.0, t_prev_ = 0.0, h_ = 0.0;
  bool has_dense_ = false;
  std::size_t accepted_ = 0, rejected_ = 0;
  Vec y_, y_new_, tmp_, k1_, k2_, k3_, k4_, k5_, k6_, k7_;
  Vec r1_, r2_, r3_, r4_, r5_;
};

}  // namespace aawf
