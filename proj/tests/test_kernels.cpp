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
#include <vector>

#include "aawf/simd/kernels.hpp"

using aawf::simd::cd;
namespace simd = aawf::simd;

namespace {

std::vector<cd> random_vec(std::size_t n, std::mt19937_64& rng, double zero_fraction = 0.0) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u;
  std::vector<cd> v(n);
  for (auto& x : v) x = u(rng) < zero_fraction ? cd{} : cd(g(rng), g(rng));
  return v;
}

double max_diff(const std::vector<cd>& a, const std::vector<cd>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("scalar kernels match naive loops") {
  std::mt19937_64 rng(7);
  const auto& k = simd::scalar_kernels();
  const std::size_t m = 5, kk = 3, n = 4;
  auto a = random_vec(m * kk, rng), b = random_vec(kk * n, rng);
  std::vector<cd> c(m * n);
  k.cmatmul(a.data(), b.data(), c.data(), m, kk, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cd ref{};
      for (std::size_t p = 0; p < kk; ++p) ref += a[i * kk + p] * b[p * n + j];
      CHECK(std::abs(c[i * n + j] - ref) < 1e-13);
    }
  }
  auto x = random_vec(9, rng);
  double nn = 0.0;
  for (auto v : x) nn += std::norm(v);
  CHECK(k.squared_norm(x.data(), x.size()) == doctest::Approx(nn).epsilon(1e-14));
}

TEST_CASE("the vectorised variant agrees with the scalar reference") {
  const simd::KernelTable* v = simd::avx2_kernels();
  if (v == nullptr) {
    MESSAGE("AVX2 variant unavailable on this host; nothing to compare");
    return;
  }
  const auto& s = simd::scalar_kernels();
  std::mt19937_64 rng(11);
  for (std::size_t m : {1u, 2u, 3u, 7u, 16u}) {
    for (std::size_t kk : {1u, 4u, 5u, 16u}) {
      for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 9u, 16u}) {
        auto a = random_vec(m * kk, rng, 0.3), b = random_vec(kk * n, rng);
        std::vector<cd> c1(m * n), c2(m * n);
        s.cmatmul(a.data(), b.data(), c1.data(), m, kk, n);
        v->cmatmul(a.data(), b.data(), c2.data(), m, kk, n);
        CHECK(max_diff(c1, c2) < 1e-12);
      }
    }
  }
  for (std::size_t n : {0u, 1u, 2u, 3u, 5u, 8u, 17u, 64u}) {
    auto x = random_vec(n, rng), y1 = random_vec(n, rng);
    auto y2 = y1;
    CHECK(v->squared_norm(x.data(), n) == doctest::Approx(s.squared_norm(x.data(), n)).epsilon(1e-13));
    s.axpy(0.37, x.data(), y1.data(), n);
    v->axpy(0.37, x.data(), y2.data(), n);
    CHECK(max_diff(y1, y2) < 1e-13);
    auto c1 = random_vec(n * n, rng);
    auto c2 = c1;
    s.her_rank1(0.5, x.data(), c1.data(), n);
    v->her_rank1(0.5, x.data(), c2.data(), n);
    CHECK(max_diff(c1, c2) < 1e-12);
  }
}

TEST_CASE("runtime selection can be pinned") {
  simd::set_active_isa(simd::Isa::kScalar);
  CHECK(simd::active_kernels().isa == simd::Isa::kScalar);
  if (simd::isa_available(simd::Isa::kAvx2)) {
    simd::set_active_isa(simd::Isa::kAvx2);
    CHECK(simd::active_kernels().isa == simd::Isa::kAvx2);
  } else {
    CHECK_THROWS_AS(simd::set_active_isa(simd::Isa::kAvx2), std::invalid_argument);
  }
  CHECK(simd::isa_name(simd::Isa::kScalar) == "scalar");
}
