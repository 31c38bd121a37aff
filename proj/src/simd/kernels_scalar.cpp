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

#include "aawf/simd/kernels.hpp"

#include <algorithm>

namespace aawf::simd {
namespace {

void cmatmul_scalar(const cd* a, const cd* b, cd* c, std::size_t m,
                    std::size_t k, std::size_t n) {
  std::fill(c, c + m * n, cd{});
  for (std::size_t i = 0; i < m; ++i) {
    cd* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const cd aip = a[i * k + p];
      if (aip == cd{}) continue;
      const cd* brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aip * brow[j];
    }
  }
}

double squared_norm_scalar(const cd* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::norm(x[i]);
  return s;
}

void axpy_scalar(double alpha, const cd* x, cd* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void her_rank1_scalar(double w, const cd* z, cd* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const cd wzi = w * z[i];
    for (std::size_t j = 0; j < n; ++j) c[i * n + j] += wzi * std::conj(z[j]);
  }
}

constexpr KernelTable kScalar{Isa::kScalar, "scalar", cmatmul_scalar,
                              squared_norm_scalar, axpy_scalar,
                              her_rank1_scalar};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace aawf::simd
