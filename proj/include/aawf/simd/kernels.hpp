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

// Inner-loop kernels of the trajectory engine.
//
// Every kernel has a scalar reference implementation and, where the host
// supports it, a vectorised variant. The variant is picked once at runtime
// (CPUID) and can be pinned with the AAWF_SIMD environment variable
// ("scalar" or "avx2") or set_active_isa(). All matrices are dense, row-major,
// interleaved complex doubles.

#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace aawf::simd {

using cd = std::complex<double>;

enum class Isa { kScalar, kAvx2 };

struct KernelTable {
  Isa isa;
  std::string_view name;

  // C (m x n) = A (m x k) * B (k x n). C must not alias A or B.
  void (*cmatmul)(const cd* a, const cd* b, cd* c, std::size_t m,
                  std::size_t k, std::size_t n);

  // sum_i |x_i|^2
  double (*squared_norm)(const cd* x, std::size_t n);

  // y += alpha * x
  void (*axpy)(double alpha, const cd* x, cd* y, std::size_t n);

  // C (n x n) += w * z z^dagger
  void (*her_rank1)(double w, const cd* z, cd* c, std::size_t n);
};

const KernelTable& scalar_kernels();

/// nullptr when the variant was not compiled in or the CPU lacks it.
const KernelTable* avx2_kernels();

/// Kernels currently used by the library.
const KernelTable& active_kernels();

/// Pins the active variant. Throws std::invalid_argument if unavailable.
void set_active_isa(Isa isa);

bool isa_available(Isa isa);

std::string_view isa_name(Isa isa);

}  // namespace aawf::simd
