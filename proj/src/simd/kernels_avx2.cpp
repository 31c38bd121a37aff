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

// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma
// and is only entered after a CPUID check in dispatch.cpp.

#include "aawf/simd/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <algorithm>

namespace aawf::simd {
namespace {

inline const double* as_doubles(const cd* p) {
  return reinterpret_cast<const double*>(p);
}
inline double* as_doubles(cd* p) { return reinterpret_cast<double*>(p); }

// Two complex numbers per register: [re0, im0, re1, im1].
// Products are split into two FMA accumulators and recombined with addsub:
//   even lanes: ar*br - ai*bi, odd lanes: ar*bi + ai*br.
inline __m256d finish(__m256d acc_r, __m256d acc_i) {
  return _mm256_addsub_pd(acc_r, acc_i);
}

void cmatmul_row_path(const cd* a, const cd* b, cd* c, std::size_t m,
                      std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    const cd* arow = a + i * k;
    double* crow = as_doubles(c + i * n);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      __m256d r0 = _mm256_setzero_pd(), s0 = _mm256_setzero_pd();
      __m256d r1 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
      for (std::size_t p = 0; p < k; ++p) {
        const __m256d ar = _mm256_set1_pd(arow[p].real());
        const __m256d ai = _mm256_set1_pd(arow[p].imag());
        const double* bp = as_doubles(b + p * n + j);
        const __m256d b0 = _mm256_loadu_pd(bp);
        const __m256d b1 = _mm256_loadu_pd(bp + 4);
        r0 = _mm256_fmadd_pd(ar, b0, r0);
        s0 = _mm256_fmadd_pd(ai, _mm256_permute_pd(b0, 0x5), s0);
        r1 = _mm256_fmadd_pd(ar, b1, r1);
        s1 = _mm256_fmadd_pd(ai, _mm256_permute_pd(b1, 0x5), s1);
      }
      _mm256_storeu_pd(crow + 2 * j, finish(r0, s0));
      _mm256_storeu_pd(crow + 2 * j + 4, finish(r1, s1));
    }
    for (; j + 2 <= n; j += 2) {
      __m256d r0 = _mm256_setzero_pd(), s0 = _mm256_setzero_pd();
      for (std::size_t p = 0; p < k; ++p) {
        const __m256d ar = _mm256_set1_pd(arow[p].real());
        const __m256d ai = _mm256_set1_pd(arow[p].imag());
        const __m256d b0 = _mm256_loadu_pd(as_doubles(b + p * n + j));
        r0 = _mm256_fmadd_pd(ar, b0, r0);
        s0 = _mm256_fmadd_pd(ai, _mm256_permute_pd(b0, 0x5), s0);
      }
      _mm256_storeu_pd(crow + 2 * j, finish(r0, s0));
    }
    for (; j < n; ++j) {
      cd acc{};
      for (std::size_t p = 0; p < k; ++p) acc += arow[p] * b[p * n + j];
      c[i * n + j] = acc;
    }
  }
}

// n == 1: matrix-vector product, vectorised along the reduction index.
void cmatvec_path(const cd* a, const cd* b, cd* c, std::size_t m,
                  std::size_t k) {
  for (std::size_t i = 0; i < m; ++i) {
    const cd* arow = a + i * k;
    __m256d r = _mm256_setzero_pd(), s = _mm256_setzero_pd();
    std::size_t p = 0;
    for (; p + 2 <= k; p += 2) {
      const __m256d av = _mm256_loadu_pd(as_doubles(arow + p));
      const __m256d bv = _mm256_loadu_pd(as_doubles(b + p));
      r = _mm256_fmadd_pd(av, _mm256_movedup_pd(bv), r);
      s = _mm256_fmadd_pd(_mm256_permute_pd(av, 0x5),
                          _mm256_permute_pd(bv, 0xF), s);
    }
    const __m256d v = finish(r, s);
    const __m128d sum = _mm_add_pd(_mm256_castpd256_pd128(v),
                                   _mm256_extractf128_pd(v, 1));
    cd acc{_mm_cvtsd_f64(sum), _mm_cvtsd_f64(_mm_unpackhi_pd(sum, sum))};
    for (; p < k; ++p) acc += arow[p] * b[p];
    c[i] = acc;
  }
}

void cmatmul_avx2(const cd* a, const cd* b, cd* c, std::size_t m,
                  std::size_t k, std::size_t n) {
  if (n == 1) {
    cmatvec_path(a, b, c, m, k);
  } else {
    cmatmul_row_path(a, b, c, m, k, n);
  }
}

double squared_norm_avx2(const cd* x, std::size_t n) {
  const double* d = as_doubles(x);
  const std::size_t len = 2 * n;
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    const __m256d v0 = _mm256_loadu_pd(d + i);
    const __m256d v1 = _mm256_loadu_pd(d + i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  for (; i + 4 <= len; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(d + i);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
  }
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  const __m128d half = _mm_add_pd(_mm256_castpd256_pd128(acc),
                                  _mm256_extractf128_pd(acc, 1));
  double s = _mm_cvtsd_f64(_mm_add_sd(half, _mm_unpackhi_pd(half, half)));
  for (; i < len; ++i) s += d[i] * d[i];
  return s;
}

void axpy_avx2(double alpha, const cd* x, cd* y, std::size_t n) {
  const double* xd = as_doubles(x);
  double* yd = as_doubles(y);
  const std::size_t len = 2 * n;
  const __m256d av = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    _mm256_storeu_pd(yd + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(xd + i),
                                             _mm256_loadu_pd(yd + i)));
    _mm256_storeu_pd(yd + i + 4,
                     _mm256_fmadd_pd(av, _mm256_loadu_pd(xd + i + 4),
                                     _mm256_loadu_pd(yd + i + 4)));
  }
  for (; i + 4 <= len; i += 4) {
    _mm256_storeu_pd(yd + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(xd + i),
                                             _mm256_loadu_pd(yd + i)));
  }
  for (; i < len; ++i) yd[i] += alpha * xd[i];
}

void her_rank1_avx2(double w, const cd* z, cd* c, std::size_t n) {
  // conj flips the sign of the odd (imaginary) lanes
  const __m256d conj_mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const cd wzi = w * z[i];
    const __m256d ar = _mm256_set1_pd(wzi.real());
    const __m256d ai = _mm256_set1_pd(wzi.imag());
    double* crow = as_doubles(c + i * n);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
      const __m256d zc =
          _mm256_xor_pd(_mm256_loadu_pd(as_doubles(z + j)), conj_mask);
      const __m256d prod = _mm256_fmaddsub_pd(
          ar, zc, _mm256_mul_pd(ai, _mm256_permute_pd(zc, 0x5)));
      _mm256_storeu_pd(crow + 2 * j,
                       _mm256_add_pd(_mm256_loadu_pd(crow + 2 * j), prod));
    }
    for (; j < n; ++j) c[i * n + j] += wzi * std::conj(z[j]);
  }
}

constexpr KernelTable kAvx2{Isa::kAvx2, "avx2", cmatmul_avx2,
                            squared_norm_avx2, axpy_avx2, her_rank1_avx2};

}  // namespace

const KernelTable* avx2_kernel_table() { return &kAvx2; }

}  // namespace aawf::simd

#endif
