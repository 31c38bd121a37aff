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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "aawf/simd/kernels.hpp"

namespace aawf::simd {

#if defined(__x86_64__)
const KernelTable* avx2_kernel_table();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* initial_table() {
  const char* env = std::getenv("AAWF_SIMD");
  if (env != nullptr && std::string(env) == "scalar") return &scalar_kernels();
  if (const KernelTable* t = avx2_kernels()) return t;
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{initial_table()};
  return slot;
}

}  // namespace

const KernelTable* avx2_kernels() {
#if defined(__x86_64__)
  static const bool ok = cpu_has_avx2();
  return ok ? avx2_kernel_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  return *active_slot().load(std::memory_order_acquire);
}

bool isa_available(Isa isa) {
  return isa == Isa::kScalar || avx2_kernels() != nullptr;
}

void set_active_isa(Isa isa) {
  const KernelTable* t = isa == Isa::kScalar ? &scalar_kernels() : avx2_kernels();
  if (t == nullptr) {
    throw std::invalid_argument("SIMD variant not available on this host: " +
                                std::string(isa_name(isa)));
  }
  active_slot().store(t, std::memory_order_release);
}

std::string_view isa_name(Isa isa) {
  return isa == Isa::kScalar ? "scalar" : "avx2";
}

}  // namespace aawf::simd
