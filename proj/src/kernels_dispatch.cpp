// Copyright 2026 The dp2 Authors.
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
#include <stdexcept>

#include "dp2/kernels.hpp"

namespace dp2::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(DP2_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

Isa detected_isa() {
  static const Isa isa = cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar;
  return isa;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::kAvx2 && detected_isa() != Isa::kAvx2) {
    throw std::runtime_error("AVX2 kernels are not available on this build or CPU");
  }
  active().store(isa, std::memory_order_relaxed);
}

void add_broadcast(std::span<const uint64_t> rows, uint64_t addend, std::span<uint64_t> out) {
#if defined(DP2_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::kAvx2) return avx2::add_broadcast(rows, addend, out);
#endif
  scalar::add_broadcast(rows, addend, out);
}

void scan_row(std::span<const uint64_t> rows, uint64_t addend, const ProbeFilterView& filter,
              std::vector<Candidate>& out) {
#if defined(DP2_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::kAvx2) return avx2::scan_row(rows, addend, filter, out);
#endif
  scalar::scan_row(rows, addend, filter, out);
}

}  // namespace dp2::kernels
