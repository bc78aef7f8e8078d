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

#pragma once

// Inner loops of the left-hand-side scan. Each kernel has a portable scalar
// reference and, on x86-64, an AVX2 variant; the variant is picked once at
// runtime from CPUID and both must produce identical output.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace dp2::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);
/// Best variant supported by both the build and the running CPU.
Isa detected_isa();
/// Variant currently used by the dispatching entry points.
Isa active_isa();
/// Forces a variant (tests, benchmarking). Requesting AVX2 on a CPU or build
/// without it throws std::runtime_error.
void set_active_isa(Isa isa);

/// Hash used by the probe filter: two 32-bit multiplicative rounds, result
/// in the top 32 bits. Only 32x32->64 products so the AVX2 variant can use
/// vpmuludq.
inline uint64_t probe_hash(uint64_t v) {
  constexpr uint64_t kMulLo = 0x9E3779B1u;
  constexpr uint64_t kMulHi = 0x85EBCA77u;
  constexpr uint64_t kMulMix = 0xC2B2AE3Du;
  uint64_t u = ((v & 0xFFFFFFFFu) * kMulLo ^ (v >> 32) * kMulHi) & 0xFFFFFFFFu;
  u ^= u >> 15;
  return (u * kMulMix) << 32;
}

/// Non-owning view of a one-hash bitmap filter over 64-bit keys.
struct ProbeFilterView {
  const uint64_t* words = nullptr;
  int log2_bits = 6;  // bitmap holds 2^log2_bits bits

  uint64_t slot(uint64_t key) const { return probe_hash(key) >> (64 - log2_bits); }
  bool test(uint64_t key) const {
    const uint64_t s = slot(key);
    return (words[s >> 6] >> (s & 63)) & 1;
  }
};

/// Owning bitmap filter.
class ProbeFilter {
 public:
  ProbeFilter() = default;
  /// Sized for `expected_keys` with about 32 bits per key (min 2^12 bits,
  /// max 2^32 bits).
  explicit ProbeFilter(uint64_t expected_keys);

  void insert(uint64_t key);
  bool test(uint64_t key) const { return view().test(key); }
  ProbeFilterView view() const { return ProbeFilterView{words_.data(), log2_bits_}; }
  size_t memory_bytes() const { return words_.size() * sizeof(uint64_t); }

 private:
  std::vector<uint64_t> words_;
  int log2_bits_ = 6;
};

/// A left-hand side that passed the probe filter: row slot and packed value.
struct Candidate {
  uint32_t slot;
  uint64_t value;
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// out[i] = rows[i] + addend (mod 3, coefficient-wise). Spans must have equal
/// length.
void add_broadcast(std::span<const uint64_t> rows, uint64_t addend, std::span<uint64_t> out);

/// Appends {i, rows[i] + addend} for every i whose sum passes the filter, in
/// increasing i.
void scan_row(std::span<const uint64_t> rows, uint64_t addend, const ProbeFilterView& filter,
              std::vector<Candidate>& out);

namespace scalar {
void add_broadcast(std::span<const uint64_t> rows, uint64_t addend, std::span<uint64_t> out);
void scan_row(std::span<const uint64_t> rows, uint64_t addend, const ProbeFilterView& filter,
              std::vector<Candidate>& out);
}  // namespace scalar

#if defined(DP2_HAVE_AVX2_KERNELS)
namespace avx2 {
void add_broadcast(std::span<const uint64_t> rows, uint64_t addend, std::span<uint64_t> out);
void scan_row(std::span<const uint64_t> rows, uint64_t addend, const ProbeFilterView& filter,
              std::vector<Candidate>& out);
}  // namespace avx2
#endif

}  // namespace dp2::kernels
