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

#include <immintrin.h>

#include <stdexcept>

#include "dp2/kernels.hpp"
#include "dp2/packed.hpp"

namespace dp2::kernels::avx2 {

namespace {

struct AddendLanes {
  __m256i lo;
  __m256i hi;
};

inline AddendLanes split(uint64_t addend) {
  constexpr uint64_t L = packed::lo_mask<uint64_t>();
  return {_mm256_set1_epi64x(static_cast<long long>(addend & L)),
          _mm256_set1_epi64x(static_cast<long long>((addend >> 1) & L))};
}

// Same bitsliced formula as packed::add, four words at a time.
inline __m256i add3(__m256i a, const AddendLanes& b, __m256i mask) {
  const __m256i a0 = _mm256_and_si256(a, mask);
  const __m256i a1 = _mm256_and_si256(_mm256_srli_epi64(a, 1), mask);
  const __m256i t = _mm256_xor_si256(_mm256_or_si256(a0, b.hi), _mm256_or_si256(a1, b.lo));
  const __m256i s0 = _mm256_xor_si256(_mm256_or_si256(a1, b.hi), t);
  const __m256i s1 = _mm256_xor_si256(_mm256_or_si256(a0, b.lo), t);
  return _mm256_or_si256(s0, _mm256_slli_epi64(s1, 1));
}

}  // namespace

void add_broadcast(std::span<const uint64_t> rows, uint64_t addend, std::span<uint64_t> out) {
  if (rows.size() != out.size()) throw std::invalid_argument("add_broadcast: size mismatch");
  const __m256i mask = _mm256_set1_epi64x(static_cast<long long>(packed::lo_mask<uint64_t>()));
  const AddendLanes b = split(addend);
  size_t i = 0;
  for (; i + 4 <= rows.size(); i += 4) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(rows.data() + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), add3(a, b, mask));
  }
  for (; i < rows.size(); ++i) out[i] = packed::add(rows[i], addend);
}

void scan_row(std::span<const uint64_t> rows, uint64_t addend, const ProbeFilterView& filter,
              std::vector<Candidate>& out) {
  const __m256i mask = _mm256_set1_epi64x(static_cast<long long>(packed::lo_mask<uint64_t>()));
  const __m256i mul_lo = _mm256_set1_epi64x(0x9E3779B1);
  const __m256i mul_hi = _mm256_set1_epi64x(0x85EBCA77);
  const __m256i mul_mix = _mm256_set1_epi64x(0xC2B2AE3D);
  const __m256i low32 = _mm256_set1_epi64x(0xFFFFFFFF);
  const __m128i shift = _mm_cvtsi32_si128(64 - filter.log2_bits);
  const __m256i bit_mask = _mm256_set1_epi64x(63);
  const __m256i one = _mm256_set1_epi64x(1);
  const auto* words = reinterpret_cast<const long long*>(filter.words);
  const AddendLanes b = split(addend);

  alignas(32) uint64_t values[4];
  size_t i = 0;
  for (; i + 4 <= rows.size(); i += 4) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(rows.data() + i));
    const __m256i v = add3(a, b, mask);
    __m256i u = _mm256_and_si256(
        _mm256_xor_si256(_mm256_mul_epu32(v, mul_lo), _mm256_mul_epu32(_mm256_srli_epi64(v, 32), mul_hi)), low32);
    u = _mm256_xor_si256(u, _mm256_srli_epi64(u, 15));
    const __m256i h = _mm256_slli_epi64(_mm256_mul_epu32(u, mul_mix), 32);
    const __m256i slot = _mm256_srl_epi64(h, shift);
    const __m256i w = _mm256_i64gather_epi64(words, _mm256_srli_epi64(slot, 6), 8);
    const __m256i bit = _mm256_and_si256(_mm256_srlv_epi64(w, _mm256_and_si256(slot, bit_mask)), one);
    int hits = _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(bit, one)));
    if (hits == 0) continue;
    _mm256_store_si256(reinterpret_cast<__m256i*>(values), v);
    while (hits != 0) {
      const int lane = __builtin_ctz(static_cast<unsigned>(hits));
      out.push_back({static_cast<uint32_t>(i + static_cast<size_t>(lane)), values[lane]});
      hits &= hits - 1;
    }
  }
  for (; i < rows.size(); ++i) {
    const uint64_t v = packed::add(rows[i], addend);
    if (filter.test(v)) out.push_back({static_cast<uint32_t>(i), v});
  }
}

}  // namespace dp2::kernels::avx2
