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

// Branch-free arithmetic on polynomials over F_3 packed two bits per
// coefficient (coefficient i in bits 2i..2i+1; 0 -> 00, 1 -> 01, 2 -> 10).
// Everything here is generic over the word type so the same formulas back
// the 64-bit search kernels and the 128-bit PackedPoly.

#include <bit>
#include <cstdint>
#include <type_traits>

namespace dp2::packed {

using u128 = unsigned __int128;

template <class W>
constexpr W lo_mask() {
  W m = 0;
  for (unsigned i = 0; i < sizeof(W) * 8; i += 2) m |= W(1) << i;
  return m;
}

template <class W>
constexpr unsigned coeff_capacity() {
  return sizeof(W) * 4;
}

// Bitsliced mod-3 addition: with a = (a1,a0) and b = (b1,b0),
//   t = (a0|b1) ^ (a1|b0), sum0 = (a1|b1) ^ t, sum1 = (a0|b0) ^ t.
template <class W>
constexpr W add(W a, W b) {
  constexpr W L = lo_mask<W>();
  const W a0 = a & L, a1 = (a >> 1) & L;
  const W b0 = b & L, b1 = (b >> 1) & L;
  const W t = (a0 | b1) ^ (a1 | b0);
  const W s0 = (a1 | b1) ^ t;
  const W s1 = (a0 | b0) ^ t;
  return s0 | (s1 << 1);
}

template <class W>
constexpr W neg(W a) {
  constexpr W L = lo_mask<W>();
  return ((a & L) << 1) | ((a >> 1) & L);
}

template <class W>
constexpr W sub(W a, W b) {
  return add(a, neg(b));
}

template <class W>
constexpr W scale(W a, unsigned c) {
  return c == 0 ? W(0) : (c == 1 ? a : neg(a));
}

template <class W>
constexpr unsigned coeff(W a, unsigned i) {
  return static_cast<unsigned>((a >> (2 * i)) & 3);
}

/// Mask with bit 2i set wherever coefficient i is nonzero.
template <class W>
constexpr W nonzero_mask(W a) {
  return (a | (a >> 1)) & lo_mask<W>();
}

template <class W>
constexpr int bit_width(W a) {
  if constexpr (std::is_same_v<W, u128>) {
    const auto hi = static_cast<uint64_t>(a >> 64);
    return hi != 0 ? 64 + std::bit_width(hi) : std::bit_width(static_cast<uint64_t>(a));
  } else {
    return std::bit_width(a);
  }
}

template <class W>
constexpr int countr_zero(W a) {
  if constexpr (std::is_same_v<W, u128>) {
    const auto lo = static_cast<uint64_t>(a);
    return lo != 0 ? std::countr_zero(lo) : 64 + std::countr_zero(static_cast<uint64_t>(a >> 64));
  } else {
    return std::countr_zero(a);
  }
}

/// Degree of a nonzero packed polynomial; -1 for zero.
template <class W>
constexpr int degree(W a) {
  return (bit_width(a) + 1) / 2 - 1;
}

/// Product, assuming deg a + deg b < coeff_capacity<W>().
template <class W>
constexpr W mul(W a, W b) {
  W r = 0;
  const W na = neg(a);
  W nz = nonzero_mask(b);
  while (nz != 0) {
    const int pos = countr_zero(nz);
    const W term = ((b >> pos) & 3) == 1 ? a : na;
    r = add(r, term << pos);
    nz &= nz - 1;
  }
  return r;
}

/// Moves coefficient i to position 3i; this is p(t)^3 over F_3.
/// Assumes 3 deg a < coeff_capacity<W>().
template <class W>
constexpr W spread3(W a) {
  W r = 0;
  W nz = nonzero_mask(a);
  while (nz != 0) {
    const int pos = countr_zero(nz);
    r |= ((a >> pos) & 3) << (3 * pos);
    nz &= nz - 1;
  }
  return r;
}

/// True when no coefficient uses the invalid pattern 11.
template <class W>
constexpr bool is_valid(W a) {
  constexpr W L = lo_mask<W>();
  return (a & (a >> 1) & L) == 0;
}

}  // namespace dp2::packed
