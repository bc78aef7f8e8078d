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

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dp2/gf.hpp"
#include "dp2/packed.hpp"

namespace dp2 {

/// Raised when a polynomial result would not fit in PackedPoly::kCapacity
/// coefficients.
class CapacityError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Raised by the text parsers.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Polynomial over F_3 with up to 64 coefficients, two bits each.
///
/// Ordering (`<=>`) compares the packed words numerically, which is the same
/// as comparing PolyIndex values: the highest differing coefficient decides.
class PackedPoly {
 public:
  static constexpr int kCapacity = 64;
  using Word = packed::u128;

  constexpr PackedPoly() = default;

  static PackedPoly from_coeffs(std::span<const uint8_t> coeffs);
  static PackedPoly from_coeffs(std::initializer_list<int> coeffs);
  /// Wraps raw packed bits; throws std::invalid_argument on the 11 pattern.
  static PackedPoly from_bits(Word bits);
  static PackedPoly from_word(uint64_t lo) { return from_bits(lo); }
  static PackedPoly monomial(int exponent, Gf3 c = Gf3(1));
  static PackedPoly constant(Gf3 c) { return monomial(0, c); }

  constexpr Word bits() const { return bits_; }
  constexpr uint64_t low_word() const { return static_cast<uint64_t>(bits_); }
  constexpr uint64_t high_word() const { return static_cast<uint64_t>(bits_ >> 64); }

  Gf3 coeff(int i) const;
  /// Coefficients up to the degree, ascending; empty for zero.
  std::vector<uint8_t> coeffs() const;
  /// std::nullopt for the zero polynomial.
  std::optional<int> degree() const;
  constexpr bool is_zero() const { return bits_ == 0; }

  friend PackedPoly operator+(PackedPoly a, PackedPoly b) {
    return PackedPoly(packed::add(a.bits_, b.bits_));
  }
  friend PackedPoly operator-(PackedPoly a, PackedPoly b) {
    return PackedPoly(packed::sub(a.bits_, b.bits_));
  }
  PackedPoly operator-() const { return PackedPoly(packed::neg(bits_)); }
  PackedPoly scaled(Gf3 c) const { return PackedPoly(packed::scale(bits_, c.value())); }
  /// Multiplication by t^k; throws CapacityError on overflow.
  PackedPoly shifted(int k) const;

  Gf3 eval(Gf3 t) const;
  Gf81 eval(const Gf81& t) const;
  PackedPoly derivative() const;

  friend constexpr bool operator==(PackedPoly, PackedPoly) = default;
  friend constexpr std::strong_ordering operator<=>(PackedPoly a, PackedPoly b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  constexpr explicit PackedPoly(Word bits) : bits_(bits) {}
  Word bits_ = 0;
};

PackedPoly mul(PackedPoly p, PackedPoly q);
/// p(t)^3 by coefficient spreading (a_i moves to t^{3i}).
PackedPoly cube(PackedPoly p);
PackedPoly square(PackedPoly p);
/// Left side of x^4 + w^2 = y z^3 - y^3 z.
PackedPoly lhs(PackedPoly x, PackedPoly w);
/// Right side of x^4 + w^2 = y z^3 - y^3 z.
PackedPoly rhs(PackedPoly y, PackedPoly z);

/// Number whose base-3 digits are the coefficients (constant term least
/// significant). 64-bit indices cover polynomials of degree < 40.
struct PolyIndex {
  static constexpr int kMaxDigits = 40;
  uint64_t value = 0;
  friend constexpr auto operator<=>(PolyIndex, PolyIndex) = default;
};

PackedPoly to_poly(PolyIndex n);
/// Throws CapacityError when deg p >= PolyIndex::kMaxDigits.
PolyIndex index_of(PackedPoly p);

/// A candidate parametrization (x, y, z, w) at level d.
struct Param {
  PackedPoly x, y, z, w;
  int level = 0;

  friend bool operator==(const Param&, const Param&) = default;
  /// Level first, then the four PolyIndex values.
  friend std::strong_ordering operator<=>(const Param& a, const Param& b);
};

/// True iff x^4 + w^2 == y z^3 - y^3 z.
bool verify_param(const Param& p);

/// `[c0,c1,...]` up to the degree; the zero polynomial is `[]`.
std::string to_text(PackedPoly p);
/// Accepts the form produced by to_text, with optional spaces and trailing
/// zero coefficients.
PackedPoly parse_poly(std::string_view text);

/// Sixteen bytes, little-endian.
std::array<uint8_t, 16> to_bytes(PackedPoly p);
PackedPoly from_bytes(std::span<const uint8_t, 16> bytes);

}  // namespace dp2
