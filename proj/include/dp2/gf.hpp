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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dp2 {

/// Residue class modulo 3, stored as 0, 1 or 2.
class Gf3 {
 public:
  constexpr Gf3() = default;
  constexpr explicit Gf3(int v) : v_(static_cast<uint8_t>(((v % 3) + 3) % 3)) {}

  constexpr uint8_t value() const { return v_; }
  constexpr bool is_zero() const { return v_ == 0; }

  friend constexpr Gf3 operator+(Gf3 a, Gf3 b) { return Gf3(a.v_ + b.v_); }
  friend constexpr Gf3 operator-(Gf3 a, Gf3 b) { return Gf3(a.v_ + 3 - b.v_); }
  friend constexpr Gf3 operator*(Gf3 a, Gf3 b) { return Gf3(a.v_ * b.v_); }
  constexpr Gf3 operator-() const { return Gf3(3 - v_); }
  constexpr Gf3& operator+=(Gf3 o) { return *this = *this + o; }
  constexpr Gf3& operator-=(Gf3 o) { return *this = *this - o; }
  constexpr Gf3& operator*=(Gf3 o) { return *this = *this * o; }

  // a * a^2 = 1 for a != 0, and 1, 2 are their own inverses.
  constexpr Gf3 inverse() const { return *this; }

  friend constexpr bool operator==(Gf3, Gf3) = default;
  friend constexpr auto operator<=>(Gf3, Gf3) = default;

 private:
  uint8_t v_ = 0;
};

/// Element of F_81 = F_3[z]/(z^4 + z^2 + 2), stored as coefficients of
/// 1, z, z^2, z^3.
class Gf81 {
 public:
  static constexpr int kOrder = 81;

  constexpr Gf81() = default;
  constexpr Gf81(Gf3 c0, Gf3 c1, Gf3 c2, Gf3 c3) : c_{c0, c1, c2, c3} {}
  constexpr explicit Gf81(Gf3 c) : c_{c, Gf3(), Gf3(), Gf3()} {}

  static constexpr Gf81 from_int(int v) { return Gf81(Gf3(v)); }
  static constexpr Gf81 zeta() { return Gf81(Gf3(0), Gf3(1), Gf3(0), Gf3(0)); }

  /// Element whose coefficient vector is the base-3 expansion of `index`
  /// (c0 least significant). Valid for 0 <= index < 81.
  static Gf81 from_index(int index);
  int index() const;

  constexpr Gf3 coeff(int i) const { return c_[static_cast<size_t>(i)]; }
  constexpr const std::array<Gf3, 4>& coeffs() const { return c_; }

  constexpr bool is_zero() const {
    return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero();
  }
  /// True when the element lies in the prime field.
  constexpr bool in_prime_field() const {
    return c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero();
  }

  friend Gf81 operator+(const Gf81& a, const Gf81& b);
  friend Gf81 operator-(const Gf81& a, const Gf81& b);
  friend Gf81 operator*(const Gf81& a, const Gf81& b);
  Gf81 operator-() const;
  Gf81& operator+=(const Gf81& o) { return *this = *this + o; }
  Gf81& operator-=(const Gf81& o) { return *this = *this - o; }
  Gf81& operator*=(const Gf81& o) { return *this = *this * o; }

  Gf81 pow(uint64_t e) const;
  /// Multiplicative inverse; throws std::domain_error on zero.
  Gf81 inverse() const;

  friend constexpr bool operator==(const Gf81&, const Gf81&) = default;
  friend constexpr auto operator<=>(const Gf81&, const Gf81&) = default;

  /// Renders as `c3*z^3+c2*z^2+c1*z+c0` with zero terms omitted and unit
  /// coefficients on non-constant terms elided; the zero element is "0".
  std::string to_string() const;

 private:
  std::array<Gf3, 4> c_{};
};

/// The Frobenius automorphism a -> a^3.
Gf81 frobenius(const Gf81& a);

/// All 81 field elements in index order.
const std::array<Gf81, 81>& gf81_elements();

/// sqrt(-1) = z^2 + 2, the fixed choice used for the w-branches of
/// exceptional curves.
Gf81 gf81_sqrt_minus_one();

/// Evaluates a polynomial with F_3 coefficients (ascending order) at `a`.
Gf81 evaluate(std::span<const Gf3> coeffs, const Gf81& a);

/// Every root in F_81 of a nonzero polynomial over F_3 of degree <= 8,
/// by exhaustive scan, in index order; multiplicities are ignored.
/// Throws std::invalid_argument for the zero polynomial or degree > 8.
std::vector<Gf81> roots_in_gf81(std::span<const Gf3> coeffs);

/// Same as above, for a polynomial with F_81 coefficients.
std::vector<Gf81> roots_in_gf81(std::span<const Gf81> coeffs);

}  // namespace dp2
