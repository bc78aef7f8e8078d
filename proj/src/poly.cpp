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

#include "dp2/poly.hpp"

#include <charconv>

namespace dp2 {

namespace {

using packed::u128;

int deg_or_minus(PackedPoly p) { return packed::degree(p.bits()); }

}  // namespace

PackedPoly PackedPoly::from_coeffs(std::span<const uint8_t> coeffs) {
  Word bits = 0;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    const uint8_t c = coeffs[i] % 3;
    if (c == 0) continue;
    if (i >= static_cast<size_t>(kCapacity)) throw CapacityError("polynomial exceeds packed capacity");
    bits |= Word(c) << (2 * i);
  }
  return PackedPoly(bits);
}

PackedPoly PackedPoly::from_coeffs(std::initializer_list<int> coeffs) {
  std::vector<uint8_t> c;
  c.reserve(coeffs.size());
  for (int v : coeffs) c.push_back(Gf3(v).value());
  return from_coeffs(c);
}

PackedPoly PackedPoly::from_bits(Word bits) {
  if (!packed::is_valid(bits)) throw std::invalid_argument("packed polynomial contains the 11 pattern");
  return PackedPoly(bits);
}

PackedPoly PackedPoly::monomial(int exponent, Gf3 c) {
  if (exponent < 0 || exponent >= kCapacity) throw CapacityError("monomial exponent out of range");
  return PackedPoly(Word(c.value()) << (2 * exponent));
}

Gf3 PackedPoly::coeff(int i) const {
  if (i < 0 || i >= kCapacity) return Gf3();
  return Gf3(static_cast<int>(packed::coeff(bits_, static_cast<unsigned>(i))));
}

std::vector<uint8_t> PackedPoly::coeffs() const {
  const int d = deg_or_minus(*this);
  std::vector<uint8_t> out(static_cast<size_t>(d + 1));
  for (int i = 0; i <= d; ++i) out[static_cast<size_t>(i)] = coeff(i).value();
  return out;
}

std::optional<int> PackedPoly::degree() const {
  if (bits_ == 0) return std::nullopt;
  return packed::degree(bits_);
}

PackedPoly PackedPoly::shifted(int k) const {
  if (k < 0) throw std::invalid_argument("negative shift");
  if (bits_ == 0) return *this;
  if (deg_or_minus(*this) + k >= kCapacity) throw CapacityError("shift exceeds packed capacity");
  return PackedPoly(bits_ << (2 * k));
}

Gf3 PackedPoly::eval(Gf3 t) const {
  Gf3 acc;
  for (int i = deg_or_minus(*this); i >= 0; --i) acc = acc * t + coeff(i);
  return acc;
}

Gf81 PackedPoly::eval(const Gf81& t) const {
  Gf81 acc;
  for (int i = deg_or_minus(*this); i >= 0; --i) acc = acc * t + Gf81(coeff(i));
  return acc;
}

PackedPoly PackedPoly::derivative() const {
  Word bits = 0;
  for (int i = 1; i <= deg_or_minus(*this); ++i) {
    const Gf3 c = coeff(i) * Gf3(i);
    bits |= Word(c.value()) << (2 * (i - 1));
  }
  return PackedPoly(bits);
}

PackedPoly mul(PackedPoly p, PackedPoly q) {
  if (p.is_zero() || q.is_zero()) return PackedPoly();
  if (deg_or_minus(p) + deg_or_minus(q) >= PackedPoly::kCapacity) {
    throw CapacityError("product exceeds packed capacity");
  }
  return PackedPoly::from_bits(packed::mul(p.bits(), q.bits()));
}

PackedPoly cube(PackedPoly p) {
  if (p.is_zero()) return p;
  if (3 * deg_or_minus(p) >= PackedPoly::kCapacity) throw CapacityError("cube exceeds packed capacity");
  return PackedPoly::from_bits(packed::spread3(p.bits()));
}

PackedPoly square(PackedPoly p) { return mul(p, p); }

PackedPoly lhs(PackedPoly x, PackedPoly w) { return mul(cube(x), x) + square(w); }

PackedPoly rhs(PackedPoly y, PackedPoly z) { return mul(y, cube(z)) - mul(cube(y), z); }

PackedPoly to_poly(PolyIndex n) {
  u128 bits = 0;
  uint64_t v = n.value;
  for (int i = 0; v != 0; ++i) {
    bits |= u128(v % 3) << (2 * i);
    v /= 3;
  }
  return PackedPoly::from_bits(bits);
}

PolyIndex index_of(PackedPoly p) {
  const int d = deg_or_minus(p);
  if (d >= PolyIndex::kMaxDigits) throw CapacityError("polynomial too long for a 64-bit index");
  uint64_t n = 0;
  for (int i = d; i >= 0; --i) n = n * 3 + p.coeff(i).value();
  return PolyIndex{n};
}

std::strong_ordering operator<=>(const Param& a, const Param& b) {
  if (auto c = a.level <=> b.level; c != 0) return c;
  if (auto c = a.x <=> b.x; c != 0) return c;
  if (auto c = a.y <=> b.y; c != 0) return c;
  if (auto c = a.z <=> b.z; c != 0) return c;
  return a.w <=> b.w;
}

bool verify_param(const Param& p) { return lhs(p.x, p.w) == rhs(p.y, p.z); }

std::string to_text(PackedPoly p) {
  std::string out = "[";
  const int d = deg_or_minus(p);
  for (int i = 0; i <= d; ++i) {
    if (i > 0) out += ',';
    out += static_cast<char>('0' + p.coeff(i).value());
  }
  out += ']';
  return out;
}

PackedPoly parse_poly(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw ParseError("polynomial must be written as [c0,c1,...]");
  }
  text = trim(text.substr(1, text.size() - 2));
  std::vector<uint8_t> coeffs;
  while (!text.empty()) {
    const size_t comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    int v = -1;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || v < 0 || v > 2) {
      throw ParseError("invalid coefficient '" + std::string(item) + "'");
    }
    coeffs.push_back(static_cast<uint8_t>(v));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
    if (trim(text).empty()) throw ParseError("trailing comma in polynomial");
  }
  try {
    return PackedPoly::from_coeffs(coeffs);
  } catch (const CapacityError& e) {
    throw ParseError(e.what());
  }
}

std::array<uint8_t, 16> to_bytes(PackedPoly p) {
  std::array<uint8_t, 16> out{};
  const u128 bits = p.bits();
  for (size_t i = 0; i < 16; ++i) out[i] = static_cast<uint8_t>(bits >> (8 * i));
  return out;
}

PackedPoly from_bytes(std::span<const uint8_t, 16> bytes) {
  u128 bits = 0;
  for (size_t i = 0; i < 16; ++i) bits |= u128(bytes[i]) << (8 * i);
  return PackedPoly::from_bits(bits);
}

}  // namespace dp2
