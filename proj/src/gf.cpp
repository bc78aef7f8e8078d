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

#include "dp2/gf.hpp"

#include <stdexcept>

namespace dp2 {

Gf81 Gf81::from_index(int index) {
  if (index < 0 || index >= kOrder) throw std::out_of_range("Gf81 index out of range");
  Gf81 r;
  for (int i = 0; i < 4; ++i) {
    r.c_[static_cast<size_t>(i)] = Gf3(index % 3);
    index /= 3;
  }
  return r;
}

int Gf81::index() const {
  int n = 0;
  for (int i = 3; i >= 0; --i) n = n * 3 + c_[static_cast<size_t>(i)].value();
  return n;
}

Gf81 operator+(const Gf81& a, const Gf81& b) {
  Gf81 r;
  for (size_t i = 0; i < 4; ++i) r.c_[i] = a.c_[i] + b.c_[i];
  return r;
}

Gf81 operator-(const Gf81& a, const Gf81& b) {
  Gf81 r;
  for (size_t i = 0; i < 4; ++i) r.c_[i] = a.c_[i] - b.c_[i];
  return r;
}

Gf81 Gf81::operator-() const {
  Gf81 r;
  for (size_t i = 0; i < 4; ++i) r.c_[i] = -c_[i];
  return r;
}

Gf81 operator*(const Gf81& a, const Gf81& b) {
  std::array<int, 7> prod{};
  for (size_t i = 0; i < 4; ++i) {
    for (size_t j = 0; j < 4; ++j) prod[i + j] += a.c_[i].value() * b.c_[j].value();
  }
  // z^4 = 2z^2 + 1, applied from the top down.
  for (size_t k = 6; k >= 4; --k) {
    const int c = prod[k] % 3;
    prod[k] = 0;
    prod[k - 2] += 2 * c;
    prod[k - 4] += c;
  }
  return Gf81(Gf3(prod[0]), Gf3(prod[1]), Gf3(prod[2]), Gf3(prod[3]));
}

Gf81 Gf81::pow(uint64_t e) const {
  Gf81 result = Gf81::from_int(1);
  Gf81 base = *this;
  while (e != 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

Gf81 Gf81::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero in F_81");
  return pow(79);
}

std::string Gf81::to_string() const {
  static constexpr const char* kPowers[] = {"", "z", "z^2", "z^3"};
  std::string out;
  for (int i = 3; i >= 0; --i) {
    const uint8_t c = c_[static_cast<size_t>(i)].value();
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += static_cast<char>('0' + c);
    } else {
      if (c != 1) {
        out += static_cast<char>('0' + c);
        out += '*';
      }
      out += kPowers[i];
    }
  }
  return out.empty() ? "0" : out;
}

Gf81 frobenius(const Gf81& a) { return a * a * a; }

const std::array<Gf81, 81>& gf81_elements() {
  static const std::array<Gf81, 81> elems = [] {
    std::array<Gf81, 81> e{};
    for (int i = 0; i < 81; ++i) e[static_cast<size_t>(i)] = Gf81::from_index(i);
    return e;
  }();
  return elems;
}

Gf81 gf81_sqrt_minus_one() { return Gf81(Gf3(2), Gf3(0), Gf3(1), Gf3(0)); }

Gf81 evaluate(std::span<const Gf3> coeffs, const Gf81& a) {
  Gf81 acc;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * a + Gf81(*it);
  return acc;
}

namespace {

template <class Coeff>
std::vector<Gf81> scan_roots(std::span<const Coeff> coeffs) {
  size_t len = coeffs.size();
  while (len > 0 && coeffs[len - 1].is_zero()) --len;
  if (len == 0) throw std::invalid_argument("roots_in_gf81: zero polynomial");
  if (len > 9) throw std::invalid_argument("roots_in_gf81: degree exceeds 8");
  std::vector<Gf81> roots;
  for (const Gf81& a : gf81_elements()) {
    Gf81 acc;
    for (size_t i = len; i-- > 0;) acc = acc * a + Gf81(coeffs[i]);
    if (acc.is_zero()) roots.push_back(a);
  }
  return roots;
}

}  // namespace

std::vector<Gf81> roots_in_gf81(std::span<const Gf3> coeffs) { return scan_roots(coeffs); }

std::vector<Gf81> roots_in_gf81(std::span<const Gf81> coeffs) { return scan_roots(coeffs); }

}  // namespace dp2
