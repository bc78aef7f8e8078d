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

#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "dp2/gf.hpp"

using dp2::Gf3;
using dp2::Gf81;

namespace {

// Schoolbook product in F_3[z] reduced by z^4 = 2 z^2 + 1, on plain ints.
std::array<int, 4> slow_mul(const Gf81& a, const Gf81& b) {
  int c[7] = {};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) c[i + j] += a.coeff(i).value() * b.coeff(j).value();
  for (int k = 6; k >= 4; --k) {
    c[k - 2] += 2 * c[k];
    c[k - 4] += c[k];
    c[k] = 0;
  }
  return {c[0] % 3, c[1] % 3, c[2] % 3, c[3] % 3};
}

Gf81 make(int c0, int c1, int c2, int c3) { return Gf81(Gf3(c0), Gf3(c1), Gf3(c2), Gf3(c3)); }

}  // namespace

TEST_CASE("gf3 arithmetic") {
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      CHECK((Gf3(a) + Gf3(b)).value() == (a + b) % 3);
      CHECK((Gf3(a) * Gf3(b)).value() == (a * b) % 3);
      CHECK((Gf3(a) - Gf3(b)).value() == (a - b + 3) % 3);
    }
  CHECK(Gf3(-1).value() == 2);
  CHECK(Gf3(2).inverse() * Gf3(2) == Gf3(1));
}

TEST_CASE("gf81 examples") {
  const Gf81 z = Gf81::zeta();
  CHECK(z * z.pow(3) == make(1, 0, 2, 0));
  const Gf81 i = make(2, 0, 1, 0);
  CHECK(i * i == Gf81::from_int(2));
  CHECK(i == dp2::gf81_sqrt_minus_one());
  for (const Gf81& a : dp2::gf81_elements()) CHECK(Gf81::from_int(1) * a == a);
  CHECK(dp2::frobenius(Gf81::from_int(0)) == Gf81::from_int(0));
  CHECK(dp2::frobenius(Gf81::from_int(1)) == Gf81::from_int(1));
  CHECK(dp2::frobenius(Gf81::from_int(2)) == Gf81::from_int(2));
  CHECK(dp2::frobenius(dp2::frobenius(dp2::frobenius(dp2::frobenius(z)))) == z);
  CHECK(dp2::frobenius(z) != z);
  CHECK(dp2::frobenius(i) == -i);
}

TEST_CASE("gf81 multiplication matches schoolbook reduction") {
  for (const Gf81& a : dp2::gf81_elements())
    for (const Gf81& b : dp2::gf81_elements()) {
      const auto c = slow_mul(a, b);
      const Gf81 p = a * b;
      for (int k = 0; k < 4; ++k) REQUIRE(p.coeff(k).value() == c[static_cast<size_t>(k)]);
    }
}

TEST_CASE("gf81 field laws") {
  const auto& all = dp2::gf81_elements();
  int square_roots_of_minus_one = 0;
  for (const Gf81& a : all) {
    CHECK(Gf81::from_index(a.index()) == a);
    if (a * a == Gf81::from_int(2)) ++square_roots_of_minus_one;
    if (!a.is_zero()) {
      CHECK(a.pow(80) == Gf81::from_int(1));
      CHECK(a * a.inverse() == Gf81::from_int(1));
    }
    for (const Gf81& b : all) {
      CHECK(dp2::frobenius(a * b) == dp2::frobenius(a) * dp2::frobenius(b));
      CHECK(dp2::frobenius(a + b) == dp2::frobenius(a) + dp2::frobenius(b));
    }
  }
  CHECK(square_roots_of_minus_one == 2);
  CHECK_THROWS_AS(Gf81().inverse(), std::domain_error);
}

TEST_CASE("gf81 roots") {
  const std::vector<Gf3> quartic{Gf3(2), Gf3(0), Gf3(1), Gf3(0), Gf3(1)};
  const auto r4 = dp2::roots_in_gf81(quartic);
  CHECK(r4.size() == 4);
  for (const Gf81& r : r4) CHECK(std::find(r4.begin(), r4.end(), dp2::frobenius(r)) != r4.end());

  std::vector<Gf3> eighth(9);
  eighth[0] = Gf3(1);
  eighth[8] = Gf3(1);
  const auto r8 = dp2::roots_in_gf81(eighth);
  CHECK(r8.size() == 8);
  for (const Gf81& r : r4) CHECK(std::find(r8.begin(), r8.end(), r) != r8.end());

  const std::vector<Gf3> linear{Gf3(2), Gf3(1)};
  const auto r1 = dp2::roots_in_gf81(linear);
  REQUIRE(r1.size() == 1);
  CHECK(r1[0] == Gf81::from_int(1));

  CHECK_THROWS_AS(dp2::roots_in_gf81(std::vector<Gf3>{Gf3(0)}), std::invalid_argument);
}

TEST_CASE("gf81 text form") {
  CHECK(Gf81().to_string() == "0");
  CHECK(Gf81::from_int(2).to_string() == "2");
  CHECK(make(2, 0, 1, 0).to_string() == "z^2+2");
  CHECK(make(0, 2, 0, 2).to_string() == "2*z^3+2*z");
}
