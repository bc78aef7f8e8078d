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

#include <stdexcept>

#include <random>

#include "dp2/poly.hpp"
#include "oracle/naive.hpp"

using dp2::Gf3;
using dp2::PackedPoly;

namespace {

PackedPoly P(std::initializer_list<int> c) { return PackedPoly::from_coeffs(c); }

oracle::Poly to_oracle(PackedPoly p) {
  const auto c = p.coeffs();
  return oracle::Poly(c.begin(), c.end());
}

PackedPoly random_poly(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> digit(0, 2);
  std::vector<uint8_t> c(static_cast<size_t>(max_degree) + 1);
  for (auto& v : c) v = static_cast<uint8_t>(digit(rng));
  return PackedPoly::from_coeffs(c);
}

}  // namespace

TEST_CASE("packed encoding") {
  const PackedPoly p = P({0, 1, 0, 2});
  CHECK(p.low_word() == 0b10'00'01'00);
  CHECK(p.degree() == 3);
  CHECK_FALSE(PackedPoly().degree().has_value());
  CHECK_THROWS_AS(PackedPoly::from_word(0b11), std::invalid_argument);
  CHECK(dp2::to_text(p) == "[0,1,0,2]");
  CHECK(dp2::to_text(PackedPoly()) == "[]");
  CHECK(dp2::parse_poly("[0, 1, 0, 2, 0]") == p);
  CHECK(dp2::parse_poly("[]").is_zero());
  CHECK_THROWS_AS(dp2::parse_poly("[0,3]"), dp2::ParseError);
  CHECK_THROWS_AS(dp2::parse_poly("0,1"), dp2::ParseError);
  CHECK(dp2::from_bytes(dp2::to_bytes(p)) == p);
  CHECK(dp2::to_bytes(p)[0] == 0b10'00'01'00);
  CHECK_THROWS_AS(PackedPoly::monomial(64), dp2::CapacityError);
  CHECK_THROWS_AS(PackedPoly::monomial(63).shifted(1), dp2::CapacityError);
}

TEST_CASE("poly examples") {
  CHECK(dp2::mul(P({1, 1}), P({2, 1})) == P({2, 0, 1}));
  CHECK(dp2::mul(P({1, 2, 1}), PackedPoly()).is_zero());
  const PackedPoly t1 = P({1, 1});
  CHECK(dp2::mul(dp2::mul(t1, t1), dp2::mul(t1, t1)) == P({1, 1, 0, 1, 1}));
  CHECK(dp2::cube(t1) == P({1, 0, 0, 1}));
  CHECK(dp2::cube(P({0, 1, 2})) == P({0, 0, 0, 1, 0, 0, 2}));
  CHECK(dp2::cube(PackedPoly()).is_zero());
  CHECK(dp2::lhs(P({0, 1}), P({0, 0, 1})) == P({0, 0, 0, 0, 2}));
  CHECK(dp2::lhs(P({0, 1}), P({0, 1})) == P({0, 0, 1, 0, 1}));
  CHECK(dp2::lhs(t1, PackedPoly()) == P({1, 1, 0, 1, 1}));
  CHECK(dp2::rhs(P({0, 1}), P({1})) == P({0, 1, 0, 2}));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(dp2::rhs(P({a}), P({b})).is_zero());
  CHECK(dp2::rhs(P({0, 0, 1}), t1) == P({0, 0, 1, 0, 0, 1, 2, 2}));

  CHECK(dp2::verify_param({P({}), P({1}), P({2}), P({}), 3}));
  CHECK_FALSE(dp2::verify_param({P({0, 1}), P({0, 1}), P({0, 1}), P({0, 1}), 1}));
}

TEST_CASE("mul and cube agree with the oracle") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const PackedPoly a = random_poly(rng, 15), b = random_poly(rng, 15);
    REQUIRE(to_oracle(dp2::mul(a, b)) == oracle::mul(to_oracle(a), to_oracle(b)));
    REQUIRE(to_oracle(a + b) == oracle::add(to_oracle(a), to_oracle(b)));
    REQUIRE(to_oracle(a - b) == oracle::sub(to_oracle(a), to_oracle(b)));
    REQUIRE(dp2::square(a) == dp2::mul(a, a));
  }
  // Exhaustive below degree 4, random up to degree 10.
  for (uint64_t n = 0; n < 81; ++n) {
    const PackedPoly p = dp2::to_poly(dp2::PolyIndex{n});
    CHECK(dp2::cube(p) == dp2::mul(dp2::mul(p, p), p));
  }
  for (int i = 0; i < 2000; ++i) {
    const PackedPoly p = random_poly(rng, 10);
    REQUIRE(dp2::cube(p) == dp2::mul(dp2::mul(p, p), p));
  }
}

TEST_CASE("lhs and rhs agree with the oracle") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const PackedPoly x = random_poly(rng, 7), w = random_poly(rng, 15);
    const PackedPoly y = random_poly(rng, 8), z = random_poly(rng, 8);
    REQUIRE(to_oracle(dp2::lhs(x, w)) == oracle::lhs(to_oracle(x), to_oracle(w)));
    REQUIRE(to_oracle(dp2::rhs(y, z)) == oracle::rhs(to_oracle(y), to_oracle(z)));
  }
}

TEST_CASE("PolyIndex round trip below 3^10") {
  for (uint64_t n = 0; n < 59049; ++n) {
    const PackedPoly p = dp2::to_poly(dp2::PolyIndex{n});
    REQUIRE(dp2::index_of(p).value == n);
    REQUIRE(to_oracle(p) == oracle::from_index(n));
  }
  // Ordering of packed words follows the index.
  CHECK(dp2::to_poly(dp2::PolyIndex{5}) < dp2::to_poly(dp2::PolyIndex{6}));
  CHECK(dp2::to_poly(dp2::PolyIndex{8}) < dp2::to_poly(dp2::PolyIndex{9}));
}

TEST_CASE("rhs constant term and leading cancellation") {
  // Exhaustive over degree <= 3, where deg y + 3 deg z is the top term.
  for (uint64_t a = 0; a < 81; ++a)
    for (uint64_t b = 0; b < 81; ++b) {
      const PackedPoly y = dp2::to_poly(dp2::PolyIndex{a}), z = dp2::to_poly(dp2::PolyIndex{b});
      const PackedPoly r = dp2::rhs(y, z);
      REQUIRE(r.coeff(0).is_zero());
      if (y.degree() && z.degree() && *y.degree() == *z.degree()) {
        REQUIRE(r.coeff(4 * *y.degree()).is_zero());
      }
      // Any deg <= 3 inputs: the t^12 coefficient vanishes.
      REQUIRE(r.coeff(12).is_zero());
    }
}

TEST_CASE("lhs low-order terms") {
  for (uint64_t a = 0; a < 243; ++a)
    for (uint64_t b = 0; b < 729; ++b) {
      const PackedPoly x = dp2::to_poly(dp2::PolyIndex{a}), w = dp2::to_poly(dp2::PolyIndex{b});
      const PackedPoly l = dp2::lhs(x, w);
      const bool zero_constants = x.coeff(0).is_zero() && w.coeff(0).is_zero();
      REQUIRE(l.coeff(0).is_zero() == zero_constants);
      if (zero_constants) REQUIRE(l.coeff(1).is_zero());
    }
}

TEST_CASE("lhs top coefficient") {
  // deg x = e or deg w = 2e (with the other bounded by e, 2e) makes t^{4e}
  // nonzero, including when both happen.
  std::mt19937_64 rng(13);
  for (int i = 0; i < 5000; ++i) {
    const int e = 1 + static_cast<int>(rng() % 7);
    PackedPoly x = random_poly(rng, e), w = random_poly(rng, 2 * e);
    const bool x_top = !x.coeff(e).is_zero(), w_top = !w.coeff(2 * e).is_zero();
    if (!x_top && !w_top) continue;
    REQUIRE_FALSE(dp2::lhs(x, w).coeff(4 * e).is_zero());
  }
}

TEST_CASE("symmetries preserve the equation") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 2000; ++i) {
    const PackedPoly y = random_poly(rng, 6), z = random_poly(rng, 6);
    CHECK(dp2::rhs(z, -y) == dp2::rhs(y, z));
    CHECK(dp2::rhs(y.scaled(Gf3(2)), z.scaled(Gf3(2))) == dp2::rhs(y, z));
    const PackedPoly x = random_poly(rng, 5), w = random_poly(rng, 11);
    CHECK(dp2::lhs(x, -w) == dp2::lhs(x, w));
    CHECK(dp2::lhs(x.scaled(Gf3(2)), w) == dp2::lhs(x, w));
  }
}
