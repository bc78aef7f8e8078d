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

#include <map>
#include <random>
#include <set>

#include "dp2/orbits.hpp"
#include "oracle/naive.hpp"

using dp2::Gf3;
using dp2::Moebius;
using dp2::PackedPoly;
using dp2::Param;

namespace {

PackedPoly P(std::initializer_list<int> c) { return PackedPoly::from_coeffs(c); }

// Two level-8 curves found by the search, in different orbits.
const Param kCurve{P({0, 0, 0, 0, 1, 0, 2}), P({0, 0, 1, 0, 0, 0, 1}), P({1, 0, 0, 0, 1, 0, 0, 0, 1}),
                   P({0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1}), 8};
const Param kOther{P({0, 1, 2, 2, 1}), P({2, 1, 1, 1, 0, 0, 1}), P({1, 2, 0, 2, 2, 1, 0, 1, 1}),
                   P({0, 2, 0, 1, 1, 0, 1, 1, 0, 1, 0, 0, 1, 0, 0, 1}), 8};

oracle::Poly to_oracle(PackedPoly p) {
  const auto c = p.coeffs();
  return oracle::Poly(c.begin(), c.end());
}

// sum c_i (a t + b)^i (c t + e)^(n - i) on plain digit vectors.
oracle::Poly substitute(const oracle::Poly& p, int n, const Moebius& g) {
  const oracle::Poly num{g.b().value(), g.a().value()}, den{g.e().value(), g.c().value()};
  auto power = [](const oracle::Poly& base, int k) {
    oracle::Poly r{1};
    for (int i = 0; i < k; ++i) r = oracle::mul(r, base);
    return r;
  };
  oracle::Poly out;
  for (int i = 0; i <= n; ++i) {
    const int c = oracle::coeff(p, static_cast<size_t>(i));
    if (c == 0) continue;
    oracle::Poly term = oracle::mul(power(num, i), power(den, n - i));
    for (int k = 1; k < c; ++k) term = oracle::add(term, oracle::mul(power(num, i), power(den, n - i)));
    out = oracle::add(out, term);
  }
  return out;
}

Param random_param(std::mt19937_64& rng, int d) {
  auto poly = [&](int deg) {
    std::vector<uint8_t> c(static_cast<size_t>(deg) + 1);
    for (auto& v : c) v = static_cast<uint8_t>(rng() % 3);
    return PackedPoly::from_coeffs(c);
  };
  Param p{poly(d), poly(d), poly(d), poly(2 * d), d};
  if (p.x.is_zero() && p.y.is_zero() && p.z.is_zero()) p.y = P({1});
  return p;
}

}  // namespace

TEST_CASE("PGL2(F3) is a group of order 24 with the orders of S4") {
  const auto all = Moebius::all();
  REQUIRE(all.size() == 24);
  CHECK(all[0] == Moebius::identity());
  std::set<Moebius> distinct(all.begin(), all.end());
  CHECK(distinct.size() == 24);
  std::map<int, int> orders;
  for (const Moebius& g : all) {
    ++orders[g.order()];
    CHECK(dp2::compose(g, g.inverse()) == Moebius::identity());
    CHECK(dp2::compose(Moebius::identity(), g) == g);
    for (const Moebius& h : all) {
      CHECK(distinct.count(dp2::compose(g, h)) == 1);
      for (const Moebius& k : {all[3], all[17]}) {
        CHECK(dp2::compose(dp2::compose(g, h), k) == dp2::compose(g, dp2::compose(h, k)));
      }
    }
  }
  CHECK(orders == std::map<int, int>{{1, 1}, {2, 9}, {3, 8}, {4, 6}});
  CHECK_THROWS_AS(Moebius::from_matrix(Gf3(1), Gf3(1), Gf3(1), Gf3(1)), std::invalid_argument);
  CHECK(Moebius::from_matrix(Gf3(2), Gf3(0), Gf3(0), Gf3(2)) == Moebius::identity());
}

TEST_CASE("scalar normalization") {
  CHECK(dp2::scalar_normalize({P({}), P({0, 2}), P({2}), P({}), 1}) == Param{P({}), P({0, 1}), P({1}), P({}), 1});
  CHECK(dp2::scalar_normalize({P({}), P({0, 1}), P({2}), P({0, 2}), 1}) ==
        Param{P({}), P({0, 1}), P({2}), P({0, 2}), 1});
  CHECK_THROWS_AS(dp2::scalar_normalize({P({}), P({}), P({}), P({0, 1}), 1}), std::invalid_argument);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const Param p = random_param(rng, 4);
    const Param n = dp2::scalar_normalize(p);
    CHECK(dp2::scalar_normalize(n) == n);
    CHECK(dp2::scalar_normalize({-p.x, -p.y, -p.z, p.w, 4}) == n);
    const oracle::Quad q = oracle::normalize({to_oracle(p.x), to_oracle(p.y), to_oracle(p.z), to_oracle(p.w)});
    CHECK(q.x == to_oracle(n.x));
    CHECK(q.y == to_oracle(n.y));
    CHECK(q.z == to_oracle(n.z));
  }
}

TEST_CASE("act examples") {
  const Param p{P({}), P({0, 1}), P({1}), P({}), 1};
  CHECK(dp2::act(Moebius::identity(), p) == p);
  const Moebius shift = Moebius::from_matrix(Gf3(1), Gf3(1), Gf3(0), Gf3(1));
  CHECK(dp2::act(shift, p) == Param{P({}), P({1, 1}), P({1}), P({}), 1});
  const Moebius inv = Moebius::from_matrix(Gf3(0), Gf3(1), Gf3(1), Gf3(0));
  auto reverse = [](PackedPoly q, int budget) {
    std::vector<uint8_t> c(static_cast<size_t>(budget) + 1);
    for (int i = 0; i <= budget; ++i) c[static_cast<size_t>(budget - i)] = q.coeff(i).value();
    return PackedPoly::from_coeffs(c);
  };
  const Param r = dp2::act(inv, kCurve);
  CHECK(r == dp2::scalar_normalize({reverse(kCurve.x, 8), reverse(kCurve.y, 8), reverse(kCurve.z, 8),
                                    reverse(kCurve.w, 16), 8}));
}

TEST_CASE("act matches direct substitution and is an action") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 60; ++i) {
    const int d = 1 + static_cast<int>(rng() % 8);
    const Param p = random_param(rng, d);
    for (const Moebius& g : Moebius::all()) {
      const Param a = dp2::act(g, p);
      const oracle::Quad q = oracle::normalize({substitute(to_oracle(p.x), d, g), substitute(to_oracle(p.y), d, g),
                                                substitute(to_oracle(p.z), d, g),
                                                substitute(to_oracle(p.w), 2 * d, g)});
      if (q.x.empty() && q.y.empty() && q.z.empty()) continue;
      REQUIRE(to_oracle(a.x) == q.x);
      REQUIRE(to_oracle(a.y) == q.y);
      REQUIRE(to_oracle(a.z) == q.z);
      REQUIRE(to_oracle(a.w) == q.w);
    }
    for (const Moebius& g : Moebius::all())
      for (const Moebius& h : Moebius::all()) {
        REQUIRE(dp2::act(g, dp2::act(h, p)) == dp2::act(dp2::compose(g, h), p));
      }
  }
}

TEST_CASE("act preserves solutions and level-exactness") {
  for (const Param& p : {kCurve, kOther}) {
    for (const Moebius& g : Moebius::all()) {
      const Param q = dp2::act(g, p);
      CHECK(dp2::verify_param(q));
      CHECK(q.w.degree() <= 15);
      CHECK(q.x.degree() <= 7);
      CHECK(q.x.coeff(0).is_zero());
    }
  }
}

TEST_CASE("orbit partition") {
  CHECK(dp2::orbit_partition({}).empty());
  std::vector<Param> members;
  for (const Moebius& g : Moebius::all()) members.push_back(dp2::act(g, kCurve));
  const auto orbits = dp2::orbit_partition(members);
  REQUIRE(orbits.size() == 1);
  CHECK(orbits[0].size() == 24);
  CHECK(std::find(orbits[0].members.begin(), orbits[0].members.end(), kOther) == orbits[0].members.end());
  for (const Param& m : orbits[0].members) CHECK_FALSE(dp2::stream_less(m, orbits[0].representative));
  CHECK(orbits[0].representative == kCurve);

  std::vector<Param> partial(members.begin(), members.begin() + 5);
  CHECK_THROWS_AS(dp2::orbit_partition(partial), dp2::InconsistentOrbitError);

  // w -> -w stays in the orbit here: t -> -t negates w and fixes x, y, z.
  const Param flipped = dp2::scalar_normalize({kCurve.x, kCurve.y, kCurve.z, -kCurve.w, 8});
  CHECK(dp2::act(Moebius::from_matrix(Gf3(2), Gf3(0), Gf3(0), Gf3(1)), kCurve) == flipped);

  std::vector<Param> both = members;
  for (const Moebius& g : Moebius::all()) both.push_back(dp2::act(g, kOther));
  const auto two = dp2::orbit_partition(both);
  CHECK(two.size() == 2);
  for (const auto& o : two) CHECK(o.size() == 24);
}

TEST_CASE("stream order") {
  const Param a{P({}), P({1}), P({0, 1}), P({}), 1};
  const Param b{P({}), P({0, 1}), P({1}), P({}), 1};
  CHECK(dp2::stream_less(b, a));
  CHECK_FALSE(dp2::stream_less(a, b));
  CHECK_FALSE(dp2::stream_less(a, a));
}
