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

// Test-only reference arithmetic over F_3[t] on plain digit vectors. Shares
// no code with the packed implementation.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

namespace oracle {

using Poly = std::vector<int>;  // ascending, trimmed, digits 0..2

inline Poly trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

inline Poly from_index(uint64_t n) {
  Poly p;
  while (n) {
    p.push_back(static_cast<int>(n % 3));
    n /= 3;
  }
  return p;
}

inline int degree(const Poly& p) { return static_cast<int>(trim(p).size()) - 1; }

inline int coeff(const Poly& p, size_t i) { return i < p.size() ? p[i] : 0; }

inline Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) r[i] = (coeff(a, i) + coeff(b, i)) % 3;
  return trim(r);
}

inline Poly neg(const Poly& a) {
  Poly r(a);
  for (int& c : r) c = (3 - c) % 3;
  return trim(r);
}

inline Poly sub(const Poly& a, const Poly& b) { return add(a, neg(b)); }

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % 3;
  return trim(r);
}

inline Poly lhs(const Poly& x, const Poly& w) {
  const Poly x2 = mul(x, x);
  return add(mul(x2, x2), mul(w, w));
}

inline Poly rhs(const Poly& y, const Poly& z) {
  return sub(mul(y, mul(z, mul(z, z))), mul(mul(y, mul(y, y)), z));
}

inline int eval(const Poly& p, int t) {
  int r = 0;
  for (size_t i = p.size(); i-- > 0;) r = (r * t + p[i]) % 3;
  return r;
}

struct Quad {
  Poly x, y, z, w;
  auto key() const { return std::tie(x, y, z, w); }
  friend bool operator<(const Quad& a, const Quad& b) { return a.key() < b.key(); }
  friend bool operator==(const Quad& a, const Quad& b) { return a.key() == b.key(); }
};

/// Every (x, y, z, w) with deg x, y, z <= d and deg w <= 2d solving
/// x^4 + w^2 = y z^3 - y^3 z, with no filtering at all.
inline std::set<Quad> all_solutions(int d) {
  uint64_t n = 1;
  for (int i = 0; i <= d; ++i) n *= 3;
  uint64_t nw = 1;
  for (int i = 0; i <= 2 * d; ++i) nw *= 3;

  std::vector<Poly> small(n), wide(nw);
  for (uint64_t i = 0; i < n; ++i) small[i] = from_index(i);
  for (uint64_t i = 0; i < nw; ++i) wide[i] = from_index(i);

  std::vector<Poly> l(n * nw), r(n * n);
  for (uint64_t x = 0; x < n; ++x)
    for (uint64_t w = 0; w < nw; ++w) l[x * nw + w] = lhs(small[x], wide[w]);
  for (uint64_t y = 0; y < n; ++y)
    for (uint64_t z = 0; z < n; ++z) r[y * n + z] = rhs(small[y], small[z]);

  std::set<Quad> out;
  for (uint64_t x = 0; x < n; ++x)
    for (uint64_t y = 0; y < n; ++y)
      for (uint64_t z = 0; z < n; ++z)
        for (uint64_t w = 0; w < nw; ++w) {
          if (l[x * nw + w] == r[y * n + z]) out.insert({small[x], small[y], small[z], wide[w]});
        }
  return out;
}

/// deg y = d or deg z = d or deg w = 2d - 1 (x of degree d is impossible).
inline bool level_exact(const Quad& q, int d) {
  return degree(q.y) == d || degree(q.z) == d || degree(q.w) == 2 * d - 1 || degree(q.x) == d ||
         degree(q.w) == 2 * d;
}

/// Some t - c divides x, y, z and (t - c)^2 divides w.
inline bool reducible(const Quad& q) {
  for (int c = 0; c < 3; ++c) {
    if (eval(q.x, c) || eval(q.y, c) || eval(q.z, c)) continue;
    // w(t) = (t - c)^2 u(t): w(c) = 0 and the quotient by (t - c) vanishes at c.
    if (eval(q.w, c)) continue;
    Poly quotient;  // synthetic division by (t - c)
    int carry = 0;
    Poly rev(q.w.rbegin(), q.w.rend());
    for (size_t i = 0; i + 1 < rev.size(); ++i) {
      carry = (carry * c + rev[i]) % 3;
      quotient.insert(quotient.begin(), carry);
    }
    if (eval(trim(quotient), c) == 0) return true;
  }
  return false;
}

/// The image point is the same for every t: the coefficient rows of x, y, z
/// have rank <= 1 (then w is +-f^2 times a constant and the image is one of
/// at most two points, hence one point).
inline bool constant_map(const Quad& q) {
  const size_t n = std::max({q.x.size(), q.y.size(), q.z.size()});
  const Poly* rows[3] = {&q.x, &q.y, &q.z};
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
          const int m = coeff(*rows[a], i) * coeff(*rows[b], j) - coeff(*rows[a], j) * coeff(*rows[b], i);
          if (((m % 3) + 3) % 3 != 0) return false;
        }
  return true;
}

/// Multiplies (x, y, z) by 2 when the first nonzero coefficient of the x, y, z
/// stream is 2.
inline Quad normalize(Quad q) {
  for (const Poly* p : {&q.x, &q.y, &q.z}) {
    for (int c : *p) {
      if (c == 0) continue;
      if (c == 2) {
        q.x = neg(q.x);
        q.y = neg(q.y);
        q.z = neg(q.z);
      }
      return q;
    }
  }
  return q;
}

}  // namespace oracle
