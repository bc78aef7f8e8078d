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

#include "dp2/orbits.hpp"

#include <algorithm>
#include <set>

namespace dp2 {

Moebius Moebius::from_matrix(Gf3 a, Gf3 b, Gf3 c, Gf3 e) {
  if ((a * e - b * c).is_zero()) throw std::invalid_argument("singular Moebius matrix");
  Moebius g;
  g.m_ = {a, b, c, e};
  for (Gf3 v : g.m_) {
    if (v.is_zero()) continue;
    if (v == Gf3(2)) {
      for (Gf3& w : g.m_) w = -w;
    }
    break;
  }
  return g;
}

std::span<const Moebius> Moebius::all() {
  static const std::vector<Moebius> elems = [] {
    std::vector<Moebius> out{Moebius::identity()};
    for (int i = 0; i < 81; ++i) {
      const Gf3 a(i % 3), b(i / 3 % 3), c(i / 9 % 3), e(i / 27);
      if ((a * e - b * c).is_zero()) continue;
      const Moebius g = from_matrix(a, b, c, e);
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    }
    return out;
  }();
  return elems;
}

Moebius Moebius::inverse() const { return from_matrix(e(), -b(), -c(), a()); }

int Moebius::order() const {
  Moebius p = *this;
  int n = 1;
  while (p != identity()) {
    p = compose(p, *this);
    ++n;
  }
  return n;
}

Moebius compose(const Moebius& g, const Moebius& h) {
  return Moebius::from_matrix(h.a() * g.a() + h.b() * g.c(), h.a() * g.b() + h.b() * g.e(),
                              h.c() * g.a() + h.e() * g.c(), h.c() * g.b() + h.e() * g.e());
}

Param scalar_normalize(const Param& p) {
  for (const PackedPoly& q : {p.x, p.y, p.z}) {
    if (q.is_zero()) continue;
    const int lowest = packed::countr_zero(packed::nonzero_mask(q.bits())) / 2;
    if (q.coeff(lowest) == Gf3(1)) return p;
    return Param{-p.x, -p.y, -p.z, p.w, p.level};
  }
  throw std::invalid_argument("scalar_normalize: x = y = z = 0");
}

namespace {

PackedPoly substitute(PackedPoly p, int budget, std::span<const PackedPoly> num_pows,
                      std::span<const PackedPoly> den_pows) {
  PackedPoly out;
  for (int i = 0; i <= budget; ++i) {
    const Gf3 c = p.coeff(i);
    if (c.is_zero()) continue;
    out = out + mul(num_pows[static_cast<size_t>(i)], den_pows[static_cast<size_t>(budget - i)]).scaled(c);
  }
  return out;
}

}  // namespace

Param act(const Moebius& g, const Param& p) {
  const int d = p.level;
  const PackedPoly num = PackedPoly::from_coeffs({g.b().value(), g.a().value()});
  const PackedPoly den = PackedPoly::from_coeffs({g.e().value(), g.c().value()});
  std::vector<PackedPoly> num_pows{PackedPoly::constant(Gf3(1))};
  std::vector<PackedPoly> den_pows{PackedPoly::constant(Gf3(1))};
  for (int i = 1; i <= 2 * d; ++i) {
    num_pows.push_back(mul(num_pows.back(), num));
    den_pows.push_back(mul(den_pows.back(), den));
  }
  Param out{substitute(p.x, d, num_pows, den_pows), substitute(p.y, d, num_pows, den_pows),
            substitute(p.z, d, num_pows, den_pows), substitute(p.w, 2 * d, num_pows, den_pows), d};
  return scalar_normalize(out);
}

bool stream_less(const Param& a, const Param& b) {
  if (a.level != b.level) return a.level < b.level;
  const int d = a.level;
  const std::array<std::pair<PackedPoly, PackedPoly>, 4> parts{
      {{a.x, b.x}, {a.y, b.y}, {a.z, b.z}, {a.w, b.w}}};
  for (size_t k = 0; k < parts.size(); ++k) {
    const int budget = k == 3 ? 2 * d : d;
    for (int i = 0; i <= budget; ++i) {
      const uint8_t ca = parts[k].first.coeff(i).value();
      const uint8_t cb = parts[k].second.coeff(i).value();
      if (ca != cb) return ca < cb;
    }
  }
  return false;
}

std::vector<CurveOrbit> orbit_partition(std::span<const Param> params) {
  const std::set<Param> input(params.begin(), params.end());
  std::set<Param> seen;
  std::vector<CurveOrbit> orbits;
  for (const Param& p : input) {
    if (seen.count(p) != 0) continue;
    std::vector<Param> members;
    for (const Moebius& g : Moebius::all()) {
      Param q = act(g, p);
      if (input.count(q) == 0) {
        throw InconsistentOrbitError("orbit of a level-" + std::to_string(p.level) +
                                     " parametrization leaves the input set");
      }
      members.push_back(std::move(q));
    }
    std::sort(members.begin(), members.end(), stream_less);
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (const Param& m : members) seen.insert(m);
    orbits.push_back(CurveOrbit{members.front(), std::move(members)});
  }
  std::sort(orbits.begin(), orbits.end(), [](const CurveOrbit& a, const CurveOrbit& b) {
    return stream_less(a.representative, b.representative);
  });
  return orbits;
}

}  // namespace dp2
