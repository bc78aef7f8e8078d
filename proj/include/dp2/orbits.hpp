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
#include <span>
#include <stdexcept>
#include <vector>

#include "dp2/poly.hpp"

namespace dp2 {

/// Element of PGL(2, F_3): t -> (a t + b) / (c t + e), stored with the first
/// nonzero entry of (a, b, c, e) equal to 1.
class Moebius {
 public:
  /// Throws std::invalid_argument when the determinant vanishes.
  static Moebius from_matrix(Gf3 a, Gf3 b, Gf3 c, Gf3 e);
  static Moebius identity() { return from_matrix(Gf3(1), Gf3(0), Gf3(0), Gf3(1)); }

  /// The 24 elements in a fixed order, identity first.
  static std::span<const Moebius> all();

  Gf3 a() const { return m_[0]; }
  Gf3 b() const { return m_[1]; }
  Gf3 c() const { return m_[2]; }
  Gf3 e() const { return m_[3]; }

  Moebius inverse() const;
  int order() const;

  friend bool operator==(const Moebius&, const Moebius&) = default;
  friend auto operator<=>(const Moebius&, const Moebius&) = default;

 private:
  Moebius() = default;
  std::array<Gf3, 4> m_{};
};

/// The element acting as act(g, act(h, .)). Substitutions compose in the
/// opposite order, so this is the matrix product h * g.
Moebius compose(const Moebius& g, const Moebius& h);

/// Representative of {(x,y,z,w), (2x,2y,2z,w)} whose first nonzero
/// coefficient in the stream x, y, z is 1. Throws std::invalid_argument when
/// x = y = z = 0.
Param scalar_normalize(const Param& p);

/// Precomposition with t -> (a t + b)/(c t + e), clearing denominators by
/// (c t + e)^d on x, y, z and (c t + e)^(2d) on w, then scalar_normalize.
Param act(const Moebius& g, const Param& p);

/// Lexicographic order on the coefficient streams of x, y, z, w (ascending
/// degree, each padded to its budget d+1 or 2d+1).
bool stream_less(const Param& a, const Param& b);

struct CurveOrbit {
  Param representative;
  std::vector<Param> members;  // sorted with stream_less
  size_t size() const { return members.size(); }
};

/// Raised when an orbit leaves the input set.
class InconsistentOrbitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Partitions scalar-normalized parametrizations into PGL(2, F_3) orbits,
/// ordered by representative. The representative is the stream_less-least
/// member.
std::vector<CurveOrbit> orbit_partition(std::span<const Param> params);

}  // namespace dp2
