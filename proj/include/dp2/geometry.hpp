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

// Arithmetic of the surface -w^2 = x^4 + y^3 z - y z^3 over F_3: bitangents
// of the branch quartic, the 56 exceptional curves over F_81, the Frobenius
// action on the Picard lattice, point counts, Galois cohomology and
// automorphisms.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dp2/gf.hpp"
#include "dp2/intmat.hpp"

namespace dp2::geometry {

using Point3 = std::array<Gf81, 3>;

/// The branch quartic x^4 + y^3 z - y z^3.
Gf81 quartic(const Point3& p);

enum class LineKind { kYEqZ, kYEqMinusZ, kYZero, kZZero, kSlanted };

struct BitangentLine {
  LineKind kind = LineKind::kYEqZ;
  // Slanted lines are x = a z + b y with a^8 = -1, a b^3 - a^3 b + 1 = 0.
  Gf81 a, b;

  /// (A, B, C) with A x + B y + C z = 0.
  Point3 equation() const;
  bool contains(const Point3& p) const;
  /// Linear form whose square gives the w-branch: x for the special lines,
  /// x + a^5 y for slanted ones.
  Gf81 branch_form(const Point3& p) const;

  friend bool operator==(const BitangentLine&, const BitangentLine&) = default;
};

/// A bitangent with a choice of w = sign * sqrt(-1) * branch_form^2.
struct ExcCurve {
  BitangentLine line;
  int sign = 1;  // +1 or -1

  Gf81 branch(const Point3& p) const;
  /// True when (p, w) is a point of the curve.
  bool contains(const Point3& p, const Gf81& w) const;

  friend bool operator==(const ExcCurve&, const ExcCurve&) = default;
};

BitangentLine frobenius(const BitangentLine& l);
/// Applies a -> a^3 to the line; sqrt(-1) -> -sqrt(-1) flips the sign.
ExcCurve frobenius(const ExcCurve& c);

/// Roots of x^8 + 1: z, F(z), F^2(z), F^3(z), then the roots of
/// x^4 + 2x^2 + 2 in Frobenius order starting from the least element.
std::vector<Gf81> eighth_roots_of_minus_one();

/// The b with a b^3 - a^3 b + 1 = 0, sorted.
std::vector<Gf81> slanted_offsets(const Gf81& a);

/// 4 special lines, then 8 x 3 slanted lines in root order.
std::vector<BitangentLine> bitangents();

/// The quartic restricted to the line is a constant times the fourth power
/// of a linear form (checked by enumerating forms over F_81); for slanted
/// lines it is exactly (x + a^5 y)^4.
bool tangency_certificate(const BitangentLine& l);

/// Curves 2i and 2i+1 are the + and - lifts of bitangents()[i].
std::vector<ExcCurve> exceptional_curves();

std::string label(const ExcCurve& c);

/// -1 on the diagonal, 2 for conjugate lifts, otherwise 1 or 0 depending on
/// whether the two w-branches agree over the common point of the lines.
int intersect(const ExcCurve& c1, const ExcCurve& c2);

/// Full 56 x 56 intersection table.
std::vector<std::vector<int>> intersection_table(std::span<const ExcCurve> curves);

/// Indices into the curve list: seven disjoint curves d1..d7 and a triple
/// whose sum is d8.
struct PicardBasis {
  std::array<size_t, 7> disjoint{};
  std::array<size_t, 3> triple{};
};

/// First configuration in index order. Throws std::logic_error if none.
PicardBasis picard_basis(std::span<const ExcCurve> curves);

using PicVector = std::array<int64_t, 8>;

/// diag(-1, ..., -1, +1).
int64_t pairing(const PicVector& a, const PicVector& b);
IntMatrix gram_form();

/// (-C.d1, ..., -C.d7, C.d8).
PicVector class_of(size_t curve, std::span<const ExcCurve> curves, const PicardBasis& basis);

/// Gram matrix of d1..d8 computed from the intersection rule.
IntMatrix basis_gram(std::span<const ExcCurve> curves, const PicardBasis& basis);

PicVector anticanonical_class();

/// Column i is the class of the Frobenius image of d_i.
IntMatrix frobenius_matrix(std::span<const ExcCurve> curves, const PicardBasis& basis);

/// Expected Frobenius matrix, in a basis labelling of its own.
IntMatrix reference_frobenius_matrix();

/// A Picard basis in which frobenius_matrix reproduces the reference matrix
/// entry by entry.
struct ReferenceLabelling {
  PicardBasis basis;
};

/// Searches every set of seven disjoint curves and every ordering of it.
std::optional<ReferenceLabelling> find_reference_labelling(std::span<const ExcCurve> curves);

struct PointCount {
  int extension = 1;
  uint64_t field_size = 3;
  uint64_t enumerated = 0;
  int64_t weil = 0;
};

/// Points of P(1,1,1,2) over F_{3^k} on the surface, k in {1, 2, 4}; also
/// returns q^2 + q tr(m^k) + 1.
PointCount count_points(int extension, const IntMatrix& frobenius);

/// Points over F_3 as [x:y:z:w] with the first nonzero of x, y, z equal to 1.
std::vector<std::array<int, 4>> rational_points();

/// H^1(Z/4, Pic) via the norm kernel modulo the image of m - 1.
std::vector<int64_t> h1_galois(const IntMatrix& frobenius);

using Mat3 = std::array<Gf3, 9>;  // row-major

struct AutomorphismReport {
  /// GL(3, F_3) matrices with Q(A v) = Q(v).
  std::vector<Mat3> preserving;
  /// Matrices with Q(A v) = -Q(v).
  size_t anti_preserving = 0;
  /// |{A : Q o A in F_3^* Q} / {+-1}|.
  size_t projective_order = 0;
  /// Determinant-one elements of `preserving`.
  std::vector<Mat3> det_one;
  bool det_one_block_form = false;   // diag(1, B) with B in SL(2, 3)
  bool det_one_is_group = false;
  bool sl23_element_orders = false;  // 1 x1, 1 x2, 8 x3, 6 x4, 8 x6
  bool involution_commutes = false;
  bool swap_symmetry_preserves = false;  // (y, z) -> (z, -y)
  /// Pairs (A mod +-1, w -> +-w).
  size_t surface_automorphisms = 0;
};

AutomorphismReport automorphism_group();

/// Key-value data plus named pass/fail checks, in a fixed order.
struct Report {
  std::vector<std::pair<std::string, std::string>> values;
  std::vector<std::pair<std::string, bool>> checks;
  std::vector<std::string> curve_lines;
  std::vector<std::string> bitangent_lines;
  bool all_passed() const;
};

Report build_report();

}  // namespace dp2::geometry
