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

#include "dp2/geometry.hpp"

#include "dp2/search.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dp2::geometry {

namespace {

const Gf81 kZero{};
const Gf81 kOne = Gf81::from_int(1);

Point3 cross(const Point3& u, const Point3& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

bool is_zero(const Point3& p) { return p[0].is_zero() && p[1].is_zero() && p[2].is_zero(); }

// Two points spanning the projective line A x + B y + C z = 0.
std::pair<Point3, Point3> line_span(const Point3& e) {
  if (!e[0].is_zero()) {
    const Gf81 inv = e[0].inverse();
    return {Point3{-(e[1] * inv), kOne, kZero}, Point3{-(e[2] * inv), kZero, kOne}};
  }
  if (!e[1].is_zero()) return {Point3{kOne, kZero, kZero}, Point3{kZero, -(e[2] * e[1].inverse()), kOne}};
  return {Point3{kOne, kZero, kZero}, Point3{kZero, kOne, kZero}};
}

// Univariate polynomials over F_81, ascending.
using UPoly = std::vector<Gf81>;

UPoly umul(const UPoly& a, const UPoly& b) {
  UPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

UPoly uadd(UPoly a, const UPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

UPoly uneg(UPoly a) {
  for (auto& c : a) c = -c;
  return a;
}

UPoly upow(const UPoly& a, int e) {
  UPoly r{kOne};
  for (int i = 0; i < e; ++i) r = umul(r, a);
  return r;
}

// Coefficients r_i of s^i t^(4-i) for a quartic restricted to s u + t v.
std::array<Gf81, 5> binary_form(const UPoly& restricted) {
  std::array<Gf81, 5> r{};
  for (size_t i = 0; i < restricted.size() && i < 5; ++i) r[i] = restricted[i];
  return r;
}

std::array<Gf81, 5> restrict_quartic(const Point3& u, const Point3& v) {
  const UPoly x{v[0], u[0]}, y{v[1], u[1]}, z{v[2], u[2]};
  const UPoly q = uadd(uadd(upow(x, 4), umul(upow(y, 3), z)), uneg(umul(y, upow(z, 3))));
  return binary_form(q);
}

bool is_constant_times_fourth_power(const std::array<Gf81, 5>& r) {
  if (std::all_of(r.begin(), r.end(), [](const Gf81& c) { return c.is_zero(); })) return false;
  // (s + beta t)^4 = s^4 + beta s^3 t + beta^3 s t^3 + beta^4 t^4 in characteristic 3.
  for (const Gf81& beta : gf81_elements()) {
    const Gf81 c = r[4];
    if (c.is_zero()) continue;
    if (r[3] == c * beta && r[2].is_zero() && r[1] == c * beta.pow(3) && r[0] == c * beta.pow(4)) return true;
  }
  // t^4
  return r[4].is_zero() && r[3].is_zero() && r[2].is_zero() && r[1].is_zero();
}

std::vector<Point3> points_on_line(const BitangentLine& l) {
  const auto [u, v] = line_span(l.equation());
  std::vector<Point3> pts{u};
  for (const Gf81& s : gf81_elements()) pts.push_back({s * u[0] + v[0], s * u[1] + v[1], s * u[2] + v[2]});
  return pts;
}

std::string join(const std::vector<int64_t>& v, const char* sep = ",") {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

std::string matrix_rows(const IntMatrix& m) {
  std::string out;
  for (size_t r = 0; r < m.rows(); ++r) {
    if (r) out += ';';
    std::vector<int64_t> row(m.cols());
    for (size_t c = 0; c < m.cols(); ++c) row[c] = m(r, c);
    out += join(row);
  }
  return out;
}

size_t index_of_curve(std::span<const ExcCurve> curves, const ExcCurve& c) {
  const auto it = std::find(curves.begin(), curves.end(), c);
  if (it == curves.end()) throw std::logic_error("Frobenius image is not an exceptional curve");
  return static_cast<size_t>(it - curves.begin());
}

// Mat3 helpers over F_3.
Mat3 mat_mul(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Gf3 s;
      for (int k = 0; k < 3; ++k) s += a[i * 3 + k] * b[k * 3 + j];
      r[i * 3 + j] = s;
    }
  return r;
}

Gf3 mat_det(const Mat3& m) {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

Mat3 mat_identity() { return {Gf3(1), Gf3(), Gf3(), Gf3(), Gf3(1), Gf3(), Gf3(), Gf3(), Gf3(1)}; }

Mat3 mat_neg(Mat3 m) {
  for (auto& c : m) c = -c;
  return m;
}

int mat_order(const Mat3& m) {
  Mat3 p = m;
  for (int k = 1; k <= 24; ++k) {
    if (p == mat_identity()) return k;
    p = mat_mul(p, m);
  }
  return 0;
}

// Ternary forms of degree <= 4, coefficient of x^i y^j z^k at i*25 + j*5 + k.
using Form = std::array<Gf3, 125>;

Form form_mul(const Form& a, const Form& b) {
  Form r{};
  for (int ia = 0; ia < 125; ++ia) {
    if (a[ia].is_zero()) continue;
    const int ai = ia / 25, aj = ia / 5 % 5, ak = ia % 5;
    for (int ib = 0; ib < 125; ++ib) {
      if (b[ib].is_zero()) continue;
      const int i = ai + ib / 25, j = aj + ib / 5 % 5, k = ak + ib % 5;
      if (i > 4 || j > 4 || k > 4) throw std::logic_error("form degree overflow");
      r[i * 25 + j * 5 + k] += a[ia] * b[ib];
    }
  }
  return r;
}

Form linear_form(Gf3 a, Gf3 b, Gf3 c) {
  Form f{};
  f[25] = a;
  f[5] = b;
  f[1] = c;
  return f;
}

// x^4 + y^3 z - y z^3 after substituting (x, y, z) -> A (x, y, z).
Form quartic_after(const Mat3& m) {
  const Form x = linear_form(m[0], m[1], m[2]);
  const Form y = linear_form(m[3], m[4], m[5]);
  const Form z = linear_form(m[6], m[7], m[8]);
  const Form x2 = form_mul(x, x), y2 = form_mul(y, y), z2 = form_mul(z, z);
  const Form x4 = form_mul(x2, x2);
  const Form y3z = form_mul(form_mul(y2, y), z);
  const Form yz3 = form_mul(y, form_mul(z2, z));
  Form q{};
  for (int i = 0; i < 125; ++i) q[i] = x4[i] + y3z[i] - yz3[i];
  return q;
}

}  // namespace

Gf81 quartic(const Point3& p) {
  const Gf81 y3 = p[1] * p[1] * p[1];
  const Gf81 z3 = p[2] * p[2] * p[2];
  return p[0].pow(4) + y3 * p[2] - p[1] * z3;
}

Point3 BitangentLine::equation() const {
  const Gf81 m1 = -kOne;
  switch (kind) {
    case LineKind::kYEqZ: return {kZero, kOne, m1};
    case LineKind::kYEqMinusZ: return {kZero, kOne, kOne};
    case LineKind::kYZero: return {kZero, kOne, kZero};
    case LineKind::kZZero: return {kZero, kZero, kOne};
    case LineKind::kSlanted: return {kOne, -b, -a};
  }
  throw std::logic_error("unknown line kind");
}

bool BitangentLine::contains(const Point3& p) const {
  const Point3 e = equation();
  return (e[0] * p[0] + e[1] * p[1] + e[2] * p[2]).is_zero();
}

Gf81 BitangentLine::branch_form(const Point3& p) const {
  if (kind != LineKind::kSlanted) return p[0];
  return p[0] + a.pow(5) * p[1];
}

Gf81 ExcCurve::branch(const Point3& p) const {
  const Gf81 q = line.branch_form(p);
  const Gf81 w = gf81_sqrt_minus_one() * q * q;
  return sign > 0 ? w : -w;
}

bool ExcCurve::contains(const Point3& p, const Gf81& w) const {
  if (!line.contains(p)) return false;
  return w == branch(p);
}

BitangentLine frobenius(const BitangentLine& l) {
  BitangentLine r = l;
  if (l.kind == LineKind::kSlanted) {
    r.a = dp2::frobenius(l.a);
    r.b = dp2::frobenius(l.b);
  }
  return r;
}

ExcCurve frobenius(const ExcCurve& c) { return ExcCurve{frobenius(c.line), -c.sign}; }

std::vector<Gf81> eighth_roots_of_minus_one() {
  std::vector<Gf81> out;
  Gf81 r = Gf81::zeta();
  for (int i = 0; i < 4; ++i, r = dp2::frobenius(r)) out.push_back(r);
  const std::array<Gf3, 5> other{Gf3(2), Gf3(0), Gf3(2), Gf3(0), Gf3(1)};  // x^4 + 2x^2 + 2
  const std::vector<Gf81> roots = roots_in_gf81(std::span<const Gf3>(other));
  r = *std::min_element(roots.begin(), roots.end());
  for (int i = 0; i < 4; ++i, r = dp2::frobenius(r)) out.push_back(r);
  return out;
}

std::vector<Gf81> slanted_offsets(const Gf81& a) {
  const std::array<Gf81, 4> poly{kOne, -a.pow(3), kZero, a};
  std::vector<Gf81> bs = roots_in_gf81(std::span<const Gf81>(poly));
  std::sort(bs.begin(), bs.end());
  return bs;
}

std::vector<BitangentLine> bitangents() {
  std::vector<BitangentLine> out;
  for (LineKind k : {LineKind::kYEqZ, LineKind::kYEqMinusZ, LineKind::kYZero, LineKind::kZZero}) {
    out.push_back(BitangentLine{k, {}, {}});
  }
  for (const Gf81& a : eighth_roots_of_minus_one()) {
    for (const Gf81& b : slanted_offsets(a)) out.push_back(BitangentLine{LineKind::kSlanted, a, b});
  }
  return out;
}

bool tangency_certificate(const BitangentLine& l) {
  const auto [u, v] = line_span(l.equation());
  const std::array<Gf81, 5> r = restrict_quartic(u, v);
  if (!is_constant_times_fourth_power(r)) return false;
  if (l.kind != LineKind::kSlanted) return true;
  if (l.a.pow(8) != -kOne) return false;
  if (!(l.a * l.b.pow(3) - l.a.pow(3) * l.b + kOne).is_zero()) return false;
  const UPoly q{l.branch_form(v), l.branch_form(u)};
  return binary_form(upow(q, 4)) == r;
}

std::vector<ExcCurve> exceptional_curves() {
  std::vector<ExcCurve> out;
  for (const BitangentLine& l : bitangents()) {
    out.push_back(ExcCurve{l, 1});
    out.push_back(ExcCurve{l, -1});
  }
  return out;
}

std::string label(const ExcCurve& c) {
  const char* s = c.sign > 0 ? "L+" : "L-";
  switch (c.line.kind) {
    case LineKind::kYEqZ: return std::string(s) + "_{y=z}";
    case LineKind::kYEqMinusZ: return std::string(s) + "_{y=-z}";
    case LineKind::kYZero: return std::string(s) + "_{y=0}";
    case LineKind::kZZero: return std::string(s) + "_{z=0}";
    case LineKind::kSlanted: break;
  }
  const auto roots = eighth_roots_of_minus_one();
  const size_t ai = static_cast<size_t>(std::find(roots.begin(), roots.end(), c.line.a) - roots.begin());
  const auto bs = slanted_offsets(c.line.a);
  const size_t bi = static_cast<size_t>(std::find(bs.begin(), bs.end(), c.line.b) - bs.begin());
  return std::string(s) + "_{" + std::to_string(ai + 1) + "," + std::to_string(bi + 1) + "}";
}

int intersect(const ExcCurve& c1, const ExcCurve& c2) {
  if (c1 == c2) return -1;
  if (c1.line == c2.line) return 2;
  const Point3 p = cross(c1.line.equation(), c2.line.equation());
  if (is_zero(p)) throw std::logic_error("distinct bitangents with proportional equations");
  return c1.branch(p) == c2.branch(p) ? 1 : 0;
}

std::vector<std::vector<int>> intersection_table(std::span<const ExcCurve> curves) {
  std::vector<std::vector<int>> t(curves.size(), std::vector<int>(curves.size()));
  for (size_t i = 0; i < curves.size(); ++i)
    for (size_t j = 0; j < curves.size(); ++j) t[i][j] = intersect(curves[i], curves[j]);
  return t;
}

namespace {

bool search_disjoint(const std::vector<std::vector<int>>& t, std::vector<size_t>& chosen, size_t next,
                     const std::function<bool(const std::vector<size_t>&)>& visit) {
  if (chosen.size() == 7) return visit(chosen);
  for (size_t i = next; i < t.size(); ++i) {
    if (std::any_of(chosen.begin(), chosen.end(), [&](size_t c) { return t[c][i] != 0; })) continue;
    chosen.push_back(i);
    if (search_disjoint(t, chosen, i + 1, visit)) return true;
    chosen.pop_back();
  }
  return false;
}

std::optional<std::array<size_t, 3>> find_triple(const std::vector<std::vector<int>>& t,
                                                 const std::vector<size_t>& disjoint) {
  const size_t n = t.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k) {
        if (t[i][j] + t[i][k] + t[j][k] != 2) continue;
        if (std::all_of(disjoint.begin(), disjoint.end(),
                        [&](size_t d) { return t[i][d] + t[j][d] + t[k][d] == 0; })) {
          return std::array<size_t, 3>{i, j, k};
        }
      }
  return std::nullopt;
}

PicVector class_from_table(const std::vector<std::vector<int>>& t, size_t c, const PicardBasis& b) {
  PicVector v{};
  for (size_t i = 0; i < 7; ++i) v[i] = -t[c][b.disjoint[i]];
  for (size_t k : b.triple) v[7] += t[c][k];
  return v;
}

IntMatrix frobenius_from_table(std::span<const ExcCurve> curves, const std::vector<std::vector<int>>& t,
                               const std::vector<size_t>& image, const PicardBasis& b) {
  (void)curves;
  IntMatrix m(8, 8);
  for (size_t i = 0; i < 7; ++i) {
    const PicVector v = class_from_table(t, image[b.disjoint[i]], b);
    for (size_t r = 0; r < 8; ++r) m(r, i) = v[r];
  }
  for (size_t k : b.triple) {
    const PicVector v = class_from_table(t, image[k], b);
    for (size_t r = 0; r < 8; ++r) m(r, 7) += v[r];
  }
  return m;
}

std::vector<size_t> frobenius_permutation(std::span<const ExcCurve> curves) {
  std::vector<size_t> image(curves.size());
  for (size_t i = 0; i < curves.size(); ++i) image[i] = index_of_curve(curves, frobenius(curves[i]));
  return image;
}

}  // namespace

PicardBasis picard_basis(std::span<const ExcCurve> curves) {
  const auto t = intersection_table(curves);
  std::vector<size_t> chosen;
  PicardBasis out;
  const bool found = search_disjoint(t, chosen, 0, [&](const std::vector<size_t>& set) {
    const auto triple = find_triple(t, set);
    if (!triple) return false;
    std::copy(set.begin(), set.end(), out.disjoint.begin());
    out.triple = *triple;
    return true;
  });
  if (!found) throw std::logic_error("no Picard basis among the exceptional curves");
  return out;
}

int64_t pairing(const PicVector& a, const PicVector& b) {
  int64_t s = a[7] * b[7];
  for (size_t i = 0; i < 7; ++i) s -= a[i] * b[i];
  return s;
}

IntMatrix gram_form() { return IntMatrix::diagonal({-1, -1, -1, -1, -1, -1, -1, 1}); }

PicVector class_of(size_t curve, std::span<const ExcCurve> curves, const PicardBasis& basis) {
  PicVector v{};
  for (size_t i = 0; i < 7; ++i) v[i] = -intersect(curves[curve], curves[basis.disjoint[i]]);
  for (size_t k : basis.triple) v[7] += intersect(curves[curve], curves[k]);
  return v;
}

IntMatrix basis_gram(std::span<const ExcCurve> curves, const PicardBasis& basis) {
  // Each basis element as a formal sum of curves.
  std::vector<std::vector<size_t>> parts;
  for (size_t d : basis.disjoint) parts.push_back({d});
  parts.emplace_back(basis.triple.begin(), basis.triple.end());
  IntMatrix g(8, 8);
  for (size_t i = 0; i < 8; ++i)
    for (size_t j = 0; j < 8; ++j)
      for (size_t a : parts[i])
        for (size_t b : parts[j]) g(i, j) += intersect(curves[a], curves[b]);
  return g;
}

PicVector anticanonical_class() { return {-1, -1, -1, -1, -1, -1, -1, 3}; }

IntMatrix frobenius_matrix(std::span<const ExcCurve> curves, const PicardBasis& basis) {
  return frobenius_from_table(curves, intersection_table(curves), frobenius_permutation(curves), basis);
}

IntMatrix reference_frobenius_matrix() {
  return IntMatrix{{-1, 0, -1, 0, -1, -1, -1, -2}, {-1, -1, -1, 0, -1, 0, -1, -2}, {0, 0, -1, 0, 0, 0, -1, -1},
                   {-1, -1, -2, -1, -1, -1, -1, -3}, {0, -1, -1, 0, -1, -1, -1, -2}, {-1, -1, -1, 0, 0, -1, -1, -2},
                   {-1, -1, -1, -1, -1, -1, -2, -3}, {2, 2, 3, 1, 2, 2, 3, 6}};
}

namespace {

std::vector<Gf81> subfield(int extension) {
  if (extension != 1 && extension != 2 && extension != 4) {
    throw std::invalid_argument("extension degree must be 1, 2 or 4");
  }
  const uint64_t q = pow3(extension);
  std::vector<Gf81> out;
  for (const Gf81& e : gf81_elements()) {
    if (e.pow(q) == e) out.push_back(e);
  }
  return out;
}

// Points of P^2 over the subfield with the first nonzero coordinate 1.
std::vector<Point3> plane_points(const std::vector<Gf81>& field) {
  std::vector<Point3> out;
  for (const Gf81& y : field)
    for (const Gf81& z : field) out.push_back({kOne, y, z});
  for (const Gf81& z : field) out.push_back({kZero, kOne, z});
  out.push_back({kZero, kZero, kOne});
  return out;
}

}  // namespace

PointCount count_points(int extension, const IntMatrix& frobenius) {
  const std::vector<Gf81> field = subfield(extension);
  PointCount pc;
  pc.extension = extension;
  pc.field_size = field.size();
  for (const Point3& p : plane_points(field)) {
    const Gf81 q = quartic(p);
    for (const Gf81& w : field) {
      if (-(w * w) == q) ++pc.enumerated;
    }
  }
  const auto q = static_cast<int64_t>(pc.field_size);
  pc.weil = q * q + q * frobenius.pow(static_cast<unsigned>(extension)).trace() + 1;
  return pc;
}

std::vector<std::array<int, 4>> rational_points() {
  const std::vector<Gf81> field = subfield(1);
  std::vector<std::array<int, 4>> out;
  for (const Point3& p : plane_points(field)) {
    const Gf81 q = quartic(p);
    for (const Gf81& w : field) {
      if (-(w * w) == q) {
        out.push_back({p[0].coeff(0).value(), p[1].coeff(0).value(), p[2].coeff(0).value(), w.coeff(0).value()});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int64_t> h1_galois(const IntMatrix& frobenius) { return h1_cyclic(frobenius); }

AutomorphismReport automorphism_group() {
  Form q{};
  q[100] = Gf3(1);            // x^4
  q[3 * 5 + 1] = Gf3(1);      // y^3 z
  q[1 * 5 + 3] = Gf3(2);      // -y z^3
  Form neg_q{};
  for (int i = 0; i < 125; ++i) neg_q[i] = -q[i];

  AutomorphismReport rep;
  size_t up_to_scalar = 0;
  for (int code = 0; code < 19683; ++code) {
    Mat3 m{};
    int c = code;
    for (auto& e : m) {
      e = Gf3(c % 3);
      c /= 3;
    }
    if (mat_det(m).is_zero()) continue;
    const Form f = quartic_after(m);
    if (f == q) {
      rep.preserving.push_back(m);
      ++up_to_scalar;
    } else if (f == neg_q) {
      ++rep.anti_preserving;
      ++up_to_scalar;
    }
  }
  rep.projective_order = up_to_scalar / 2;

  for (const Mat3& m : rep.preserving) {
    if (mat_det(m) == Gf3(1)) rep.det_one.push_back(m);
  }
  rep.det_one_block_form = std::all_of(rep.det_one.begin(), rep.det_one.end(), [](const Mat3& m) {
    return m[0] == Gf3(1) && m[1].is_zero() && m[2].is_zero() && m[3].is_zero() && m[6].is_zero() &&
           (m[4] * m[8] - m[5] * m[7]) == Gf3(1);
  });
  const std::set<Mat3> det_one_set(rep.det_one.begin(), rep.det_one.end());
  rep.det_one_is_group = det_one_set.count(mat_identity()) == 1;
  for (const Mat3& a : rep.det_one)
    for (const Mat3& b : rep.det_one) {
      if (!det_one_set.count(mat_mul(a, b))) rep.det_one_is_group = false;
    }
  std::map<int, int> orders;
  for (const Mat3& m : rep.det_one) ++orders[mat_order(m)];
  rep.sl23_element_orders = orders == std::map<int, int>{{1, 1}, {2, 1}, {3, 8}, {4, 6}, {6, 8}};

  // Surface automorphisms (A, s): (x, y, z, w) -> (A(x, y, z), s w), with
  // (A, s) and (-A, s) acting identically on P(1,1,1,2).
  std::set<std::pair<Mat3, int>> autos;
  for (const Mat3& m : rep.preserving) {
    const Mat3 rep_m = std::min(m, mat_neg(m));
    autos.insert({rep_m, 1});
    autos.insert({rep_m, -1});
  }
  rep.surface_automorphisms = autos.size();
  const std::pair<Mat3, int> involution{mat_identity(), -1};
  rep.involution_commutes = autos.count(involution) == 1;
  for (const auto& [m, s] : autos) {
    (void)s;
    const Mat3 left = mat_mul(involution.first, m), right = mat_mul(m, involution.first);
    if (std::min(left, mat_neg(left)) != std::min(right, mat_neg(right))) {
      rep.involution_commutes = false;
    }
  }
  const Mat3 swap{Gf3(1), Gf3(), Gf3(), Gf3(), Gf3(), Gf3(1), Gf3(), Gf3(2), Gf3()};
  rep.swap_symmetry_preserves = quartic_after(swap) == q;
  return rep;
}

std::optional<ReferenceLabelling> find_reference_labelling(std::span<const ExcCurve> curves) {
  const auto t = intersection_table(curves);
  const std::vector<size_t> image = frobenius_permutation(curves);
  const IntMatrix ref = reference_frobenius_matrix();
  std::optional<ReferenceLabelling> found;
  std::vector<size_t> chosen;
  search_disjoint(t, chosen, 0, [&](const std::vector<size_t>& set) {
    const auto triple = find_triple(t, set);
    if (!triple) return false;
    PicardBasis b;
    std::copy(set.begin(), set.end(), b.disjoint.begin());
    b.triple = *triple;
    const IntMatrix m = frobenius_from_table(curves, t, image, b);
    if (m(7, 7) != ref(7, 7)) return false;
    std::array<size_t, 7> perm{};
    std::iota(perm.begin(), perm.end(), 0);
    do {
      bool ok = true;
      for (size_t i = 0; i < 8 && ok; ++i)
        for (size_t j = 0; j < 8 && ok; ++j) {
          const size_t pi = i < 7 ? perm[i] : 7, pj = j < 7 ? perm[j] : 7;
          ok = m(pi, pj) == ref(i, j);
        }
      if (ok) {
        ReferenceLabelling r;
        for (size_t i = 0; i < 7; ++i) r.basis.disjoint[i] = b.disjoint[perm[i]];
        r.basis.triple = b.triple;
        found = r;
        return true;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  });
  return found;
}

bool Report::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

Report build_report() {
  Report rep;
  auto value = [&](std::string key, std::string v) { rep.values.emplace_back(std::move(key), std::move(v)); };
  auto check = [&](std::string key, bool ok) { rep.checks.emplace_back(std::move(key), ok); };

  const std::vector<BitangentLine> lines = bitangents();
  const std::vector<ExcCurve> curves = exceptional_curves();
  const auto t = intersection_table(curves);

  value("bitangents", std::to_string(lines.size()));
  value("exceptional", std::to_string(curves.size()));
  check("bitangent_count", lines.size() == 28);
  std::set<std::string> labels;
  for (const ExcCurve& c : curves) labels.insert(label(c));
  check("exceptional_count", curves.size() == 56 && labels.size() == 56);
  check("tangency", std::all_of(lines.begin(), lines.end(), tangency_certificate));
  for (const BitangentLine& l : lines) {
    std::string s = label(ExcCurve{l, 1}).substr(4);
    s.pop_back();
    if (l.kind == LineKind::kSlanted) s += ": x = (" + l.a.to_string() + ")*z + (" + l.b.to_string() + ")*y";
    rep.bitangent_lines.push_back(s);
  }

  bool on_surface = true;
  for (const ExcCurve& c : curves) {
    for (const Point3& p : points_on_line(c.line)) {
      const Gf81 w = c.branch(p);
      on_surface = on_surface && -(w * w) == quartic(p);
    }
  }
  check("curves_on_surface", on_surface);

  const std::vector<size_t> image = frobenius_permutation(curves);
  bool flips = true;
  for (size_t i = 0; i < curves.size(); ++i) flips = flips && curves[image[i]].sign == -curves[i].sign;
  bool order4 = true, order2 = true;
  for (size_t i = 0; i < curves.size(); ++i) {
    order4 = order4 && image[image[image[image[i]]]] == i;
    order2 = order2 && image[image[i]] == i;
  }
  check("frobenius_permutation_order_4", order4 && !order2);
  check("frobenius_no_fixed_curve", flips);

  const Point3 eckardt{kOne, kZero, kZero};
  const Gf81 i = gf81_sqrt_minus_one();
  size_t plus = 0, minus = 0;
  for (const ExcCurve& c : curves) {
    plus += c.contains(eckardt, i) ? 1 : 0;
    minus += c.contains(eckardt, -i) ? 1 : 0;
  }
  value("eckardt_curves", std::to_string(plus) + "," + std::to_string(minus));
  check("eckardt_points", plus == 4 && minus == 4);

  bool groups = true;
  for (size_t c = 8; c < curves.size(); ++c) {
    const size_t gc = (c - 8) / 6;
    for (size_t g = 0; g < 8; ++g) {
      size_t met = 0, same_sign = 0;
      for (size_t d = 8 + 6 * g; d < 8 + 6 * (g + 1); ++d) {
        if (t[c][d] < 1) continue;
        ++met;
        if (curves[d].sign == curves[c].sign) ++same_sign;
      }
      groups = groups && met == 3 && (g == gc || same_sign == 1);
    }
  }
  check("slanted_group_incidence", groups);

  const PicardBasis basis = picard_basis(curves);
  std::string basis_labels;
  for (size_t d : basis.disjoint) basis_labels += label(curves[d]) + " ";
  basis_labels += "d8=" + label(curves[basis.triple[0]]) + "+" + label(curves[basis.triple[1]]) + "+" +
                  label(curves[basis.triple[2]]);
  value("picard_basis", basis_labels);

  const IntMatrix gram = basis_gram(curves, basis);
  value("gram", matrix_rows(gram));
  check("gram_diagonal", gram == gram_form());

  std::vector<PicVector> classes;
  for (size_t c = 0; c < curves.size(); ++c) classes.push_back(class_from_table(t, c, basis));
  bool consistent = true, self = true, degree = true, conjugate = true;
  const PicVector minus_k = anticanonical_class();
  for (size_t a = 0; a < curves.size(); ++a) {
    for (size_t b = 0; b < curves.size(); ++b) consistent = consistent && pairing(classes[a], classes[b]) == t[a][b];
    self = self && pairing(classes[a], classes[a]) == -1;
    degree = degree && pairing(minus_k, classes[a]) == 1;
  }
  for (size_t l = 0; l < curves.size(); l += 2) {
    for (size_t r = 0; r < 8; ++r) conjugate = conjugate && classes[l][r] + classes[l + 1][r] == minus_k[r];
  }
  std::vector<int64_t> mk(minus_k.begin(), minus_k.end());
  value("anticanonical", join(mk));
  value("anticanonical_square", std::to_string(pairing(minus_k, minus_k)));
  check("class_pairing_matches_intersections", consistent);
  check("self_intersection", self);
  check("anticanonical_square", pairing(minus_k, minus_k) == 2);
  check("anticanonical_degree", degree);
  check("conjugate_pairs_sum_to_anticanonical", conjugate);

  const IntMatrix m = frobenius_from_table(curves, t, image, basis);
  const IntMatrix ref = reference_frobenius_matrix();
  const int64_t det = determinant(m);
  const unsigned order = matrix_order(m);
  const auto charpoly = characteristic_polynomial(m);
  value("frobenius", matrix_rows(m));
  value("trace", std::to_string(m.trace()));
  value("det", std::to_string(det));
  value("order", std::to_string(order));
  value("charpoly", join(charpoly));
  check("frobenius_unimodular", det == 1 || det == -1);
  check("frobenius_order_4", order == 4);
  check("frobenius_isometry", m.transpose() * gram_form() * m == gram_form());
  check("frobenius_trace", m.trace() == -2);
  check("frobenius_fixes_anticanonical", m * mk == mk);
  check("charpoly_matches_reference", charpoly == characteristic_polynomial(ref));
  const auto labelling = find_reference_labelling(curves);
  value("reference_labelling", labelling ? "found" : "none");

  for (int k : {1, 2, 4}) {
    const PointCount pc = count_points(k, m);
    const std::string f = "F" + std::to_string(pc.field_size);
    value("points_" + f, std::to_string(pc.enumerated));
    value("weil_" + f, std::to_string(pc.weil));
    check("weil_" + f, static_cast<int64_t>(pc.enumerated) == pc.weil);
  }
  const auto pts = rational_points();
  std::string pts_text;
  for (const auto& p : pts) {
    pts_text += (pts_text.empty() ? "[" : " [") + std::to_string(p[0]) + ":" + std::to_string(p[1]) + ":" +
                std::to_string(p[2]) + ":" + std::to_string(p[3]) + "]";
  }
  value("rational_points", pts_text);
  check("rational_points",
        pts == std::vector<std::array<int, 4>>{{0, 0, 1, 0}, {0, 1, 0, 0}, {0, 1, 1, 0}, {0, 1, 2, 0}});

  const auto h1 = h1_galois(m);
  value("h1", join(h1));
  check("h1", h1 == std::vector<int64_t>{4, 4});

  const AutomorphismReport aut = automorphism_group();
  value("aut_projective_order", std::to_string(aut.projective_order));
  value("aut_det_one", std::to_string(aut.det_one.size()));
  value("aut_order", std::to_string(aut.surface_automorphisms));
  check("aut_order", aut.surface_automorphisms == 48);
  check("aut_det_one_block_sl23", aut.det_one.size() == 24 && aut.det_one_block_form && aut.det_one_is_group &&
                                      aut.sl23_element_orders);
  check("aut_involution_commutes", aut.involution_commutes);
  check("aut_swap_symmetry", aut.swap_symmetry_preserves);

  for (size_t c = 0; c < curves.size(); ++c) {
    std::vector<int64_t> v(classes[c].begin(), classes[c].end());
    rep.curve_lines.push_back(label(curves[c]) + " -> " + label(curves[image[c]]) + " class=" + join(v));
  }
  return rep;
}

}  // namespace dp2::geometry
