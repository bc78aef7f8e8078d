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

#include "dp2/intmat.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace dp2 {

int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in matrix arithmetic");
  return r;
}

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in matrix arithmetic");
  return r;
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<int64_t>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::identity(size_t n) {
  IntMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<int64_t>& d) {
  IntMatrix m(d.size(), d.size());
  for (size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

std::vector<int64_t> IntMatrix::column(size_t c) const {
  std::vector<int64_t> v(rows_);
  for (size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void IntMatrix::set_column(size_t c, const std::vector<int64_t>& v) {
  if (v.size() != rows_) throw std::invalid_argument("column length mismatch");
  for (size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

int64_t IntMatrix::trace() const {
  int64_t t = 0;
  for (size_t i = 0; i < std::min(rows_, cols_); ++i) t = checked_add(t, (*this)(i, i));
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix m(a.rows_, b.cols_);
  for (size_t i = 0; i < a.rows_; ++i)
    for (size_t k = 0; k < a.cols_; ++k) {
      const int64_t aik = a(i, k);
      if (aik == 0) continue;
      for (size_t j = 0; j < b.cols_; ++j) m(i, j) = checked_add(m(i, j), checked_mul(aik, b(k, j)));
    }
  return m;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix m = a;
  for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] = checked_add(a.a_[i], b.a_[i]);
  return m;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix m = a;
  for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] = checked_add(a.a_[i], checked_mul(-1, b.a_[i]));
  return m;
}

std::vector<int64_t> IntMatrix::operator*(const std::vector<int64_t>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
  std::vector<int64_t> out(rows_, 0);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) out[r] = checked_add(out[r], checked_mul((*this)(r, c), v[c]));
  return out;
}

IntMatrix IntMatrix::pow(unsigned e) const {
  if (rows_ != cols_) throw std::invalid_argument("power of a non-square matrix");
  IntMatrix result = identity(rows_);
  for (unsigned i = 0; i < e; ++i) result = result * *this;
  return result;
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t c = 0; c < cols_; ++c) out << (c ? " " : "") << (*this)(r, c);
    out << '\n';
  }
  return out.str();
}

int64_t determinant(const IntMatrix& m) {
  const size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return 1;
  IntMatrix a = m;
  int64_t sign = 1;
  int64_t prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap, j));
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        const int64_t num = checked_add(checked_mul(a(i, j), a(k, k)), -checked_mul(a(i, k), a(k, j)));
        a(i, j) = num / prev;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::vector<int64_t> characteristic_polynomial(const IntMatrix& m) {
  // Faddeev-LeVerrier; every division is exact over Z.
  const size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("characteristic polynomial of a non-square matrix");
  std::vector<int64_t> c(n + 1, 0);
  c[n] = 1;
  IntMatrix mk = IntMatrix::identity(n);
  for (size_t k = 1; k <= n; ++k) {
    if (k > 1) mk = m * mk + IntMatrix::diagonal(std::vector<int64_t>(n, c[n - k + 1]));
    const int64_t t = (m * mk).trace();
    if (t % static_cast<int64_t>(k) != 0) throw std::logic_error("inexact Faddeev-LeVerrier step");
    c[n - k] = -t / static_cast<int64_t>(k);
  }
  return c;
}

std::vector<int64_t> SmithForm::diagonal() const {
  std::vector<int64_t> out;
  for (size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

namespace {

void row_axpy(IntMatrix& m, size_t dst, size_t src, int64_t q) {
  for (size_t j = 0; j < m.cols(); ++j) m(dst, j) = checked_add(m(dst, j), checked_mul(q, m(src, j)));
}

void col_axpy(IntMatrix& m, size_t dst, size_t src, int64_t q) {
  for (size_t i = 0; i < m.rows(); ++i) m(i, dst) = checked_add(m(i, dst), checked_mul(q, m(i, src)));
}

void swap_rows(IntMatrix& m, size_t a, size_t b) {
  for (size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, size_t a, size_t b) {
  for (size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  const size_t rows = a.rows(), cols = a.cols();
  SmithForm s{IntMatrix::identity(rows), a, IntMatrix::identity(cols), 0};
  IntMatrix& d = s.d;

  for (size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      size_t pr = rows, pc = cols;
      for (size_t i = t; i < rows; ++i)
        for (size_t j = t; j < cols; ++j)
          if (d(i, j) != 0 && (pr == rows || std::llabs(d(i, j)) < std::llabs(d(pr, pc)))) {
            pr = i;
            pc = j;
          }
      if (pr == rows) return s;
      if (pr != t) {
        swap_rows(d, t, pr);
        swap_rows(s.u, t, pr);
      }
      if (pc != t) {
        swap_cols(d, t, pc);
        swap_cols(s.v, t, pc);
      }

      bool clean = true;
      for (size_t i = t + 1; i < rows; ++i) {
        const int64_t q = d(i, t) / d(t, t);
        if (q != 0) {
          row_axpy(d, i, t, -q);
          row_axpy(s.u, i, t, -q);
        }
        clean = clean && d(i, t) == 0;
      }
      for (size_t j = t + 1; j < cols; ++j) {
        const int64_t q = d(t, j) / d(t, t);
        if (q != 0) {
          col_axpy(d, j, t, -q);
          col_axpy(s.v, j, t, -q);
        }
        clean = clean && d(t, j) == 0;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into the pivot row and retry.
      size_t bad = rows;
      for (size_t i = t + 1; i < rows && bad == rows; ++i)
        for (size_t j = t + 1; j < cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      row_axpy(d, t, bad, 1);
      row_axpy(s.u, t, bad, 1);
    }
    if (d(t, t) < 0) {
      for (size_t j = 0; j < cols; ++j) d(t, j) = -d(t, j);
      for (size_t j = 0; j < rows; ++j) s.u(t, j) = -s.u(t, j);
    }
    s.rank = t + 1;
  }
  return s;
}

IntMatrix kernel_basis(const IntMatrix& a) {
  const SmithForm s = smith_normal_form(a);
  IntMatrix k(a.cols(), a.cols() - s.rank);
  for (size_t j = s.rank; j < a.cols(); ++j) k.set_column(j - s.rank, s.v.column(j));
  return k;
}

std::vector<int64_t> solve_in_basis(const IntMatrix& basis, const std::vector<int64_t>& v) {
  const SmithForm s = smith_normal_form(basis);
  if (s.rank != basis.cols()) throw std::invalid_argument("basis columns are dependent");
  const std::vector<int64_t> uv = s.u * v;
  std::vector<int64_t> y(basis.cols(), 0);
  for (size_t i = 0; i < uv.size(); ++i) {
    if (i < s.rank) {
      if (uv[i] % s.d(i, i) != 0) throw std::domain_error("vector not in the integer span");
      y[i] = uv[i] / s.d(i, i);
    } else if (uv[i] != 0) {
      throw std::domain_error("vector not in the span");
    }
  }
  return s.v * y;
}

unsigned matrix_order(const IntMatrix& m, unsigned max) {
  const IntMatrix id = IntMatrix::identity(m.rows());
  IntMatrix p = m;
  for (unsigned n = 1; n <= max; ++n) {
    if (p == id) return n;
    p = p * m;
  }
  return 0;
}

std::vector<int64_t> h1_cyclic(const IntMatrix& m) {
  const size_t n = m.rows();
  const unsigned order = matrix_order(m);
  if (order == 0) throw std::domain_error("matrix has no finite order");
  const IntMatrix id = IntMatrix::identity(n);
  IntMatrix norm(n, n);
  IntMatrix power = id;
  for (unsigned k = 0; k < order; ++k) {
    norm = norm + power;
    power = power * m;
  }
  const IntMatrix delta = m - id;
  if (!(norm * delta == IntMatrix(n, n))) throw std::domain_error("image of m - 1 is not inside the norm kernel");

  const IntMatrix kernel = kernel_basis(norm);
  IntMatrix coords(kernel.cols(), n);
  for (size_t j = 0; j < n; ++j) coords.set_column(j, solve_in_basis(kernel, delta.column(j)));

  const SmithForm s = smith_normal_form(coords);
  std::vector<int64_t> factors;
  for (size_t i = 0; i < kernel.cols(); ++i) {
    const int64_t di = i < s.rank ? s.d(i, i) : 0;
    if (di != 1) factors.push_back(di);
  }
  return factors;
}

}  // namespace dp2
