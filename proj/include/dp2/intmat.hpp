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

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace dp2 {

/// Dense integer matrix with overflow-checked arithmetic (std::overflow_error).
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<int64_t>> rows);

  static IntMatrix identity(size_t n);
  static IntMatrix diagonal(const std::vector<int64_t>& d);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  int64_t& operator()(size_t r, size_t c) { return a_[r * cols_ + c]; }
  int64_t operator()(size_t r, size_t c) const { return a_[r * cols_ + c]; }

  std::vector<int64_t> column(size_t c) const;
  void set_column(size_t c, const std::vector<int64_t>& v);
  IntMatrix transpose() const;
  int64_t trace() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  std::vector<int64_t> operator*(const std::vector<int64_t>& v) const;
  IntMatrix pow(unsigned e) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  std::string to_string() const;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<int64_t> a_;
};

int64_t checked_add(int64_t a, int64_t b);
int64_t checked_mul(int64_t a, int64_t b);

/// Bareiss fraction-free determinant.
int64_t determinant(const IntMatrix& m);

/// Coefficients of det(x I - m), ascending (constant term first).
std::vector<int64_t> characteristic_polynomial(const IntMatrix& m);

/// U * A * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}, d_i >= 0.
struct SmithForm {
  IntMatrix u, d, v;
  size_t rank = 0;
  std::vector<int64_t> diagonal() const;
};
SmithForm smith_normal_form(const IntMatrix& a);

/// Columns form a Z-basis of {v in Z^n : A v = 0}.
IntMatrix kernel_basis(const IntMatrix& a);

/// Coordinates c with basis * c = v; basis must have independent columns.
/// Throws std::domain_error when v is not in the integer span.
std::vector<int64_t> solve_in_basis(const IntMatrix& basis, const std::vector<int64_t>& v);

/// Smallest n in 1..max with m^n = I; 0 if none.
unsigned matrix_order(const IntMatrix& m, unsigned max = 24);

/// H^1 of the cyclic group generated by m acting on Z^n, computed as
/// ker(1 + m + ... + m^{k-1}) / im(m - 1) with k the order of m. Returns the
/// nontrivial invariant factors (0 for a free summand). Throws
/// std::domain_error when m has no finite order or the image is not inside
/// the kernel.
std::vector<int64_t> h1_cyclic(const IntMatrix& m);

}  // namespace dp2
