// Copyright 2026 The qnash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "qnash/matrix.hpp"
#include "qnash/scalar.hpp"

namespace qnash {

namespace detail {

/// Exact solve by fraction-free (Bareiss) elimination. Rows are first scaled
/// to integers, which leaves the solution unchanged, so every intermediate
/// division is exact and no rational normalization happens in the loop.
inline std::optional<std::vector<Rational>> solve_bareiss(const Matrix<Rational>& a,
                                                          const std::vector<Rational>& b) {
  const std::size_t n = a.rows();
  std::vector<std::vector<mpz_class>> w(n, std::vector<mpz_class>(n + 1));
  for (std::size_t r = 0; r < n; ++r) {
    mpz_class scale = b[r].get_den();
    for (std::size_t c = 0; c < n; ++c) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(),
                                                 a(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < n; ++c)
      w[r][c] = a(r, c).get_num() * (scale / a(r, c).get_den());
    w[r][n] = b[r].get_num() * (scale / b[r].get_den());
  }
  mpz_class prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && sgn(w[pivot][k]) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != k) std::swap(w[pivot], w[k]);
    for (std::size_t r = k + 1; r < n; ++r) {
      for (std::size_t c = k + 1; c <= n; ++c) {
        w[r][c] = w[r][c] * w[k][k] - w[r][k] * w[k][c];
        mpz_divexact(w[r][c].get_mpz_t(), w[r][c].get_mpz_t(), prev.get_mpz_t());
      }
      w[r][k] = 0;
    }
    prev = w[k][k];
  }
  std::vector<Rational> x(n);
  for (std::size_t r = n; r-- > 0;) {
    Rational acc(w[r][n]);
    for (std::size_t c = r + 1; c < n; ++c) acc -= w[r][c] * x[c];
    x[r] = acc / Rational(w[r][r]);
  }
  return x;
}

}  // namespace detail

/// Solves a x = b for square a by Gauss-Jordan elimination. Returns nullopt
/// when a is singular. Exact mode pivots on the first nonzero entry; float
/// mode uses partial pivoting and treats |pivot| <= tolerance as zero.
template <class T>
std::optional<std::vector<T>> solve_linear_system(Matrix<T> a, std::vector<T> b) {
  using Ops = ScalarOps<T>;
  if constexpr (Ops::kMode == ArithmeticMode::kExact) return detail::solve_bareiss(a, b);
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    if constexpr (Ops::kMode == ArithmeticMode::kExact) {
      for (std::size_t r = col; r < n; ++r)
        if (!Ops::is_zero(a(r, col))) {
          pivot = r;
          break;
        }
    } else {
      double best = Ops::tolerance;
      for (std::size_t r = col; r < n; ++r)
        if (std::fabs(a(r, col)) > best) {
          best = std::fabs(a(r, col));
          pivot = r;
        }
    }
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      std::swap(b[pivot], b[col]);
    }
    T inv = T(1) / a(col, col);
    for (std::size_t c = col; c < n; ++c) a(col, c) *= inv;
    b[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || Ops::is_zero(a(r, col))) continue;
      T factor = a(r, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
      b[r] -= factor * b[col];
    }
  }
  return b;
}

}  // namespace qnash
