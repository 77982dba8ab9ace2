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

// Independent reference computations used only by tests. Nothing here calls
// into the library's solvers.

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "qnash/matrix.hpp"
#include "qnash/scalar.hpp"

namespace qnash::testing {

using Q = Rational;

inline Q q(long p, long d = 1) {
  Q r(p, d);
  r.canonicalize();
  return r;
}

inline std::vector<Q> qv(std::initializer_list<Q> xs) { return std::vector<Q>(xs); }

/// Value of a 2 x n game: the row player's guarantee min_j (x A[0][j] +
/// (1-x) A[1][j]) is concave piecewise linear in x, so its maximum sits at
/// x = 0, x = 1, or a crossing of two column lines.
inline Q reference_value_2xn(const Matrix<Q>& m) {
  const std::size_t n = m.cols();
  std::vector<Q> xs{Q(0), Q(1)};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      // x*p_a + (1-x)*r_a = x*p_b + (1-x)*r_b
      Q slope = (m(0, a) - m(1, a)) - (m(0, b) - m(1, b));
      if (sgn(slope) == 0) continue;
      Q x = (m(1, b) - m(1, a)) / slope;
      if (x >= 0 && x <= 1) xs.push_back(x);
    }
  Q best;
  bool first = true;
  for (const Q& x : xs) {
    Q worst;
    for (std::size_t j = 0; j < n; ++j) {
      Q v = x * m(0, j) + (1 - x) * m(1, j);
      if (j == 0 || v < worst) worst = v;
    }
    if (first || worst > best) best = worst;
    first = false;
  }
  return best;
}

/// Equilibrium test straight from the definition:
/// <x, A y> = max_i <e_i, A y> = min_j <x, A e_j>.
inline bool reference_is_equilibrium(const Matrix<Q>& m, const std::vector<Q>& x,
                                     const std::vector<Q>& y) {
  Q v(0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v += x[i] * m(i, j) * y[j];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Q r(0);
    for (std::size_t j = 0; j < m.cols(); ++j) r += m(i, j) * y[j];
    if (r > v) return false;
  }
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Q c(0);
    for (std::size_t i = 0; i < m.rows(); ++i) c += x[i] * m(i, j);
    if (c < v) return false;
  }
  return true;
}

inline Q reference_payoff(const Matrix<Q>& m, const std::vector<Q>& x, const std::vector<Q>& y) {
  Q v(0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v += x[i] * m(i, j) * y[j];
  return v;
}

/// All k-subsets of {0..n-1} in lexicographic order, by bitmask enumeration
/// and sort (no combinatorial number system).
inline std::vector<std::vector<std::size_t>> reference_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != k) continue;
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(i);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Pure saddle points with the strict gaps, by scanning every cell.
inline std::vector<std::pair<std::size_t, std::size_t>> reference_strict_saddles(const Matrix<Q>& m) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      bool ok = true;
      for (std::size_t r = 0; r < m.rows() && ok; ++r)
        if (r != i && !(m(r, j) < m(i, j))) ok = false;
      for (std::size_t c = 0; c < m.cols() && ok; ++c)
        if (c != j && !(m(i, c) > m(i, j))) ok = false;
      if (ok) out.emplace_back(i, j);
    }
  return out;
}

}  // namespace qnash::testing
