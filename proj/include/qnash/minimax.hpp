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

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qnash/errors.hpp"
#include "qnash/linalg.hpp"
#include "qnash/matrix.hpp"
#include "qnash/oracle.hpp"
#include "qnash/simplex.hpp"
#include "qnash/strategy.hpp"
#include "qnash/subset_codec.hpp"

namespace qnash {

/// Game value through the LP only.
template <class T>
T solve_value_lp(const Matrix<T>& m) {
  return solve_game_lp(m).value;
}

/// Exact minimax value max_x min_y <x, M y>.
///
/// Saddle points and 2x2 games are resolved in closed form; everything else
/// goes through the simplex solver. The lifted oracle calls this for every
/// lifted entry, so the shortcuts matter.
template <class T>
T solve_value(const Matrix<T>& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  // maximin over pure rows and minimax over pure columns; equal iff the
  // game has a saddle point, in which case that is the value.
  T maximin = m(0, 0);
  for (Index i = 0; i < rows; ++i) {
    T row_min = m(i, 0);
    for (Index j = 1; j < cols; ++j)
      if (m(i, j) < row_min) row_min = m(i, j);
    if (i == 0 || row_min > maximin) maximin = row_min;
  }
  T minimax = m(0, 0);
  for (Index j = 0; j < cols; ++j) {
    T col_max = m(0, j);
    for (Index i = 1; i < rows; ++i)
      if (m(i, j) > col_max) col_max = m(i, j);
    if (j == 0 || col_max < minimax) minimax = col_max;
  }
  if (maximin == minimax) return maximin;
  if (rows == 2 && cols == 2) {
    // No saddle point: both players mix fully and the value is
    // (ad - bc) / (a + d - b - c), with a nonzero denominator.
    const T& a = m(0, 0);
    const T& b = m(0, 1);
    const T& c = m(1, 0);
    const T& d = m(1, 1);
    return (a * d - b * c) / (a + d - b - c);
  }
  return solve_value_lp(m);
}

enum class SupportStatus { kOk, kSingular, kNegativeWeight };

template <class T>
struct SupportSolution {
  SupportStatus status = SupportStatus::kSingular;
  std::vector<T> row;
  std::vector<T> col;
  T value{0};
};

namespace detail {

/// One side of the support system of square m: weights w with
/// m' w = v 1 (row side, `transpose`) or m w = v 1 (column side), and
/// 1'w = 1. Returns w followed by v, or nothing when singular.
template <class T>
std::optional<std::vector<T>> solve_support_side(const Matrix<T>& m, bool transpose) {
  const std::size_t k = m.rows();
  Matrix<T> sys(k + 1, k + 1);
  for (Index r = 0; r < k; ++r) {
    for (Index c = 0; c < k; ++c) sys(r, c) = transpose ? m(c, r) : m(r, c);
    sys(r, k) = T(-1);
  }
  for (Index c = 0; c < k; ++c) sys(k, c) = T(1);
  std::vector<T> rhs(k + 1, T(0));
  rhs[k] = T(1);
  return solve_linear_system(std::move(sys), std::move(rhs));
}

template <class T>
bool has_negative(const std::vector<T>& w, std::size_t count) {
  for (std::size_t a = 0; a < count; ++a)
    if (ScalarOps<T>::is_negative(w[a])) return true;
  return false;
}

template <class T>
void clamp_nonnegative(std::vector<T>& w) {
  if constexpr (ScalarOps<T>::kMode == ArithmeticMode::kFloat) {
    for (auto& v : w)
      if (v < 0) v = 0;
  }
}

}  // namespace detail

/// Non-throwing core of solve_full_support_equilibrium. Solves
///   M' x = v 1, 1'x = 1   and   M y = v 1, 1'y = 1
/// for square M.
template <class T>
SupportSolution<T> try_full_support(const Matrix<T>& m) {
  const std::size_t k = m.rows();
  SupportSolution<T> out;
  auto x = detail::solve_support_side(m, true);
  if (!x) return out;
  if (detail::has_negative(*x, k)) {
    out.status = SupportStatus::kNegativeWeight;
    return out;
  }
  auto y = detail::solve_support_side(m, false);
  if (!y) return out;
  if (detail::has_negative(*y, k)) {
    out.status = SupportStatus::kNegativeWeight;
    return out;
  }
  out.value = (*x)[k];
  x->pop_back();
  y->pop_back();
  out.row = std::move(*x);
  out.col = std::move(*y);
  detail::clamp_nonnegative(out.row);
  detail::clamp_nonnegative(out.col);
  out.status = SupportStatus::kOk;
  return out;
}

/// Equilibrium of a square game assuming every row and column is played,
/// i.e. the equalities of the support characterization. Throws
/// SingularSystem or NegativeWeight when that assumption is wrong.
template <class T>
EquilibriumCertificate<T> solve_full_support_equilibrium(const Matrix<T>& m) {
  if (!m.square()) throw UsageError("full-support solve needs a square matrix");
  auto sol = try_full_support(m);
  if (sol.status == SupportStatus::kSingular)
    throw SingularSystem("support system of a " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " matrix is singular");
  if (sol.status == SupportStatus::kNegativeWeight)
    throw NegativeWeight("support system solution leaves the simplex");
  EquilibriumCertificate<T> cert;
  cert.row_strategy = MixedStrategy<T>::from_weights(std::move(sol.row));
  cert.col_strategy = MixedStrategy<T>::from_weights(std::move(sol.col));
  cert.value = std::move(sol.value);
  return cert;
}

/// Equilibrium conditions on a fully known matrix:
///   max_i <e_i, M y> <= v <= min_j <x, M e_j>   with v = <x, M y>.
/// Float mode allows the configured tolerance on both sides.
template <class T>
bool is_equilibrium(const Matrix<T>& m, std::span<const T> x, std::span<const T> y) {
  using Ops = ScalarOps<T>;
  std::vector<T> my(m.rows(), T(0));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!Ops::is_zero(y[j])) my[i] += m(i, j) * y[j];
  T v(0);
  for (Index i = 0; i < m.rows(); ++i) v += x[i] * my[i];
  for (Index i = 0; i < m.rows(); ++i)
    if (!Ops::le_tol(my[i], v)) return false;
  for (Index j = 0; j < m.cols(); ++j) {
    T xm(0);
    for (Index i = 0; i < m.rows(); ++i)
      if (!Ops::is_zero(x[i])) xm += x[i] * m(i, j);
    if (!Ops::ge_tol(xm, v)) return false;
  }
  return true;
}

enum class BruteForceMode {
  kFast,   // stop after the smallest support size that yields an equilibrium
  kAudit,  // scan every support size
};

/// Ground-truth equilibrium by support enumeration.
///
/// Visits every pair of equal-size row/column supports in increasing size,
/// lexicographic within a size, solves the support system, and keeps the
/// solutions that satisfy the equilibrium conditions on the whole matrix.
/// Solutions with zero weights are kept too, so extreme equilibria of
/// degenerate games are found; duplicates are merged by value. Throws
/// NotUnique when two distinct equilibria are found. Exponential in n.
template <class T>
EquilibriumCertificate<T> brute_force_unique_nash(const Matrix<T>& m,
                                                  BruteForceMode mode = BruteForceMode::kFast) {
  std::vector<std::pair<std::vector<T>, std::vector<T>>> found;
  T value{0};
  const std::size_t max_size = std::min(m.rows(), m.cols());
  std::vector<T> x(m.rows()), y(m.cols());

  auto same = [](const std::vector<T>& a, const std::vector<T>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!ScalarOps<T>::eq(a[i], b[i])) return false;
    return true;
  };

  using Ops = ScalarOps<T>;
  for (std::size_t size = 1; size <= max_size; ++size) {
    for_each_subset(m.rows(), size, [&](std::span<const Index> rs) {
      for_each_subset(m.cols(), size, [&](std::span<const Index> cs) {
        const Matrix<T> sub = m.submatrix(rs, cs);
        // Row side first: most support pairs already fail here.
        auto xs = detail::solve_support_side(sub, true);
        if (!xs || detail::has_negative(*xs, size)) return;
        const T v = (*xs)[size];
        for (Index j = 0; j < m.cols(); ++j) {
          T xa(0);
          for (std::size_t a = 0; a < size; ++a) xa += (*xs)[a] * m(rs[a], j);
          if (!Ops::ge_tol(xa, v)) return;
        }
        auto ys = detail::solve_support_side(sub, false);
        if (!ys || detail::has_negative(*ys, size)) return;
        for (Index i = 0; i < m.rows(); ++i) {
          T ay(0);
          for (std::size_t b = 0; b < size; ++b) ay += m(i, cs[b]) * (*ys)[b];
          if (!Ops::le_tol(ay, v)) return;
        }
        xs->pop_back();
        ys->pop_back();
        detail::clamp_nonnegative(*xs);
        detail::clamp_nonnegative(*ys);
        std::fill(x.begin(), x.end(), T(0));
        std::fill(y.begin(), y.end(), T(0));
        for (std::size_t a = 0; a < size; ++a) {
          x[rs[a]] = (*xs)[a];
          y[cs[a]] = (*ys)[a];
        }
        for (const auto& [fx, fy] : found)
          if (same(fx, x) && same(fy, y)) return;
        found.emplace_back(x, y);
        value = v;
      });
    });
    if (found.size() > 1)
      throw NotUnique("support enumeration found " + std::to_string(found.size()) +
                      " distinct equilibria");
    if (!found.empty() && mode == BruteForceMode::kFast) break;
  }
  if (found.empty()) throw Error("support enumeration found no equilibrium");

  EquilibriumCertificate<T> cert;
  cert.row_strategy = MixedStrategy<T>::from_weights(found.front().first);
  cert.col_strategy = MixedStrategy<T>::from_weights(found.front().second);
  cert.value = value;
  cert.verified = true;
  cert.unique_claimed = mode == BruteForceMode::kAudit;
  return cert;
}

/// Checks (x, y) against the oracle's matrix, reading only the rows in
/// supp(x) and the columns in supp(y): at most 2*n*s distinct queries with
/// s = max(|supp x|, |supp y|). Malformed strategies are rejected before any
/// query is spent.
template <class T>
bool verify_equilibrium(Oracle<T>& oracle, const MixedStrategy<T>& x, const MixedStrategy<T>& y) {
  using Ops = ScalarOps<T>;
  if (x.dimension() != oracle.rows() || y.dimension() != oracle.cols())
    throw UsageError("strategy dimensions do not match the matrix");
  if (x.support().empty() || y.support().empty())
    throw UsageError("strategy has empty support");

  // <e_i, A y> for every row: needs the columns of supp(y).
  std::vector<T> ay(oracle.rows(), T(0));
  for (Index j : y.support())
    for (Index i = 0; i < oracle.rows(); ++i) ay[i] += oracle.query_entry(i, j) * y.weight(j);
  T v(0);
  for (Index i : x.support()) v += x.weight(i) * ay[i];

  for (Index i = 0; i < oracle.rows(); ++i)
    if (!Ops::le_tol(ay[i], v)) return false;
  // <x, A e_j> for every column: needs the rows of supp(x).
  for (Index j = 0; j < oracle.cols(); ++j) {
    T xa(0);
    for (Index i : x.support()) xa += x.weight(i) * oracle.query_entry(i, j);
    if (!Ops::ge_tol(xa, v)) return false;
  }
  return true;
}

/// Strict saddle condition M[i][j*] < M[i*][j*] < M[i*][j] for all other
/// i, j; sufficient for (e_i*, e_j*) to be the unique equilibrium.
template <class T>
bool check_unique_psne_condition(const Matrix<T>& m, Index istar, Index jstar) {
  if (istar >= m.rows() || jstar >= m.cols()) throw UsageError("PSNE candidate out of range");
  const T& center = m(istar, jstar);
  for (Index i = 0; i < m.rows(); ++i)
    if (i != istar && !(m(i, jstar) < center)) return false;
  for (Index j = 0; j < m.cols(); ++j)
    if (j != jstar && !(center < m(istar, j))) return false;
  return true;
}

/// Same predicate through an oracle: queries row i* and column j*
/// (rows + cols - 1 entries).
template <class T>
bool check_unique_psne_condition(Oracle<T>& oracle, Index istar, Index jstar) {
  if (istar >= oracle.rows() || jstar >= oracle.cols())
    throw UsageError("PSNE candidate out of range");
  const T center = oracle.query_entry(istar, jstar);
  bool ok = true;
  for (Index i = 0; i < oracle.rows(); ++i)
    if (i != istar && !(oracle.query_entry(i, jstar) < center)) ok = false;
  for (Index j = 0; j < oracle.cols(); ++j)
    if (j != jstar && !(center < oracle.query_entry(istar, j))) ok = false;
  return ok;
}

}  // namespace qnash
