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
#include <vector>

#include "qnash/matrix.hpp"
#include "qnash/scalar.hpp"

namespace qnash {

/// Optimal strategies and value of a fully known matrix game.
template <class T>
struct GameSolution {
  T value{0};
  std::vector<T> row;  // maximizer's optimal weights
  std::vector<T> col;  // minimizer's optimal weights
};

/// Solves the matrix game as a linear program with the simplex method and
/// Bland's rule (terminates without cycling, exact for rationals).
///
/// The payoffs are shifted to P = M - min(M) + 1 > 0, so the game value of P
/// is positive and the column player's LP
///
///   maximize 1'w  subject to  P w <= 1,  w >= 0
///
/// has the slack basis as a feasible start. At the optimum z = 1'w equals
/// 1/V_P, y = w/z, and the constraint duals u give x = u/z. The value of M
/// is V_P + min(M) - 1.
template <class T>
GameSolution<T> solve_game_lp(const Matrix<T>& m) {
  using Ops = ScalarOps<T>;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();

  T lo = m(0, 0);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      if (m(i, j) < lo) lo = m(i, j);
  const T shift = T(1) - lo;

  // Tableau columns: [w_0..w_{cols-1}, s_0..s_{rows-1}, rhs]; last row is
  // the objective in "z_j - c_j" form.
  const std::size_t width = cols + rows + 1;
  const std::size_t rhs = width - 1;
  Matrix<T> tab(rows + 1, width);
  std::vector<std::size_t> basis(rows);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) tab(i, j) = m(i, j) + shift;
    tab(i, cols + i) = T(1);
    tab(i, rhs) = T(1);
    basis[i] = cols + i;
  }
  for (Index j = 0; j < cols; ++j) tab(rows, j) = T(-1);

  auto positive = [](const T& v) {
    if constexpr (Ops::kMode == ArithmeticMode::kExact) {
      return sgn(v) > 0;
    } else {
      return v > Ops::tolerance;
    }
  };

  for (;;) {
    // Bland: lowest-index improving column.
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (Ops::is_negative(tab(rows, j))) {
        enter = j;
        break;
      }
    if (enter == width) break;

    std::size_t leave = rows;
    T best_ratio(0);
    for (std::size_t i = 0; i < rows; ++i) {
      if (!positive(tab(i, enter))) continue;
      T ratio = tab(i, rhs) / tab(i, enter);
      if (leave == rows || ratio < best_ratio ||
          (Ops::eq(ratio, best_ratio) && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    // P > 0 keeps the LP bounded, so some row always qualifies.
    if (leave == rows) break;

    T inv = T(1) / tab(leave, enter);
    for (std::size_t c = 0; c < width; ++c) tab(leave, c) *= inv;
    for (std::size_t r = 0; r <= rows; ++r) {
      if (r == leave || Ops::is_zero(tab(r, enter))) continue;
      T factor = tab(r, enter);
      for (std::size_t c = 0; c < width; ++c) tab(r, c) -= factor * tab(leave, c);
    }
    basis[leave] = enter;
  }

  const T z = tab(rows, rhs);
  GameSolution<T> sol;
  sol.col.assign(cols, T(0));
  for (std::size_t i = 0; i < rows; ++i)
    if (basis[i] < cols) sol.col[basis[i]] = tab(i, rhs) / z;
  sol.row.assign(rows, T(0));
  for (std::size_t i = 0; i < rows; ++i) sol.row[i] = tab(rows, cols + i) / z;
  sol.value = T(1) / z - shift;
  return sol;
}

}  // namespace qnash
