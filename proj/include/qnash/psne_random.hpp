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
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qnash/errors.hpp"
#include "qnash/matrix.hpp"
#include "qnash/oracle.hpp"

namespace qnash {

/// Every randomized routine draws from this engine; a seed fixes a run
/// bit-for-bit.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection on the raw 64-bit output.
/// Written out instead of std::uniform_int_distribution so that runs are
/// reproducible across standard libraries.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw UsageError("uniform_below: empty range");
  const std::uint64_t limit = Rng::max() - (Rng::max() % bound + 1) % bound;
  for (;;) {
    std::uint64_t r = rng();
    if (r <= limit) return r % bound;
  }
}

/// ell independent uniform draws from `pool`, with replacement. Duplicates
/// stay in the returned multiset.
inline std::vector<Index> sample_probe_set(std::span<const Index> pool, std::size_t ell, Rng& rng) {
  if (pool.empty()) throw UsageError("probe pool is empty");
  if (ell == 0) throw UsageError("probe size must be positive");
  std::vector<Index> out;
  out.reserve(ell);
  for (std::size_t s = 0; s < ell; ++s) out.push_back(pool[uniform_below(rng, pool.size())]);
  return out;
}

inline void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw UsageError("delta must lie in (0, 1)");
}

/// ceil(2 log2(2 N^2 / delta)); N is the side of the matrix searched.
inline std::size_t probe_size(std::uint64_t n, double delta) {
  check_delta(delta);
  const double nn = static_cast<double>(n);
  return static_cast<std::size_t>(std::ceil(2.0 * std::log2(2.0 * nn * nn / delta)));
}

/// Query ceiling 8 n log2(4 n^2 / delta) of the halving search on an n x n
/// matrix.
inline double psne_query_bound(std::uint64_t n, double delta) {
  const double nn = static_cast<double>(n);
  return 8.0 * nn * std::log2(4.0 * nn * nn / delta);
}

/// Snapshot of one halving iteration, after the pivots are chosen.
struct PsneSearchState {
  std::size_t iteration = 0;     // 1-based
  std::vector<Index> rows;       // X_t, ascending
  std::vector<Index> cols;       // Y_t, ascending
  std::vector<Index> probe_rows; // multiset drawn from X_t (or X_t itself)
  std::vector<Index> probe_cols;
  std::size_t probe_size = 0;    // ell
  Index pivot_row = 0;
  Index pivot_col = 0;
  std::vector<Index> next_rows;  // X_{t+1}
  std::vector<Index> next_cols;  // Y_{t+1}
};

struct PsneResult {
  Cell cell;
  std::size_t iterations = 0;  // halving steps performed
  std::size_t probe_queries = 0;
  std::size_t pivot_queries = 0;
};

using PsneObserver = std::function<void(const PsneSearchState&)>;

/// Randomized halving search for the unique pure saddle point of a square
/// matrix, comparing entries only.
///
/// Starting from all rows X and all columns Y, each iteration draws ell
/// probe rows and ell probe columns, queries X x probe_cols and
/// probe_rows x Y, and picks the pivot row maximizing its minimum over the
/// probe columns and the pivot column minimizing its maximum over the probe
/// rows. The pivot column and row are then read in full; the top half of X
/// by pivot-column value and the bottom half of Y by pivot-row value
/// survive. With a unique saddle point it is returned with probability at
/// least 1 - delta after at most 8 n log2(4 n^2 / delta) distinct queries.
///
/// When ell >= |X_t| the whole pool is used as the probe set. Ties go to the
/// lowest index. Without a unique saddle point the result carries no
/// guarantee and must be verified by the caller.
template <EntryOracle O>
PsneResult find_psne(O& oracle, double delta, Rng& rng, const PsneObserver& observer = {}) {
  check_delta(delta);
  const std::size_t n = oracle.rows();
  if (n == 0 || oracle.cols() != n) throw UsageError("find_psne needs a nonempty square matrix");
  const std::size_t ell = probe_size(n, delta);

  using T = typename O::value_type;
  PsneResult result;
  std::vector<Index> rows(n), cols(n);
  std::iota(rows.begin(), rows.end(), Index{0});
  std::iota(cols.begin(), cols.end(), Index{0});

  auto unique_sorted = [](std::vector<Index> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };

  for (std::size_t t = 1;; ++t) {
    if (rows.size() == 1) {
      result.cell = {rows.front(), cols.front()};
      result.iterations = t - 1;
      return result;
    }
    const std::size_t nt = rows.size();

    std::vector<Index> probe_rows = ell >= nt ? rows : sample_probe_set(rows, ell, rng);
    std::vector<Index> probe_cols = ell >= nt ? cols : sample_probe_set(cols, ell, rng);
    const std::vector<Index> qrows = unique_sorted(probe_rows);
    const std::vector<Index> qcols = unique_sorted(probe_cols);

    const std::size_t before_probe = oracle.distinct_query_count();
    // argmax over X_t of the minimum over the probe columns.
    Index pivot_row = rows.front();
    T best_row_min{};
    for (std::size_t a = 0; a < nt; ++a) {
      const Index i = rows[a];
      T row_min = oracle.query_entry(i, qcols.front());
      for (std::size_t b = 1; b < qcols.size(); ++b) {
        T v = oracle.query_entry(i, qcols[b]);
        if (v < row_min) row_min = std::move(v);
      }
      if (a == 0 || row_min > best_row_min) {
        best_row_min = std::move(row_min);
        pivot_row = i;
      }
    }
    // argmin over Y_t of the maximum over the probe rows.
    Index pivot_col = cols.front();
    T best_col_max{};
    for (std::size_t b = 0; b < nt; ++b) {
      const Index j = cols[b];
      T col_max = oracle.query_entry(qrows.front(), j);
      for (std::size_t a = 1; a < qrows.size(); ++a) {
        T v = oracle.query_entry(qrows[a], j);
        if (v > col_max) col_max = std::move(v);
      }
      if (b == 0 || col_max < best_col_max) {
        best_col_max = std::move(col_max);
        pivot_col = j;
      }
    }
    const std::size_t before_pivot = oracle.distinct_query_count();
    result.probe_queries += before_pivot - before_probe;

    std::vector<std::pair<T, Index>> by_col, by_row;
    by_col.reserve(nt);
    by_row.reserve(nt);
    for (Index i : rows) by_col.emplace_back(oracle.query_entry(i, pivot_col), i);
    for (Index j : cols) by_row.emplace_back(oracle.query_entry(pivot_row, j), j);
    result.pivot_queries += oracle.distinct_query_count() - before_pivot;

    // Stable orders: values first, index breaks ties.
    std::sort(by_col.begin(), by_col.end(), [](const auto& a, const auto& b) {
      if (a.first > b.first) return true;
      if (b.first > a.first) return false;
      return a.second < b.second;
    });
    std::sort(by_row.begin(), by_row.end(), [](const auto& a, const auto& b) {
      if (a.first < b.first) return true;
      if (b.first < a.first) return false;
      return a.second < b.second;
    });
    const std::size_t half = nt / 2;
    std::vector<Index> next_rows, next_cols;
    next_rows.reserve(half);
    next_cols.reserve(half);
    for (std::size_t a = 0; a < half; ++a) {
      next_rows.push_back(by_col[a].second);
      next_cols.push_back(by_row[a].second);
    }
    std::sort(next_rows.begin(), next_rows.end());
    std::sort(next_cols.begin(), next_cols.end());

    if (observer) {
      PsneSearchState state;
      state.iteration = t;
      state.rows = rows;
      state.cols = cols;
      state.probe_rows = std::move(probe_rows);
      state.probe_cols = std::move(probe_cols);
      state.probe_size = ell;
      state.pivot_row = pivot_row;
      state.pivot_col = pivot_col;
      state.next_rows = next_rows;
      state.next_cols = next_cols;
      observer(state);
    }
    rows = std::move(next_rows);
    cols = std::move(next_cols);
  }
}

}  // namespace qnash
