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
#include <functional>
#include <map>
#include <type_traits>
#include <vector>

#include "qnash/errors.hpp"
#include "qnash/matrix.hpp"
#include "qnash/oracle.hpp"

// Deterministic search for a unique pure saddle point in at most 3n - 2
// queries. A saddle point (i*, j*) satisfies the strict gaps
//   A[i][j*] < A[i*][j*] < A[i*][j]   for all i != i*, j != j*,
// so an entry is ruled out ("nullified") as soon as one entry of its row is
// <= one entry of its column.

namespace qnash {

template <class T>
struct Candidate {
  Cell cell;
  T value;
};

/// Queried entries that may still be the saddle point, in insertion order,
/// without duplicate cells.
template <class T>
class CandidateSet {
 public:
  void add(Cell c, const T& value) {
    for (const auto& e : entries_)
      if (e.cell == c) return;
    entries_.push_back({c, value});
  }
  const std::vector<Candidate<T>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool contains(Cell c) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const auto& e) { return e.cell == c; });
  }

 private:
  std::vector<Candidate<T>> entries_;
};

/// True iff `row_witness` (same row as the candidate) is <= `col_witness`
/// (same column as the candidate), which contradicts the strict gaps at the
/// candidate.
template <class T>
bool is_nullified(Cell candidate, const Candidate<T>& row_witness, const Candidate<T>& col_witness) {
  if (row_witness.cell.row != candidate.row || col_witness.cell.col != candidate.col)
    throw UsageError("witnesses must share the candidate's row and column");
  if (row_witness.cell == col_witness.cell) throw UsageError("witnesses must be distinct entries");
  return !(col_witness.value < row_witness.value);
}

/// The surviving square sub-board of phase one: live_rows[a] is paired with
/// live_cols[a] through the queried cell diagonal[a].
struct ShrinkingBoard {
  std::vector<Index> live_rows;
  std::vector<Index> live_cols;
  std::vector<Cell> diagonal;  // the pairing, one queried cell per live row
};

using BoardObserver = std::function<void(std::size_t iteration, const ShrinkingBoard&)>;

/// Phase one: query the diagonal, then repeatedly move the minimum and
/// maximum diagonal entries into the candidate set, query the one cell
/// (row of the max, column of the min) that is not nullified, and drop the
/// min's row and the max's column. Exactly 2n - 1 distinct queries when the
/// extremes never coincide.
template <class T>
CandidateSet<T> phase_one(Oracle<T>& oracle, const BoardObserver& observer = {}) {
  const std::size_t n = oracle.rows();
  if (n == 0 || oracle.cols() != n) throw UsageError("swordfish needs a nonempty square matrix");

  std::vector<Candidate<T>> diag;
  diag.reserve(n);
  for (Index d = 0; d < n; ++d) diag.push_back({{d, d}, oracle.query_entry(d, d)});

  CandidateSet<T> set;
  for (std::size_t k = 1; k < n; ++k) {
    // Extremes of the diagonal, lowest original row on ties.
    std::size_t lo = 0, hi = 0;
    for (std::size_t d = 1; d < diag.size(); ++d) {
      const auto& e = diag[d];
      if (e.value < diag[lo].value || (!(diag[lo].value < e.value) && e.cell.row < diag[lo].cell.row))
        lo = d;
      if (e.value > diag[hi].value || (!(diag[hi].value > e.value) && e.cell.row < diag[hi].cell.row))
        hi = d;
    }
    set.add(diag[lo].cell, diag[lo].value);
    set.add(diag[hi].cell, diag[hi].value);

    // The remaining row of the max pairs with the remaining column of the min.
    const Cell bridge{diag[hi].cell.row, diag[lo].cell.col};
    T bridge_value = oracle.query_entry(bridge.row, bridge.col);
    if (lo == hi) {
      diag.erase(diag.begin() + static_cast<std::ptrdiff_t>(lo));
    } else {
      diag[hi] = {bridge, std::move(bridge_value)};
      diag.erase(diag.begin() + static_cast<std::ptrdiff_t>(lo));
    }

    if (observer) {
      ShrinkingBoard board;
      for (const auto& e : diag) {
        board.live_rows.push_back(e.cell.row);
        board.live_cols.push_back(e.cell.col);
        board.diagonal.push_back(e.cell);
      }
      observer(k, board);
    }
  }
  set.add(diag.front().cell, diag.front().value);
  return set;
}

/// Phase two: keep at most one candidate per row (the unique row minimum) and
/// per column (the unique column maximum), lay the survivors on a virtual
/// diagonal in ascending order, and eliminate with two pointers, one query
/// per step. Throws EmptyCandidates when nothing survives. `on_remove`
/// receives every candidate dropped.
template <class T>
Cell phase_two(Oracle<T>& oracle, const CandidateSet<T>& set,
               const std::type_identity_t<std::function<void(const Candidate<T>&)>>& on_remove = {}) {
  std::vector<Candidate<T>> cands = set.entries();

  auto drop = [&](const Candidate<T>& c) {
    if (on_remove) on_remove(c);
  };
  // Keeps, within each group, only the unique extreme (min if `keep_min`).
  auto thin = [&](auto group_of, bool keep_min) {
    std::map<Index, std::vector<std::size_t>> groups;
    for (std::size_t a = 0; a < cands.size(); ++a) groups[group_of(cands[a])].push_back(a);
    std::vector<bool> keep(cands.size(), true);
    for (const auto& [key, members] : groups) {
      if (members.size() < 2) continue;
      std::size_t best = members.front();
      bool tied = false;
      for (std::size_t m = 1; m < members.size(); ++m) {
        const T& v = cands[members[m]].value;
        const T& b = cands[best].value;
        if (keep_min ? v < b : v > b) {
          best = members[m];
          tied = false;
        } else if (!(v < b) && !(b < v)) {
          tied = true;
        }
      }
      for (std::size_t m : members)
        if (tied || m != best) keep[m] = false;
    }
    std::vector<Candidate<T>> kept;
    for (std::size_t a = 0; a < cands.size(); ++a) {
      if (keep[a]) {
        kept.push_back(std::move(cands[a]));
      } else {
        drop(cands[a]);
      }
    }
    cands = std::move(kept);
  };
  thin([](const Candidate<T>& c) { return c.cell.row; }, true);
  thin([](const Candidate<T>& c) { return c.cell.col; }, false);

  if (cands.empty()) throw EmptyCandidates("no candidate survived preprocessing");
  std::stable_sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
    if (a.value < b.value) return true;
    if (b.value < a.value) return false;
    return a.cell < b.cell;
  });

  // Invariant: the candidates still alive are hi_ptr's partner lo_ptr plus
  // positions [hi_ptr, s). Diagonal values are ascending, so each query
  // nullifies at least one of the two.
  const std::size_t s = cands.size();
  std::size_t lo_ptr = 0, hi_ptr = 1;
  for (;;) {
    if (lo_ptr >= s) throw EmptyCandidates("every candidate was nullified");
    if (hi_ptr >= s) return cands[lo_ptr].cell;
    const auto& low = cands[lo_ptr];
    const auto& high = cands[hi_ptr];
    const T& probe = oracle.query_entry(high.cell.row, low.cell.col);
    const bool kills_high = !(high.value < probe);  // probe <= high
    const bool kills_low = !(probe < low.value);    // probe >= low
    if (kills_high && !kills_low) {
      drop(high);
      hi_ptr += 1;
    } else if (kills_low && !kills_high) {
      drop(low);
      lo_ptr = hi_ptr;
      hi_ptr += 1;
    } else if (kills_low && kills_high) {
      drop(high);
      drop(low);
      lo_ptr = hi_ptr + 1;
      hi_ptr += 2;
    } else {
      // probe < low <= high < probe cannot happen.
      throw Error("swordfish phase two: candidates out of order");
    }
  }
}

template <class T>
Cell swordfish(Oracle<T>& oracle) {
  return phase_two(oracle, phase_one(oracle));
}

/// Query ceiling 3n - 2.
inline std::size_t swordfish_query_bound(std::size_t n) { return 3 * n - 2; }

}  // namespace qnash
