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

#include <concepts>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qnash/errors.hpp"
#include "qnash/matrix.hpp"

namespace qnash {

/// Distinct-entry accounting. Stores coordinates only, in first-query order,
/// so two runs can be compared query-for-query.
class QueryLedger {
 public:
  // Returns true iff the cell was not queried before.
  bool record(Cell c) {
    if (!seen_.insert(key(c)).second) return false;
    order_.push_back(c);
    return true;
  }

  bool contains(Cell c) const { return seen_.count(key(c)) != 0; }
  std::size_t distinct_count() const { return order_.size(); }
  const std::vector<Cell>& first_queries() const { return order_; }

  void clear() {
    seen_.clear();
    order_.clear();
  }

 private:
  static std::uint64_t key(Cell c) {
    return (static_cast<std::uint64_t>(c.row) << 32) ^ static_cast<std::uint64_t>(c.col);
  }

  std::unordered_set<std::uint64_t> seen_;
  std::vector<Cell> order_;
};

/// A matrix hidden behind the payoff-query interface. The only way to read
/// an entry is `query_entry`, which records the cell in the ledger.
template <class T>
class Oracle {
 public:
  using value_type = T;

  explicit Oracle(Matrix<T> m) : matrix_(std::move(m)) {
    if (matrix_.rows() >= (std::size_t{1} << 32) || matrix_.cols() >= (std::size_t{1} << 32))
      throw UsageError("matrix too large for the query ledger");
  }

  std::size_t rows() const { return matrix_.rows(); }
  std::size_t cols() const { return matrix_.cols(); }

  const T& query_entry(Index i, Index j) {
    if (i >= matrix_.rows() || j >= matrix_.cols())
      throw UsageError("query (" + std::to_string(to_external(i)) + "," +
                       std::to_string(to_external(j)) + ") outside " +
                       std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()) +
                       " matrix");
    ledger_.record({i, j});
    return matrix_(i, j);
  }

  std::size_t distinct_query_count() const { return ledger_.distinct_count(); }
  const QueryLedger& ledger() const { return ledger_; }
  void reset_ledger() { ledger_.clear(); }

 private:
  Matrix<T> matrix_;
  QueryLedger ledger_;
};

/// Anything Algorithm-1-style search can run on: the base oracle, or the
/// lifted view over k-subsets.
template <class O>
concept EntryOracle = requires(O& o, Index i, Index j) {
  typename O::value_type;
  { o.rows() } -> std::convertible_to<std::size_t>;
  { o.cols() } -> std::convertible_to<std::size_t>;
  o.query_entry(i, j);
  { o.distinct_query_count() } -> std::convertible_to<std::size_t>;
};

/// Reads every entry through the oracle (rows*cols queries).
template <class T>
Matrix<T> materialize(Oracle<T>& oracle) {
  Matrix<T> out(oracle.rows(), oracle.cols());
  for (Index i = 0; i < oracle.rows(); ++i)
    for (Index j = 0; j < oracle.cols(); ++j) out(i, j) = oracle.query_entry(i, j);
  return out;
}

}  // namespace qnash
