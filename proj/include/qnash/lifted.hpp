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

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qnash/errors.hpp"
#include "qnash/matrix.hpp"
#include "qnash/minimax.hpp"
#include "qnash/oracle.hpp"
#include "qnash/psne_random.hpp"
#include "qnash/strategy.hpp"
#include "qnash/subset_codec.hpp"

namespace qnash {

/// Largest C(n,k) for which the halving search over k-subsets is attempted;
/// its index sets are stored explicitly.
inline constexpr std::uint64_t kDefaultMaxLiftedDimension = 1'000'000;

/// Virtual C(n,k) x C(n,k) matrix whose (i, j) entry is the game value of the
/// k x k submatrix of the base matrix with rows unrank(i) and columns
/// unrank(j). Nothing is materialized: an entry is computed on first read
/// from at most k^2 base queries and cached.
///
/// When the base game has a unique equilibrium with support size k, this
/// matrix has a strict saddle point at (rank(supp x*), rank(supp y*)) whose
/// value is the value of the base game.
template <class T>
class LiftedOracle {
 public:
  using value_type = T;

  LiftedOracle(Oracle<T>& base, std::size_t k,
               std::uint64_t max_dimension = kDefaultMaxLiftedDimension)
      : base_(base), codec_(base.rows(), k) {
    if (base.rows() != base.cols()) throw UsageError("lifted game needs a square base matrix");
    if (codec_.count() > max_dimension)
      throw UsageError("lifted dimension C(" + std::to_string(base.rows()) + "," +
                       std::to_string(k) + ") = " + std::to_string(codec_.count()) +
                       " exceeds the limit " + std::to_string(max_dimension));
  }

  std::size_t rows() const { return codec_.count(); }
  std::size_t cols() const { return codec_.count(); }
  const SubsetCodec& codec() const { return codec_; }

  const T& query_entry(Index i, Index j) {
    if (i >= codec_.count() || j >= codec_.count()) throw UsageError("lifted index out of range");
    const std::uint64_t key = static_cast<std::uint64_t>(i) * codec_.count() + j;
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const auto row_ids = codec_.unrank(i);
    const auto col_ids = codec_.unrank(j);
    const std::size_t k = codec_.k();
    Matrix<T> sub(k, k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) sub(a, b) = base_.query_entry(row_ids[a], col_ids[b]);
    return cache_.emplace(key, solve_value(sub)).first->second;
  }

  /// Distinct queries charged to the base matrix.
  std::size_t distinct_query_count() const { return base_.distinct_query_count(); }
  /// Distinct lifted entries computed so far.
  std::size_t lifted_reads() const { return cache_.size(); }

 private:
  Oracle<T>& base_;
  SubsetCodec codec_;
  std::unordered_map<std::uint64_t, T> cache_;
};

/// Fully materialized lifted matrix, for audits at small n (reads every base
/// entry).
template <class T>
Matrix<T> materialize_lifted(const Matrix<T>& base, std::size_t k) {
  Oracle<T> oracle(base);
  LiftedOracle<T> lifted(oracle, k);
  Matrix<T> out(lifted.rows(), lifted.cols());
  for (Index i = 0; i < lifted.rows(); ++i)
    for (Index j = 0; j < lifted.cols(); ++j) out(i, j) = lifted.query_entry(i, j);
  return out;
}

struct NashOptions {
  double delta = 0.1;
  /// Skip the outer loop and search only this support size.
  std::optional<std::size_t> known_support;
  /// Divide delta across the calls of the outer loop (by the known support
  /// size, else by n) instead of using delta for every call.
  bool split_delta = false;
  std::uint64_t max_lifted_dimension = kDefaultMaxLiftedDimension;
};

enum class StageOutcome { kVerified, kRejected, kSingular, kNegativeWeight };

inline std::string_view to_string(StageOutcome o) {
  switch (o) {
    case StageOutcome::kVerified: return "verified";
    case StageOutcome::kRejected: return "rejected";
    case StageOutcome::kSingular: return "singular";
    case StageOutcome::kNegativeWeight: return "negative_weight";
  }
  return "?";
}

struct NashStage {
  std::size_t support_size = 0;
  std::uint64_t lifted_dimension = 0;
  Cell lifted_cell;
  std::vector<Index> row_support;
  std::vector<Index> col_support;
  StageOutcome outcome = StageOutcome::kRejected;
};

/// Base queries attributed to the step that first read them.
struct QueryBreakdown {
  std::size_t probe = 0;
  std::size_t pivot = 0;
  std::size_t support_solve = 0;
  std::size_t verification = 0;
  std::size_t total() const { return probe + pivot + support_solve + verification; }
};

template <class T>
struct NashResult {
  EquilibriumCertificate<T> certificate;
  std::size_t support_size = 0;
  QueryBreakdown queries;
  std::vector<NashStage> stages;
};

/// Exact equilibrium of a game with a unique equilibrium.
///
/// For s = 1, 2, ...: run the halving search on the lifted matrix over
/// s-subsets, solve the support system of the s x s submatrix it points to,
/// and verify the embedded pair against the base matrix (at most 2ns
/// queries). The first verified pair is returned. A singular or infeasible
/// support system counts as a failed stage. All stages share the base
/// oracle's ledger. Throws Exhausted when every stage fails.
template <class T>
NashResult<T> find_unique_nash(Oracle<T>& oracle, Rng& rng, const NashOptions& options = {}) {
  check_delta(options.delta);
  const std::size_t n = oracle.rows();
  if (n == 0 || oracle.cols() != n) throw UsageError("find_unique_nash needs a square matrix");

  std::size_t first = 1, last = n;
  if (options.known_support) {
    if (*options.known_support == 0 || *options.known_support > n)
      throw UsageError("known support size must lie in [1, n]");
    first = last = *options.known_support;
  }
  double delta = options.delta;
  if (options.split_delta) delta /= static_cast<double>(options.known_support ? *options.known_support : n);

  NashResult<T> result;
  for (std::size_t s = first; s <= last; ++s) {
    if (binomial(n, s) > options.max_lifted_dimension)
      throw Exhausted("no verified equilibrium for support sizes below " + std::to_string(s) +
                      "; C(" + std::to_string(n) + "," + std::to_string(s) +
                      ") exceeds the lifted dimension limit");
    LiftedOracle<T> lifted(oracle, s, options.max_lifted_dimension);
    const PsneResult hit = find_psne(lifted, delta, rng);
    result.queries.probe += hit.probe_queries;
    result.queries.pivot += hit.pivot_queries;

    NashStage stage;
    stage.support_size = s;
    stage.lifted_dimension = lifted.codec().count();
    stage.lifted_cell = hit.cell;
    stage.row_support = lifted.codec().unrank(hit.cell.row);
    stage.col_support = lifted.codec().unrank(hit.cell.col);

    std::size_t before = oracle.distinct_query_count();
    Matrix<T> sub(s, s);
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t b = 0; b < s; ++b)
        sub(a, b) = oracle.query_entry(stage.row_support[a], stage.col_support[b]);
    auto sol = try_full_support(sub);
    result.queries.support_solve += oracle.distinct_query_count() - before;
    if (sol.status != SupportStatus::kOk) {
      stage.outcome = sol.status == SupportStatus::kSingular ? StageOutcome::kSingular
                                                             : StageOutcome::kNegativeWeight;
      result.stages.push_back(std::move(stage));
      continue;
    }

    auto x = MixedStrategy<T>::embed(n, stage.row_support, sol.row);
    auto y = MixedStrategy<T>::embed(n, stage.col_support, sol.col);
    before = oracle.distinct_query_count();
    const bool ok = verify_equilibrium(oracle, x, y);
    result.queries.verification += oracle.distinct_query_count() - before;
    stage.outcome = ok ? StageOutcome::kVerified : StageOutcome::kRejected;
    result.stages.push_back(std::move(stage));
    if (ok) {
      result.certificate.row_strategy = std::move(x);
      result.certificate.col_strategy = std::move(y);
      result.certificate.value = std::move(sol.value);
      result.certificate.verified = true;
      result.certificate.unique_claimed = true;
      result.certificate.queries_used = oracle.distinct_query_count();
      result.support_size = s;
      return result;
    }
  }
  throw Exhausted("no verified equilibrium for any support size in [" + std::to_string(first) +
                  ", " + std::to_string(last) + "]");
}

}  // namespace qnash
