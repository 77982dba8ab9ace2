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
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "qnash/errors.hpp"
#include "qnash/matrix.hpp"

namespace qnash {

inline constexpr std::uint64_t kBinomialSaturated = std::numeric_limits<std::uint64_t>::max();

/// C(n, k), saturating at kBinomialSaturated on overflow.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // acc * (n - k + i) / i is exact at every step.
    acc = acc * (n - k + i) / i;
    if (acc > kBinomialSaturated) return kBinomialSaturated;
  }
  return static_cast<std::uint64_t>(acc);
}

/// Advances a sorted k-subset of [0, n) to its lexicographic successor.
/// Returns false after the last subset.
inline bool next_combination(std::vector<Index>& c, std::size_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

/// Calls fn(subset) for every k-subset of [0, n) in lexicographic order.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<Index> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  do {
    fn(std::span<const Index>(c));
  } while (k > 0 && next_combination(c, n));
}

/// Lexicographic bijection between ranks [0, C(n,k)) and sorted k-subsets
/// of [0, n), computed with the combinatorial number system (no table of
/// subsets). Ranks and elements are 0-based here; the 1-based form used in
/// documentation is rank+1 / element+1.
class SubsetCodec {
 public:
  SubsetCodec(std::size_t n, std::size_t k) : n_(n), k_(k) {
    if (k == 0 || k > n) throw UsageError("subset size must be in [1, n]");
    count_ = binomial(n, k);
    if (count_ == kBinomialSaturated)
      throw UsageError("C(" + std::to_string(n) + "," + std::to_string(k) +
                       ") does not fit in 64 bits");
    table_.assign((n + 1) * (k + 1), 0);
    for (std::size_t a = 0; a <= n; ++a)
      for (std::size_t b = 0; b <= k; ++b) table_[a * (k + 1) + b] = binomial(a, b);
  }

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::uint64_t count() const { return count_; }

  std::vector<Index> unrank(std::uint64_t r) const {
    if (r >= count_)
      throw UsageError("rank " + std::to_string(r + 1) + " outside [1, " +
                       std::to_string(count_) + "]");
    std::vector<Index> out;
    out.reserve(k_);
    Index v = 0;
    for (std::size_t pos = 0; pos < k_; ++pos) {
      for (;; ++v) {
        // Subsets whose element at `pos` is v and whose remaining k-pos-1
        // elements come from (v, n).
        std::uint64_t block = choose(n_ - 1 - v, k_ - 1 - pos);
        if (r < block) break;
        r -= block;
      }
      out.push_back(v++);
    }
    return out;
  }

  std::uint64_t rank(std::span<const Index> subset) const {
    if (subset.size() != k_)
      throw UsageError("subset has " + std::to_string(subset.size()) + " elements, expected " +
                       std::to_string(k_));
    std::uint64_t r = 0;
    Index next = 0;
    for (std::size_t pos = 0; pos < k_; ++pos) {
      Index e = subset[pos];
      if (e >= n_) throw UsageError("subset element out of range");
      if (pos > 0 && e <= subset[pos - 1]) throw UsageError("subset must be strictly increasing");
      for (Index v = next; v < e; ++v) r += choose(n_ - 1 - v, k_ - 1 - pos);
      next = e + 1;
    }
    return r;
  }

 private:
  std::uint64_t choose(std::size_t a, std::size_t b) const { return table_[a * (k_ + 1) + b]; }

  std::size_t n_;
  std::size_t k_;
  std::uint64_t count_ = 0;
  std::vector<std::uint64_t> table_;
};

}  // namespace qnash
