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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qnash/errors.hpp"
#include "qnash/matrix.hpp"
#include "qnash/minimax.hpp"
#include "qnash/oracle.hpp"
#include "qnash/psne_random.hpp"
#include "qnash/strategy.hpp"

// Matrix families with known equilibria. Every generator works in exact
// arithmetic; float runs convert the finished matrix.

namespace qnash {

struct GroundTruth {
  std::optional<EquilibriumCertificate<Rational>> equilibrium;
  std::optional<std::size_t> support_size;
};

struct Instance {
  Matrix<Rational> matrix;
  GroundTruth truth;
};

enum class Family {
  kRandomUnique,
  kPlantedPsne,
  kThm1Lower,
  kIdentityPerturbed,
  kGap,
  kPlantedSupport,
};

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::kRandomUnique: return "random_unique";
    case Family::kPlantedPsne: return "planted_psne";
    case Family::kThm1Lower: return "thm1_lower";
    case Family::kIdentityPerturbed: return "identity_perturbed";
    case Family::kGap: return "gap";
    case Family::kPlantedSupport: return "planted_support";
  }
  return "?";
}

inline Family parse_family(std::string_view name) {
  for (Family f : {Family::kRandomUnique, Family::kPlantedPsne, Family::kThm1Lower,
                   Family::kIdentityPerturbed, Family::kGap, Family::kPlantedSupport})
    if (to_string(f) == name) return f;
  throw UsageError("unknown family '" + std::string(name) + "'");
}

/// m / 2^32 with m uniform in [0, 2^32): the exact stand-in for U(0,1).
inline Rational random_unit_rational(Rng& rng) {
  Rational r(mpz_class(static_cast<unsigned long>(uniform_below(rng, std::uint64_t{1} << 32))),
             mpz_class(1UL << 32));
  r.canonicalize();
  return r;
}

namespace detail {

inline EquilibriumCertificate<Rational> make_truth(std::vector<Rational> x, std::vector<Rational> y,
                                                   Rational value) {
  EquilibriumCertificate<Rational> c;
  c.row_strategy = MixedStrategy<Rational>::from_weights(std::move(x));
  c.col_strategy = MixedStrategy<Rational>::from_weights(std::move(y));
  c.value = std::move(value);
  c.verified = true;
  c.unique_claimed = true;
  return c;
}

inline std::vector<Index> random_subset(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<Index> all(n);
  for (Index i = 0; i < n; ++i) all[i] = i;
  // Partial Fisher-Yates.
  for (std::size_t a = 0; a < k; ++a) std::swap(all[a], all[a + uniform_below(rng, n - a)]);
  std::vector<Index> out(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// i.i.d. exact uniform entries; unique with overwhelming probability but
/// not certified. Callers audit with brute force at small n.
inline Matrix<Rational> gen_random_unique(std::size_t n, Rng& rng) {
  if (n == 0) throw UsageError("n must be positive");
  Matrix<Rational> m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = random_unit_rational(rng);
  return m;
}

/// Lower-bound construction over k columns: A[ihat][jhat] = 2, every column
/// beyond k is 3, A[i][i] = 1 for i < k, everything else 0. The unique
/// equilibrium plays rows ([k] + {ihat}) \ {jhat} and columns [k] with
/// weight 1/(k - 1/2) each, except half of that on ihat and on jhat.
/// Indices are 0-based: ihat in [k, n), jhat in [0, k), 1 <= k <= n/2.
inline Instance gen_thm1_lower(std::size_t n, std::size_t k, Index ihat, Index jhat) {
  if (k == 0 || 2 * k > n) throw UsageError("thm1_lower needs 1 <= k <= n/2");
  if (ihat < k || ihat >= n) throw UsageError("thm1_lower needs ihat outside the first k rows");
  if (jhat >= k) throw UsageError("thm1_lower needs jhat among the first k columns");
  Instance inst{Matrix<Rational>(n, n, Rational(0)), {}};
  auto& m = inst.matrix;
  for (Index i = 0; i < n; ++i)
    for (Index j = k; j < n; ++j) m(i, j) = 3;
  for (Index i = 0; i < k; ++i) m(i, i) = 1;
  m(ihat, jhat) = 2;

  const Rational full = Rational(2, 2 * k - 1);  // 1 / (k - 1/2)
  const Rational half = Rational(1, 2 * k - 1);
  std::vector<Rational> x(n, Rational(0)), y(n, Rational(0));
  for (Index i = 0; i < k; ++i) {
    if (i != jhat) x[i] = full;
    y[i] = i == jhat ? half : full;
  }
  x[ihat] = half;
  inst.truth.equilibrium = detail::make_truth(std::move(x), std::move(y), full);
  inst.truth.support_size = k;
  return inst;
}

/// I + E_{i1,j1} / 2 with its closed-form, fully mixed equilibrium.
inline Instance gen_identity_perturbed(std::size_t n, Index i1, Index j1) {
  if (n == 0) throw UsageError("n must be positive");
  if (i1 >= n || j1 >= n) throw UsageError("perturbed entry out of range");
  Instance inst{Matrix<Rational>(n, n, Rational(0)), {}};
  auto& m = inst.matrix;
  for (Index i = 0; i < n; ++i) m(i, i) = 1;
  m(i1, j1) += Rational(1, 2);

  std::vector<Rational> x(n), y(n);
  Rational value;
  if (i1 != j1) {
    value = Rational(2, 2 * n - 1);  // 1 / (n - 1/2)
    std::fill(x.begin(), x.end(), value);
    std::fill(y.begin(), y.end(), value);
    x[j1] = value / 2;
    y[i1] = value / 2;
  } else {
    value = Rational(3, 3 * n - 1);  // 1 / (n - 1/3)
    std::fill(x.begin(), x.end(), value);
    std::fill(y.begin(), y.end(), value);
    x[i1] = value * Rational(2, 3);
    y[i1] = value * Rational(2, 3);
  }
  inst.truth.equilibrium = detail::make_truth(std::move(x), std::move(y), value);
  inst.truth.support_size = n;
  return inst;
}

/// A[0][0] = 1, rest of row 0 is 1 + gap, rest of column 0 is 1 - gap, all
/// other entries 1. Unique saddle point at (0, 0) however small the gap.
inline Instance gen_gap_instance(std::size_t n, const Rational& gap) {
  if (n == 0) throw UsageError("n must be positive");
  if (!(gap > 0 && gap < 1)) throw UsageError("gap must lie in (0, 1)");
  Instance inst{Matrix<Rational>(n, n, Rational(1)), {}};
  auto& m = inst.matrix;
  for (Index j = 1; j < n; ++j) m(0, j) = 1 + gap;
  for (Index i = 1; i < n; ++i) m(i, 0) = 1 - gap;
  inst.truth.equilibrium = detail::make_truth(MixedStrategy<Rational>::pure(n, 0).weights(),
                                              MixedStrategy<Rational>::pure(n, 0).weights(),
                                              Rational(1));
  inst.truth.support_size = 1;
  return inst;
}

inline const Rational& default_plant_margin() {
  static const Rational margin(1, 256);
  return margin;
}

/// Uniform entries, then column jstar pushed below A[istar][jstar] - margin
/// and row istar above A[istar][jstar] + margin, so the strict saddle
/// condition holds by construction.
inline Instance gen_planted_psne(std::size_t n, Index istar, Index jstar, Rng& rng,
                                 const Rational& margin = default_plant_margin()) {
  if (istar >= n || jstar >= n) throw UsageError("planted cell out of range");
  if (!(margin > 0)) throw UsageError("plant margin must be positive");
  Instance inst{gen_random_unique(n, rng), {}};
  auto& m = inst.matrix;
  const Rational center = m(istar, jstar);
  for (Index i = 0; i < n; ++i)
    if (i != istar) m(i, jstar) = center - margin - random_unit_rational(rng);
  for (Index j = 0; j < n; ++j)
    if (j != jstar) m(istar, j) = center + margin + random_unit_rational(rng);
  inst.truth.equilibrium = detail::make_truth(MixedStrategy<Rational>::pure(n, istar).weights(),
                                              MixedStrategy<Rational>::pure(n, jstar).weights(),
                                              center);
  inst.truth.support_size = 1;
  return inst;
}

/// Equilibrium conditions with strict inequalities off the support, on the
/// full matrix: <e_i, A y> < v for i outside supp(x), <x, A e_j> > v for j
/// outside supp(y), equality on the supports.
inline bool strict_support_conditions(const Matrix<Rational>& m,
                                      const EquilibriumCertificate<Rational>& c) {
  const auto& x = c.row_strategy;
  const auto& y = c.col_strategy;
  if (x.support().size() != y.support().size()) return false;
  for (Index i = 0; i < m.rows(); ++i) {
    Rational ay(0);
    for (Index j : y.support()) ay += m(i, j) * y.weight(j);
    const bool in_support = sgn(x.weight(i)) != 0;
    if (in_support ? ay != c.value : !(ay < c.value)) return false;
  }
  for (Index j = 0; j < m.cols(); ++j) {
    Rational xa(0);
    for (Index i : x.support()) xa += x.weight(i) * m(i, j);
    const bool in_support = sgn(y.weight(j)) != 0;
    if (in_support ? xa != c.value : !(xa > c.value)) return false;
  }
  return true;
}

struct PlantedSupportOptions {
  Rational margin = default_plant_margin();
  /// Brute-force uniqueness audit up to this n; larger instances rely on the
  /// verification and strictness audit alone.
  std::size_t brute_force_max_n = 10;
  std::size_t max_attempts = 16;
};

/// Unique equilibrium with support size k at random positions.
///
/// A k x k core a*(I + E_{i1,j1}/2) + b (random a in [1/2, 1), b in [0, 1))
/// with its closed-form equilibrium is placed on random rows R and columns
/// C. Entries of columns C outside rows R are set below the value, so those
/// rows earn strictly less than the value against y*; entries of rows R
/// outside columns C are set above it, so those columns cost the column
/// player strictly more. The rest is uniform noise. Every instance is
/// audited (and regenerated from the same stream on failure).
inline Instance gen_planted_support(std::size_t n, std::size_t k, Rng& rng,
                                    const PlantedSupportOptions& options = {}) {
  if (k == 0 || k > n) throw UsageError("planted support size must lie in [1, n]");
  if (!(options.margin > 0)) throw UsageError("plant margin must be positive");
  for (std::size_t attempt = 0; attempt < options.max_attempts; ++attempt) {
    const Index i1 = uniform_below(rng, k);
    const Index j1 = uniform_below(rng, k);
    const Rational scale = (1 + random_unit_rational(rng)) / 2;
    const Rational offset = random_unit_rational(rng);
    const Instance core = gen_identity_perturbed(k, i1, j1);
    const auto& core_truth = *core.truth.equilibrium;
    const Rational value = scale * core_truth.value + offset;

    const auto rows = detail::random_subset(n, k, rng);
    const auto cols = detail::random_subset(n, k, rng);
    std::vector<bool> in_rows(n, false), in_cols(n, false);
    for (Index r : rows) in_rows[r] = true;
    for (Index c : cols) in_cols[c] = true;

    Instance inst{Matrix<Rational>(n, n), {}};
    auto& m = inst.matrix;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        if (in_rows[i] && in_cols[j]) continue;
        if (in_cols[j]) {
          m(i, j) = value - options.margin - random_unit_rational(rng);
        } else if (in_rows[i]) {
          m(i, j) = value + options.margin + random_unit_rational(rng);
        } else {
          m(i, j) = random_unit_rational(rng);
        }
      }
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) m(rows[a], cols[b]) = scale * core.matrix(a, b) + offset;

    std::vector<Rational> x(n, Rational(0)), y(n, Rational(0));
    for (std::size_t a = 0; a < k; ++a) {
      x[rows[a]] = core_truth.row_strategy.weight(a);
      y[cols[a]] = core_truth.col_strategy.weight(a);
    }
    inst.truth.equilibrium = detail::make_truth(std::move(x), std::move(y), value);
    inst.truth.support_size = k;

    bool ok = strict_support_conditions(m, *inst.truth.equilibrium);
    if (ok) {
      Oracle<Rational> oracle(m);
      ok = verify_equilibrium(oracle, inst.truth.equilibrium->row_strategy,
                              inst.truth.equilibrium->col_strategy);
    }
    if (ok && n <= options.brute_force_max_n) {
      try {
        auto bf = brute_force_unique_nash(m, BruteForceMode::kAudit);
        ok = bf.row_strategy == inst.truth.equilibrium->row_strategy &&
             bf.col_strategy == inst.truth.equilibrium->col_strategy;
      } catch (const NotUnique&) {
        ok = false;
      }
    }
    if (ok) return inst;
  }
  throw Error("planted support generation failed its audit repeatedly");
}

/// Parameters for `generate`. Row/column parameters are 0-based and drawn
/// from the seed when absent.
struct InstanceSpec {
  Family family = Family::kRandomUnique;
  std::size_t n = 1;
  std::size_t k = 1;
  std::optional<Index> row;  // ihat, i1 or istar
  std::optional<Index> col;  // jhat, j1 or jstar
  Rational gap = Rational(1, 4);
  std::uint64_t seed = 0;
  PlantedSupportOptions planted;
};

inline Instance generate(const InstanceSpec& spec) {
  Rng rng(spec.seed);
  const std::size_t n = spec.n;
  if (n == 0) throw UsageError("n must be positive");
  switch (spec.family) {
    case Family::kRandomUnique:
      return Instance{gen_random_unique(n, rng), {}};
    case Family::kPlantedPsne: {
      Index r = spec.row ? *spec.row : uniform_below(rng, n);
      Index c = spec.col ? *spec.col : uniform_below(rng, n);
      return gen_planted_psne(n, r, c, rng);
    }
    case Family::kThm1Lower: {
      if (spec.k == 0 || 2 * spec.k > n) throw UsageError("thm1_lower needs 1 <= k <= n/2");
      Index r = spec.row ? *spec.row : spec.k + uniform_below(rng, n - spec.k);
      Index c = spec.col ? *spec.col : uniform_below(rng, spec.k);
      return gen_thm1_lower(n, spec.k, r, c);
    }
    case Family::kIdentityPerturbed: {
      Index r = spec.row ? *spec.row : uniform_below(rng, n);
      Index c = spec.col ? *spec.col : uniform_below(rng, n);
      return gen_identity_perturbed(n, r, c);
    }
    case Family::kGap:
      return gen_gap_instance(n, spec.gap);
    case Family::kPlantedSupport:
      return gen_planted_support(n, spec.k, rng, spec.planted);
  }
  throw UsageError("unknown family");
}

/// Ground-truth sidecar document.
inline nlohmann::json ground_truth_json(const GroundTruth& truth) {
  nlohmann::json doc;
  if (truth.equilibrium) {
    doc["equilibrium"] = certificate_json(*truth.equilibrium);
  } else {
    doc["equilibrium"] = nullptr;
  }
  if (truth.support_size) {
    doc["support_size"] = *truth.support_size;
  } else {
    doc["support_size"] = nullptr;
  }
  return doc;
}

}  // namespace qnash
