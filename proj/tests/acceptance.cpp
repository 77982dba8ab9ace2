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

// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
// Usage: qnash_acceptance [name ...] runs only the named criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qnash/qnash.hpp"
#include "reference_oracles.hpp"

namespace {

using namespace qnash;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 3) {
  std::ostringstream os;
  os.precision(digits);
  os << std::fixed << v;
  return os.str();
}

// Planted-PSNE instances decide the planted cell from the seed.
Instance planted_psne(std::size_t n, std::uint64_t seed) {
  InstanceSpec spec;
  spec.family = Family::kPlantedPsne;
  spec.n = n;
  spec.seed = seed;
  return generate(spec);
}

Cell planted_cell(const Instance& inst) {
  const auto& e = *inst.truth.equilibrium;
  return {e.row_strategy.support()[0], e.col_strategy.support()[0]};
}

Outcome swordfish_exactness() {
  const auto t0 = Clock::now();
  std::size_t failures = 0, over = 0, trials = 0, worst_slack = SIZE_MAX;
  for (std::size_t n : {2u, 4u, 8u, 16u, 32u, 64u}) {
    for (std::uint64_t seed = 0; seed < 1000; ++seed, ++trials) {
      const Instance inst = planted_psne(n, seed);
      Oracle<Rational> o(inst.matrix);
      Cell c{};
      try {
        c = swordfish(o);
      } catch (const Error&) {
        ++failures;
        continue;
      }
      if (c != planted_cell(inst)) ++failures;
      const std::size_t q = o.distinct_query_count();
      if (q > swordfish_query_bound(n)) ++over;
      else worst_slack = std::min(worst_slack, swordfish_query_bound(n) - q);
    }
  }
  const double secs = seconds_since(t0);
  return {failures == 0 && over == 0 && secs < 10.0,
          std::to_string(trials) + " trials, " + std::to_string(failures) + " wrong, " +
              std::to_string(over) + " over 3n-2 (min slack " + std::to_string(worst_slack) +
              "), " + fmt(secs, 1) + " s (limit 10 s)"};
}

Outcome find_psne_budget() {
  const auto t0 = Clock::now();
  const std::size_t n = 128, trials = 200;
  const double delta = 0.1, bound = psne_query_bound(n, delta);
  std::size_t hits = 0, over = 0, max_q = 0;
  for (std::uint64_t seed = 0; seed < trials; ++seed) {
    const Instance inst = planted_psne(n, seed);
    Oracle<Rational> o(inst.matrix);
    Rng rng(seed + 1'000'000);
    const Cell c = find_psne(o, delta, rng).cell;
    if (c == planted_cell(inst)) ++hits;
    const std::size_t q = o.distinct_query_count();
    max_q = std::max(max_q, q);
    if (static_cast<double>(q) > bound) ++over;
  }
  const double secs = seconds_since(t0);
  const double rate = static_cast<double>(hits) / trials;
  return {rate >= 0.90 && over == 0 && secs < 30.0,
          "success " + fmt(rate) + " (>= 0.90), max queries " + std::to_string(max_q) +
              " vs bound " + fmt(bound, 0) + ", " + std::to_string(over) + " over, " +
              fmt(secs, 1) + " s (limit 30 s)"};
}

Outcome gap_independence() {
  const std::size_t n = 64;
  const Matrix<Rational> wide = gen_gap_instance(n, Rational(1, 4)).matrix;
  const Matrix<Rational> narrow = gen_gap_instance(n, Rational(1, 1 << 20)).matrix;
  std::size_t mismatches = 0, runs = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed, ++runs) {
    Oracle<Rational> a(wide), b(narrow);
    Rng ra(seed), rb(seed);
    const Cell ca = find_psne(a, 0.1, ra).cell;
    const Cell cb = find_psne(b, 0.1, rb).cell;
    if (ca != cb || a.ledger().first_queries() != b.ledger().first_queries()) ++mismatches;
  }
  {
    Oracle<Rational> a(wide), b(narrow);
    ++runs;
    if (swordfish(a) != swordfish(b) || a.ledger().first_queries() != b.ledger().first_queries())
      ++mismatches;
  }
  return {mismatches == 0, std::to_string(runs) + " paired runs (find_psne x50, swordfish), " +
                               std::to_string(mismatches) + " ledger or output mismatches"};
}

Outcome closed_forms() {
  struct Case {
    Matrix<Rational> m;
    std::vector<Rational> x, y;
    Rational v;
  };
  const std::vector<Case> cases = {
      {gen_identity_perturbed(3, 0, 1).matrix,
       {Rational(2, 5), Rational(1, 5), Rational(2, 5)},
       {Rational(1, 5), Rational(2, 5), Rational(2, 5)},
       Rational(2, 5)},
      {gen_thm1_lower(4, 2, 2, 0).matrix,
       {Rational(0), Rational(2, 3), Rational(1, 3), Rational(0)},
       {Rational(1, 3), Rational(2, 3), Rational(0), Rational(0)},
       Rational(2, 3)}};
  std::string detail;
  bool pass = true;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    std::size_t exact = 0, wrong_certified = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Oracle<Rational> o(cases[c].m);
      Rng rng(seed);
      try {
        const auto r = find_unique_nash(o, rng, NashOptions{});
        const bool match = r.certificate.row_strategy.weights() == cases[c].x &&
                           r.certificate.col_strategy.weights() == cases[c].y &&
                           r.certificate.value == cases[c].v;
        if (match) ++exact;
        else if (r.certificate.verified) ++wrong_certified;
      } catch (const Exhausted&) {
      }
    }
    pass = pass && exact >= 95 && wrong_certified == 0;
    detail += std::string(c == 0 ? "identity n=3: " : "; lower-bound n=4,k=2: ") +
              std::to_string(exact) + "/100 exact";
  }
  return {pass, detail + " (need >= 95 each)"};
}

// Column payoffs x'A and row payoffs Ay.
std::vector<Rational> col_payoffs(const Matrix<Rational>& m, const std::vector<Rational>& x) {
  std::vector<Rational> out(m.cols(), Rational(0));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out[j] += x[i] * m(i, j);
  return out;
}

std::vector<Rational> row_payoffs(const Matrix<Rational>& m, const std::vector<Rational>& y) {
  std::vector<Rational> out(m.rows(), Rational(0));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out[i] += m(i, j) * y[j];
  return out;
}

std::vector<Index> complement_superset(const std::vector<Index>& base, std::size_t n,
                                       std::uint64_t mask) {
  std::vector<Index> out = base;
  std::size_t bit = 0;
  for (Index i = 0; i < n; ++i) {
    if (std::binary_search(base.begin(), base.end(), i)) continue;
    if (mask >> bit++ & 1) out.push_back(i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rational> restrict(const std::vector<Rational>& w, const std::vector<Index>& idx) {
  std::vector<Rational> out;
  for (Index i : idx) out.push_back(w[i]);
  return out;
}

Outcome lemma_suites() {
  const auto t0 = Clock::now();
  Rng gen(2024);
  std::size_t violations[6] = {0, 0, 0, 0, 0, 0};
  std::size_t superset_pairs = 0, sampled_unique = 0, psne_instances = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + t % 6;
    const Matrix<Rational> a = gen_random_unique(n, gen);
    const auto eq = brute_force_unique_nash(a, BruteForceMode::kAudit);
    const auto& x = eq.row_strategy.weights();
    const auto& y = eq.col_strategy.weights();
    const auto& sx = eq.row_strategy.support();
    const auto& sy = eq.col_strategy.support();
    const Rational& v = eq.value;
    if (!testing::reference_is_equilibrium(a, x, y)) ++violations[0];

    // Equal support sizes, indifference on supports, strict loss off them.
    bool l1 = sx.size() == sy.size();
    const auto ay = row_payoffs(a, y);
    const auto xa = col_payoffs(a, x);
    for (Index i = 0; i < n; ++i) {
      const bool in = std::binary_search(sx.begin(), sx.end(), i);
      l1 = l1 && (in ? ay[i] == v : ay[i] < v);
    }
    for (Index j = 0; j < n; ++j) {
      const bool in = std::binary_search(sy.begin(), sy.end(), j);
      l1 = l1 && (in ? xa[j] == v : xa[j] > v);
    }
    if (!l1) ++violations[1];

    // Every superset pair keeps the restricted pair as an equilibrium with
    // the same value; one sampled pair is brute-force audited for uniqueness.
    const std::size_t free_rows = n - sx.size(), free_cols = n - sy.size();
    const std::uint64_t sample_r = uniform_below(gen, std::uint64_t{1} << free_rows);
    const std::uint64_t sample_c = uniform_below(gen, std::uint64_t{1} << free_cols);
    for (std::uint64_t mr = 0; mr < (std::uint64_t{1} << free_rows); ++mr)
      for (std::uint64_t mc = 0; mc < (std::uint64_t{1} << free_cols); ++mc) {
        ++superset_pairs;
        const auto rows = complement_superset(sx, n, mr);
        const auto cols = complement_superset(sy, n, mc);
        const Matrix<Rational> sub = a.submatrix(rows, cols);
        const auto xr = restrict(x, rows), yc = restrict(y, cols);
        bool ok = is_equilibrium<Rational>(sub, xr, yc) &&
                  testing::reference_payoff(sub, xr, yc) == v;
        if (mr == sample_r && mc == sample_c) {
          ++sampled_unique;
          try {
            const auto sub_eq = brute_force_unique_nash(sub, BruteForceMode::kAudit);
            ok = ok && sub_eq.row_strategy.weights() == xr &&
                 sub_eq.col_strategy.weights() == yc && solve_value(sub) == v;
          } catch (const Error&) {
            ok = false;
          }
        }
        if (!ok) ++violations[2];
      }

    // The strict saddle predicate identifies exactly the pure equilibrium.
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (check_unique_psne_condition(a, i, j) &&
            !(sx == std::vector<Index>{i} && sy == std::vector<Index>{j}))
          ++violations[3];
    if (sx.size() == 1) {
      ++psne_instances;
      if (!check_unique_psne_condition(a, sx[0], sy[0])) ++violations[3];
    }

    // Wrong k-row supports against the true columns lose value; wrong
    // k-column supports against the true rows gain value.
    const std::size_t k = sx.size();
    for_each_subset(n, k, [&](std::span<const Index> rows) {
      if (std::vector<Index>(rows.begin(), rows.end()) == sx) return;
      if (!(solve_value(a.submatrix(rows, sy)) < v)) ++violations[4];
    });
    for_each_subset(n, k, [&](std::span<const Index> cols) {
      if (std::vector<Index>(cols.begin(), cols.end()) == sy) return;
      if (!(solve_value(a.submatrix(sx, cols)) > v)) ++violations[5];
    });
  }
  const double secs = seconds_since(t0);
  std::size_t total = 0;
  for (auto c : violations) total += c;
  return {total == 0 && secs < 60.0,
          "500 instances (" + std::to_string(psne_instances) + " pure), " +
              std::to_string(superset_pairs) + " superset pairs (" +
              std::to_string(sampled_unique) + " uniqueness-audited); violations: equilibrium " +
              std::to_string(violations[0]) + ", L1 " + std::to_string(violations[1]) + ", L2 " +
              std::to_string(violations[2]) + ", L3 " + std::to_string(violations[3]) + ", L4 " +
              std::to_string(violations[4]) + ", L5 " + std::to_string(violations[5]) + "; " +
              fmt(secs, 1) + " s (limit 60 s)"};
}

Outcome lifted_psne_structure() {
  Rng gen(77);
  std::size_t violations = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 7;
    const std::size_t k = std::min<std::size_t>(1 + t % 3, n);
    const Instance inst = gen_planted_support(n, k, gen);
    const auto& e = *inst.truth.equilibrium;
    const SubsetCodec codec(n, k);
    const Matrix<Rational> lifted = materialize_lifted(inst.matrix, k);
    const Index is = static_cast<Index>(codec.rank(e.row_strategy.support()));
    const Index js = static_cast<Index>(codec.rank(e.col_strategy.support()));
    if (!check_unique_psne_condition(lifted, is, js) || lifted(is, js) != e.value) ++violations;
  }
  return {violations == 0,
          "100 planted-support instances (n 2..8, k 1..3), " + std::to_string(violations) +
              " violations"};
}

Outcome lower_bound_families() {
  std::size_t not_unique = 0, wrong = 0, duplicates = 0, count = 0;
  auto audit = [&](const std::vector<Instance>& family) {
    std::set<std::pair<std::vector<Rational>, std::vector<Rational>>> seen;
    for (const auto& inst : family) {
      ++count;
      try {
        const auto bf = brute_force_unique_nash(inst.matrix, BruteForceMode::kAudit);
        if (bf.row_strategy != inst.truth.equilibrium->row_strategy ||
            bf.col_strategy != inst.truth.equilibrium->col_strategy)
          ++wrong;
        if (!seen.emplace(bf.row_strategy.weights(), bf.col_strategy.weights()).second)
          ++duplicates;
      } catch (const NotUnique&) {
        ++not_unique;
      }
    }
  };
  for (std::size_t k : {2u, 3u}) {
    std::vector<Instance> family;
    for (Index ihat = k; ihat < 8; ++ihat)
      for (Index jhat = 0; jhat < k; ++jhat) family.push_back(gen_thm1_lower(8, k, ihat, jhat));
    audit(family);
  }
  std::vector<Instance> identity;
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 6; ++j) identity.push_back(gen_identity_perturbed(6, i, j));
  audit(identity);
  return {not_unique == 0 && wrong == 0 && duplicates == 0,
          std::to_string(count) + " instances (12 + 15 lower-bound, 36 identity): " +
              std::to_string(not_unique) + " not unique, " + std::to_string(wrong) +
              " differ from the closed form, " + std::to_string(duplicates) +
              " repeated equilibria"};
}

Outcome subquadratic_trend() {
  const auto t0 = Clock::now();
  TrialConfig cfg;
  cfg.family = Family::kPlantedSupport;
  cfg.algorithm = Algorithm::kNash;
  cfg.k = 2;
  cfg.delta = 0.1;
  cfg.known_support = true;
  std::vector<double> ratios;
  std::string detail;
  for (std::size_t n : {16u, 32u, 64u}) {
    cfg.n = n;
    const auto records = run_trials(cfg, 0, 50);
    std::vector<double> queries;
    for (const auto& r : records) queries.push_back(static_cast<double>(r.queries));
    const double med = median(queries);
    ratios.push_back(med / static_cast<double>(n * n));
    detail += "n=" + std::to_string(n) + " median " + fmt(med, 1) + " (" +
              fmt(ratios.back(), 4) + " n^2); ";
  }
  const double secs = seconds_since(t0);
  const bool decreasing = ratios[0] > ratios[1] && ratios[1] > ratios[2];
  return {decreasing && secs < 300.0, detail + fmt(secs, 1) + " s (limit 300 s)"};
}

Outcome ledger_soundness() {
  Rng gen(99);
  std::size_t verify_over = 0, batch_over = 0, verify_runs = 0, batch_runs = 0;
  for (int t = 0; t < 300; ++t, ++verify_runs) {
    const std::size_t n = 1 + uniform_below(gen, 12);
    const Matrix<Rational> a = gen_random_unique(n, gen);
    auto random_strategy = [&](std::size_t s) {
      const auto support = detail::random_subset(n, s, gen);
      std::vector<Rational> w(n, Rational(0));
      for (Index i : support) w[i] = Rational(1, static_cast<long>(s));
      return MixedStrategy<Rational>::from_weights(w);
    };
    const std::size_t s = 1 + uniform_below(gen, n);
    Oracle<Rational> o(a);
    verify_equilibrium(o, random_strategy(s), random_strategy(s));
    if (o.distinct_query_count() > 2 * n * s) ++verify_over;
  }
  // Verification inside the solver on planted instances.
  for (int t = 0; t < 50; ++t, ++verify_runs) {
    const std::size_t n = 4 + uniform_below(gen, 12), k = 1 + uniform_below(gen, 3);
    const Instance inst = gen_planted_support(n, k, gen);
    const auto& e = *inst.truth.equilibrium;
    Oracle<Rational> o(inst.matrix);
    if (!verify_equilibrium(o, e.row_strategy, e.col_strategy)) ++verify_over;
    if (o.distinct_query_count() > 2 * n * k) ++verify_over;
  }
  for (int t = 0; t < 100; ++t, ++batch_runs) {
    const std::size_t n = 3 + uniform_below(gen, 6);
    const std::size_t k = 1 + uniform_below(gen, std::min<std::size_t>(3, n));
    const Matrix<Rational> a = gen_random_unique(n, gen);
    Oracle<Rational> rows_base(a), cols_base(a);
    LiftedOracle<Rational> rows(rows_base, k), cols(cols_base, k);
    std::set<Index> chosen;
    const std::size_t picks = 1 + uniform_below(gen, 4);
    for (std::size_t p = 0; p < picks; ++p) chosen.insert(uniform_below(gen, rows.rows()));
    for (Index i : chosen)
      for (Index j = 0; j < rows.cols(); ++j) rows.query_entry(i, j);
    for (Index j : chosen)
      for (Index i = 0; i < cols.rows(); ++i) cols.query_entry(i, j);
    if (rows_base.distinct_query_count() > k * n * chosen.size()) ++batch_over;
    if (cols_base.distinct_query_count() > k * n * chosen.size()) ++batch_over;
  }
  return {verify_over == 0 && batch_over == 0,
          std::to_string(verify_runs) + " verifications, " + std::to_string(verify_over) +
              " over 2ns; " + std::to_string(batch_runs) + " lifted batch pairs, " +
              std::to_string(batch_over) + " over k*n*|X|"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"swordfish_exactness", swordfish_exactness},
      {"find_psne_budget", find_psne_budget},
      {"gap_independence", gap_independence},
      {"closed_forms", closed_forms},
      {"lemma_suites", lemma_suites},
      {"lifted_psne_structure", lifted_psne_structure},
      {"lower_bound_families", lower_bound_families},
      {"subquadratic_trend", subquadratic_trend},
      {"ledger_soundness", ledger_soundness},
  };
  const std::set<std::string> only(argv + 1, argv + argc);
  bool all = true;
  for (const auto& [name, run] : criteria) {
    if (!only.empty() && !only.count(name)) continue;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
