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
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "qnash/errors.hpp"
#include "qnash/instances.hpp"
#include "qnash/lifted.hpp"
#include "qnash/minimax.hpp"
#include "qnash/oracle.hpp"
#include "qnash/psne_random.hpp"
#include "qnash/swordfish.hpp"

namespace qnash {

enum class Algorithm { kPsne, kSwordfish, kNash, kBrute };

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kPsne: return "psne";
    case Algorithm::kSwordfish: return "swordfish";
    case Algorithm::kNash: return "nash";
    case Algorithm::kBrute: return "brute";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kPsne, Algorithm::kSwordfish, Algorithm::kNash, Algorithm::kBrute})
    if (to_string(a) == name) return a;
  throw UsageError("unknown algorithm '" + std::string(name) + "' (expected psne|swordfish|nash|brute)");
}

/// Algorithm seeds are derived from the instance seed so one number fixes a
/// trial.
inline Rng algorithm_rng(std::uint64_t seed) { return Rng(seed ^ 0x9E3779B97F4A7C15ULL); }

/// Worst-case distinct-query bound of an algorithm, where one is stated.
inline std::optional<double> query_bound(Algorithm a, std::size_t n, double delta) {
  switch (a) {
    case Algorithm::kPsne: return psne_query_bound(n, delta);
    case Algorithm::kSwordfish: return static_cast<double>(swordfish_query_bound(n));
    case Algorithm::kBrute: return static_cast<double>(n) * static_cast<double>(n);
    case Algorithm::kNash: return std::nullopt;
  }
  return std::nullopt;
}

inline std::string format_double(double v) { return ScalarOps<double>::format(v); }

/// 64-bit FNV-1a, hex encoded.
inline std::string digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct TrialConfig {
  Family family = Family::kPlantedPsne;
  Algorithm algorithm = Algorithm::kPsne;
  std::size_t n = 8;
  std::size_t k = 1;
  double delta = 0.1;
  ArithmeticMode mode = ArithmeticMode::kExact;
  bool known_support = false;  // nash: search only support size k
  bool timing = false;         // record wall time (breaks byte-stable output)
  std::size_t brute_force_max_n = 10;
};

struct TrialRecord {
  Family family = Family::kPlantedPsne;
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::kPsne;
  bool success = false;
  std::size_t queries = 0;
  std::uint64_t micros = 0;
  double delta = 0;
  std::string certificate_digest;
  std::vector<Cell> ledger;  // first-query order, for replay checks
};

namespace detail {

template <class T>
TrialRecord run_trial_typed(const TrialConfig& cfg, std::uint64_t seed, const Instance& inst) {
  TrialRecord rec;
  rec.family = cfg.family;
  rec.n = cfg.n;
  rec.k = cfg.k;
  rec.seed = seed;
  rec.algorithm = cfg.algorithm;
  rec.delta = cfg.delta;

  const Matrix<T> matrix = convert_matrix<T>(inst.matrix);
  Oracle<T> oracle(matrix);
  Rng rng = algorithm_rng(seed);
  const auto& truth = inst.truth.equilibrium;

  auto pure_ok = [&](Cell c) {
    if (truth)
      return sgn(truth->row_strategy.weight(c.row)) != 0 &&
             truth->row_strategy.support().size() == 1 &&
             sgn(truth->col_strategy.weight(c.col)) != 0 &&
             truth->col_strategy.support().size() == 1;
    return check_unique_psne_condition(matrix, c.row, c.col);
  };
  auto cert_ok = [&](const EquilibriumCertificate<T>& c) {
    if (!truth) return c.verified;
    for (Index i = 0; i < cfg.n; ++i) {
      if (!ScalarOps<T>::eq(c.row_strategy.weight(i),
                            ScalarOps<T>::from_rational(truth->row_strategy.weight(i))))
        return false;
      if (!ScalarOps<T>::eq(c.col_strategy.weight(i),
                            ScalarOps<T>::from_rational(truth->col_strategy.weight(i))))
        return false;
    }
    return true;
  };

  std::string summary;
  const auto start = std::chrono::steady_clock::now();
  switch (cfg.algorithm) {
    case Algorithm::kPsne: {
      Cell c = find_psne(oracle, cfg.delta, rng).cell;
      rec.success = pure_ok(c);
      summary = std::to_string(c.row) + "," + std::to_string(c.col);
      break;
    }
    case Algorithm::kSwordfish: {
      try {
        Cell c = swordfish(oracle);
        rec.success = pure_ok(c);
        summary = std::to_string(c.row) + "," + std::to_string(c.col);
      } catch (const EmptyCandidates&) {
        summary = "empty";
      }
      break;
    }
    case Algorithm::kNash: {
      NashOptions opts;
      opts.delta = cfg.delta;
      if (cfg.known_support) opts.known_support = cfg.k;
      try {
        auto res = find_unique_nash(oracle, rng, opts);
        rec.success = cert_ok(res.certificate);
        summary = certificate_json(res.certificate).dump();
      } catch (const Exhausted&) {
        summary = "exhausted";
      }
      break;
    }
    case Algorithm::kBrute: {
      try {
        auto cert = brute_force_unique_nash(materialize(oracle), BruteForceMode::kAudit);
        rec.success = cert_ok(cert);
        summary = certificate_json(cert).dump();
      } catch (const NotUnique&) {
        summary = "not_unique";
      }
      break;
    }
  }
  if (cfg.timing)
    rec.micros = static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::microseconds>(
                                                std::chrono::steady_clock::now() - start)
                                                .count());
  rec.queries = oracle.distinct_query_count();
  rec.ledger = oracle.ledger().first_queries();
  rec.certificate_digest = digest(summary);
  return rec;
}

}  // namespace detail

inline InstanceSpec instance_spec(const TrialConfig& cfg, std::uint64_t seed) {
  InstanceSpec spec;
  spec.family = cfg.family;
  spec.n = cfg.n;
  spec.k = cfg.k;
  spec.seed = seed;
  spec.planted.brute_force_max_n = cfg.brute_force_max_n;
  return spec;
}

/// One trial: generate the instance from `seed`, run the algorithm on a
/// fresh oracle, record the ledger.
inline TrialRecord run_trial(const TrialConfig& cfg, std::uint64_t seed) {
  const Instance inst = generate(instance_spec(cfg, seed));
  if (cfg.mode == ArithmeticMode::kExact) return detail::run_trial_typed<Rational>(cfg, seed, inst);
  return detail::run_trial_typed<double>(cfg, seed, inst);
}

/// Runs seeds seed0 .. seed0+trials-1 on up to `workers` threads. Records are
/// returned in seed order regardless of scheduling.
inline std::vector<TrialRecord> run_trials(const TrialConfig& cfg, std::uint64_t seed0,
                                           std::size_t trials, std::size_t workers = 0) {
  std::vector<TrialRecord> out(trials);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(trials, 1));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](std::size_t w) {
    try {
      for (std::size_t t; (t = next.fetch_add(1)) < trials;) out[t] = run_trial(cfg, seed0 + t);
    } catch (...) {
      errors[w] = std::current_exception();
      next.store(trials);
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// Wilson score interval for a binomial proportion.
inline std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials,
                                                 double z = 1.96) {
  if (trials == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2 * nn)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

/// Nearest-rank quantile of an unsorted sample.
inline double quantile(std::vector<double> values, double q) {
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  if (q <= 0) return values.front();
  std::size_t rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

/// Median with the midpoint convention for even sizes.
inline double median(std::vector<double> values) {
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 ? values[m] : (values[m - 1] + values[m]) / 2;
}

struct BatchAggregate {
  Family family = Family::kPlantedPsne;
  Algorithm algorithm = Algorithm::kPsne;
  std::size_t n = 0;
  std::size_t k = 0;
  double delta = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_rate = 0;
  double wilson_lo = 0;
  double wilson_hi = 0;
  double median_queries = 0;
  double p95_queries = 0;
  std::size_t max_queries = 0;
  std::uint64_t total_micros = 0;
  std::optional<double> bound;
  std::size_t bound_violations = 0;
};

struct BatchReport {
  std::vector<TrialRecord> records;
  std::vector<BatchAggregate> aggregates;  // one per (family, n), in run order
};

inline BatchAggregate aggregate(std::span<const TrialRecord> records) {
  BatchAggregate agg;
  if (records.empty()) return agg;
  agg.family = records.front().family;
  agg.algorithm = records.front().algorithm;
  agg.n = records.front().n;
  agg.k = records.front().k;
  agg.delta = records.front().delta;
  agg.trials = records.size();
  agg.bound = query_bound(agg.algorithm, agg.n, agg.delta);
  std::vector<double> q;
  for (const auto& r : records) {
    agg.successes += r.success ? 1 : 0;
    q.push_back(static_cast<double>(r.queries));
    agg.max_queries = std::max(agg.max_queries, r.queries);
    agg.total_micros += r.micros;
    if (agg.bound && static_cast<double>(r.queries) > *agg.bound) ++agg.bound_violations;
  }
  agg.success_rate = static_cast<double>(agg.successes) / static_cast<double>(agg.trials);
  std::tie(agg.wilson_lo, agg.wilson_hi) = wilson_interval(agg.successes, agg.trials);
  agg.median_queries = median(q);
  agg.p95_queries = quantile(q, 0.95);
  return agg;
}

inline BatchReport run_batch(TrialConfig cfg, std::span<const std::size_t> ns, std::size_t trials,
                             std::uint64_t seed0, std::size_t workers = 0) {
  BatchReport report;
  for (std::size_t n : ns) {
    cfg.n = n;
    auto recs = run_trials(cfg, seed0, trials, workers);
    report.aggregates.push_back(aggregate(recs));
    report.records.insert(report.records.end(), std::make_move_iterator(recs.begin()),
                          std::make_move_iterator(recs.end()));
  }
  return report;
}

inline constexpr std::string_view kCsvHeader = "family,n,k,seed,algo,success,queries,micros,delta";

/// Trial rows, each (family, n) block followed by an aggregate row whose
/// seed column is "all", success column the success rate and queries column
/// the maximum.
inline void write_csv(std::ostream& out, const BatchReport& report) {
  out << kCsvHeader << '\n';
  std::size_t cursor = 0;
  for (const auto& agg : report.aggregates) {
    for (std::size_t t = 0; t < agg.trials; ++t, ++cursor) {
      const auto& r = report.records[cursor];
      out << to_string(r.family) << ',' << r.n << ',' << r.k << ',' << r.seed << ','
          << to_string(r.algorithm) << ',' << (r.success ? 1 : 0) << ',' << r.queries << ','
          << r.micros << ',' << format_double(r.delta) << '\n';
    }
    out << to_string(agg.family) << ',' << agg.n << ',' << agg.k << ",all,"
        << to_string(agg.algorithm) << ',' << format_double(agg.success_rate) << ','
        << agg.max_queries << ',' << agg.total_micros << ',' << format_double(agg.delta) << '\n';
  }
}

inline void write_report(std::ostream& out, const BatchReport& report) {
  for (const auto& a : report.aggregates) {
    out << to_string(a.family) << " n=" << a.n << " k=" << a.k << " algo=" << to_string(a.algorithm)
        << " trials=" << a.trials << " success=" << format_double(a.success_rate) << " ["
        << format_double(a.wilson_lo) << ", " << format_double(a.wilson_hi) << "]"
        << " median_q=" << format_double(a.median_queries)
        << " p95_q=" << format_double(a.p95_queries) << " max_q=" << a.max_queries;
    if (a.bound) out << " bound=" << format_double(*a.bound);
    out << " violations=" << a.bound_violations << '\n';
  }
}

struct PlotPoint {
  std::string family;
  std::string algorithm;
  std::size_t n = 0;
  std::size_t k = 0;
  double delta = 0;
  double median_queries = 0;
  double p95_queries = 0;
  std::optional<double> bound;
};

/// Reads a bench CSV and summarizes trial rows per (family, algo, n, k,
/// delta). Throws ParseError on a schema mismatch. An empty file yields an
/// empty series.
inline std::vector<PlotPoint> plot_series(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return {};
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.empty()) return {};
  if (line != kCsvHeader) throw ParseError("unexpected CSV header: '" + line + "'");

  using Key = std::tuple<std::string, std::string, std::size_t, std::size_t, double>;
  std::map<Key, std::vector<double>> groups;
  std::vector<Key> order;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 9) throw ParseError("line " + std::to_string(line_no) + ": expected 9 fields");
    if (f[3] == "all") continue;
    try {
      parse_family(f[0]);
      parse_algorithm(f[4]);
      Key key{f[0], f[4], std::stoull(f[1]), std::stoull(f[2]), std::stod(f[8])};
      auto [it, inserted] = groups.try_emplace(key);
      if (inserted) order.push_back(key);
      it->second.push_back(static_cast<double>(std::stoull(f[6])));
    } catch (const std::logic_error&) {
      throw ParseError("line " + std::to_string(line_no) + ": malformed field");
    } catch (const UsageError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  std::vector<PlotPoint> out;
  for (const auto& key : order) {
    const auto& q = groups[key];
    PlotPoint p;
    std::tie(p.family, p.algorithm, p.n, p.k, p.delta) = key;
    p.median_queries = median(q);
    p.p95_queries = quantile(q, 0.95);
    p.bound = query_bound(parse_algorithm(p.algorithm), p.n, p.delta);
    out.push_back(std::move(p));
  }
  return out;
}

inline void write_plot_series(std::ostream& out, const std::vector<PlotPoint>& series) {
  out << "family\talgo\tn\tk\tdelta\tmedian_queries\tp95_queries\tbound\n";
  for (const auto& p : series)
    out << p.family << '\t' << p.algorithm << '\t' << p.n << '\t' << p.k << '\t'
        << format_double(p.delta) << '\t' << format_double(p.median_queries) << '\t'
        << format_double(p.p95_queries) << '\t' << (p.bound ? format_double(*p.bound) : "NA")
        << '\n';
}

}  // namespace qnash
