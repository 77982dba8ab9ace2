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

// qnash: solve matrices from files, run seeded benchmark batches, generate
// instances, and turn benchmark CSVs into plot data.
//
// Exit codes: 0 success, 2 verification failure, 3 uniqueness violation,
// 4 parse or usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qnash/qnash.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 2;
constexpr int kExitUniqueness = 3;
constexpr int kExitUsage = 4;

using namespace qnash;

std::string default_mode() {
  const char* env = std::getenv("QNASH_MODE");
  return env && *env ? env : "exact";
}

Matrix<Rational> load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open matrix file '" + path + "'");
  return read_matrix(in);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  return out;
}

struct SolveArgs {
  std::string matrix;
  std::string algo = "nash";
  double delta = 0.1;
  std::uint64_t seed = 0;
  std::string mode = default_mode();
  std::optional<std::size_t> k;
};

// Pure-strategy algorithms: report the cell, then certify it with the full
// equilibrium check and the strict saddle condition.
template <class T>
int report_pure(Oracle<T>& oracle, Cell cell, std::size_t algo_queries) {
  const std::size_t n = oracle.rows();
  std::cout << "psne: (" << to_external(cell.row) << "," << to_external(cell.col) << ")\n";
  EquilibriumCertificate<T> cert;
  cert.row_strategy = MixedStrategy<T>::pure(n, cell.row);
  cert.col_strategy = MixedStrategy<T>::pure(n, cell.col);
  cert.value = oracle.query_entry(cell.row, cell.col);
  cert.verified = verify_equilibrium(oracle, cert.row_strategy, cert.col_strategy);
  cert.unique_claimed = cert.verified && check_unique_psne_condition(oracle, cell.row, cell.col);
  cert.queries_used = algo_queries;
  std::cout << certificate_json(cert).dump(2) << '\n';
  std::cout << "distinct_queries: " << algo_queries << '\n';
  std::cout << "verification_queries: " << oracle.distinct_query_count() - algo_queries << '\n';
  if (!cert.verified) {
    std::cerr << "qnash: no unique PSNE certified: the candidate is not an equilibrium\n";
    return kExitVerification;
  }
  if (!cert.unique_claimed) {
    std::cerr << "qnash: no unique PSNE certified: the saddle point is not strict\n";
    return kExitUniqueness;
  }
  return kExitOk;
}

template <class T>
int solve_typed(const SolveArgs& args, const Matrix<Rational>& exact) {
  Oracle<T> oracle(convert_matrix<T>(exact));
  Rng rng(args.seed);
  const Algorithm algo = parse_algorithm(args.algo);
  switch (algo) {
    case Algorithm::kPsne: {
      Cell c = find_psne(oracle, args.delta, rng).cell;
      return report_pure(oracle, c, oracle.distinct_query_count());
    }
    case Algorithm::kSwordfish: {
      Cell c = swordfish(oracle);
      return report_pure(oracle, c, oracle.distinct_query_count());
    }
    case Algorithm::kNash: {
      NashOptions opts;
      opts.delta = args.delta;
      opts.known_support = args.k;
      auto res = find_unique_nash(oracle, rng, opts);
      auto doc = certificate_json(res.certificate);
      doc["support_size"] = res.support_size;
      doc["query_breakdown"] = {{"probe", res.queries.probe},
                                {"pivot", res.queries.pivot},
                                {"support_solve", res.queries.support_solve},
                                {"verification", res.queries.verification}};
      std::cout << doc.dump(2) << '\n';
      std::cout << "distinct_queries: " << oracle.distinct_query_count() << '\n';
      return kExitOk;
    }
    case Algorithm::kBrute: {
      auto cert = brute_force_unique_nash(materialize(oracle), BruteForceMode::kAudit);
      cert.queries_used = oracle.distinct_query_count();
      std::cout << certificate_json(cert).dump(2) << '\n';
      std::cout << "distinct_queries: " << oracle.distinct_query_count() << '\n';
      return kExitOk;
    }
  }
  return kExitUsage;
}

int cmd_solve(const SolveArgs& args) {
  const Matrix<Rational> m = load_matrix(args.matrix);
  if (parse_mode(args.mode) == ArithmeticMode::kExact) return solve_typed<Rational>(args, m);
  return solve_typed<double>(args, m);
}

struct BenchArgs {
  std::string family;
  std::vector<std::size_t> ns;
  std::size_t k = 1;
  std::size_t trials = 1;
  double delta = 0.1;
  std::uint64_t seed0 = 0;
  std::string out;
  std::string algo;
  std::string mode = default_mode();
  bool known_k = false;
  bool timing = false;
  std::size_t workers = 0;
};

Algorithm default_algorithm(Family f) {
  switch (f) {
    case Family::kPlantedPsne:
    case Family::kGap: return Algorithm::kPsne;
    default: return Algorithm::kNash;
  }
}

int cmd_bench(const BenchArgs& args) {
  TrialConfig cfg;
  cfg.family = parse_family(args.family);
  cfg.algorithm = args.algo.empty() ? default_algorithm(cfg.family) : parse_algorithm(args.algo);
  cfg.k = args.k;
  cfg.delta = args.delta;
  cfg.mode = parse_mode(args.mode);
  cfg.known_support = args.known_k;
  cfg.timing = args.timing;
  check_delta(cfg.delta);
  if (args.trials == 0) throw UsageError("--trials must be positive");

  auto report = run_batch(cfg, args.ns, args.trials, args.seed0, args.workers);
  auto out = open_output(args.out);
  write_csv(out, report);
  write_report(std::cout, report);
  for (const auto& a : report.aggregates)
    if (a.bound_violations > 0) {
      std::cerr << "qnash: " << a.bound_violations << " trial(s) exceeded the query bound at n="
                << a.n << '\n';
      return kExitVerification;
    }
  return kExitOk;
}

struct GenArgs {
  std::string family;
  std::size_t n = 0;
  std::size_t k = 1;
  std::string gap = "1/4";
  std::uint64_t seed = 0;
  std::string out;
  std::optional<std::size_t> row;
  std::optional<std::size_t> col;
};

int cmd_gen(const GenArgs& args) {
  InstanceSpec spec;
  spec.family = parse_family(args.family);
  spec.n = args.n;
  spec.k = args.k;
  spec.gap = parse_rational(args.gap);
  spec.seed = args.seed;
  if (args.row) spec.row = from_external(*args.row);
  if (args.col) spec.col = from_external(*args.col);
  const Instance inst = generate(spec);
  {
    auto out = open_output(args.out);
    write_matrix(out, inst.matrix);
  }
  auto truth = open_output(args.out + ".truth.json");
  truth << ground_truth_json(inst.truth).dump(2) << '\n';
  std::cout << "wrote " << args.out << " and " << args.out << ".truth.json\n";
  return kExitOk;
}

int cmd_plotdata(const std::string& in_path, const std::string& out_path) {
  std::ifstream in(in_path);
  if (!in) throw UsageError("cannot open CSV '" + in_path + "'");
  auto series = plot_series(in);
  auto out = open_output(out_path);
  write_plot_series(out, series);
  std::cout << "wrote " << series.size() << " series point(s) to " << out_path << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Query-efficient exact Nash equilibria of zero-sum matrix games"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve a matrix file and print a certificate");
  s->add_option("--matrix", solve.matrix, "Matrix file")->required();
  s->add_option("--algo", solve.algo, "psne | swordfish | nash | brute")->capture_default_str();
  s->add_option("--delta", solve.delta, "Failure probability")->capture_default_str();
  s->add_option("--seed", solve.seed, "RNG seed")->capture_default_str();
  s->add_option("--mode", solve.mode, "exact | float (default from QNASH_MODE)")
      ->capture_default_str();
  s->add_option("--k", solve.k, "Known support size (nash only)");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run seeded trial batches and write a CSV");
  b->add_option("--family", bench.family, "Instance family")->required();
  b->add_option("--n", bench.ns, "Comma-separated sizes")->required()->delimiter(',');
  b->add_option("--k", bench.k, "Support size parameter")->capture_default_str();
  b->add_option("--trials", bench.trials, "Trials per size")->required();
  b->add_option("--delta", bench.delta, "Failure probability")->required();
  b->add_option("--seed0", bench.seed0, "First seed")->required();
  b->add_option("--out", bench.out, "CSV output path")->required();
  b->add_option("--algo", bench.algo, "psne | swordfish | nash | brute (default per family)");
  b->add_option("--mode", bench.mode, "exact | float")->capture_default_str();
  b->add_flag("--known-k", bench.known_k, "nash: search only support size k");
  b->add_flag("--timing", bench.timing, "Record wall time in the micros column");
  b->add_option("--workers", bench.workers, "Worker threads (0 = hardware)");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate an instance and its ground truth");
  g->add_option("--family", gen.family, "Instance family")->required();
  g->add_option("--n", gen.n, "Size")->required();
  g->add_option("--k", gen.k, "Support size parameter")->capture_default_str();
  g->add_option("--delta-gap", gen.gap, "Gap of the gap family (rational)")->capture_default_str();
  g->add_option("--seed", gen.seed, "Seed")->required();
  g->add_option("--out", gen.out, "Matrix output path")->required();
  g->add_option("--row", gen.row, "1-based planted or perturbed row");
  g->add_option("--col", gen.col, "1-based planted or perturbed column");

  std::string plot_in, plot_out;
  auto* p = app.add_subcommand("plotdata", "Summarize a bench CSV as tab-separated series");
  p->add_option("--in", plot_in, "Bench CSV")->required();
  p->add_option("--out", plot_out, "Output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*s) return cmd_solve(solve);
    if (*b) return cmd_bench(bench);
    if (*g) return cmd_gen(gen);
    if (*p) return cmd_plotdata(plot_in, plot_out);
  } catch (const UsageError& e) {
    std::cerr << "qnash: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NotUnique& e) {
    std::cerr << "qnash: uniqueness violated: " << e.what() << '\n';
    return kExitUniqueness;
  } catch (const EmptyCandidates& e) {
    std::cerr << "qnash: no unique PSNE certified: " << e.what() << '\n';
    return kExitUniqueness;
  } catch (const Exhausted& e) {
    std::cerr << "qnash: verification failed: " << e.what() << '\n';
    return kExitVerification;
  } catch (const std::exception& e) {
    std::cerr << "qnash: " << e.what() << '\n';
    return kExitVerification;
  }
  return kExitUsage;
}
