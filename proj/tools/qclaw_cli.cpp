#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qclaw/claw_finders.hpp"
#include "qclaw/function_table.hpp"
#include "qclaw/grover.hpp"
#include "qclaw/params.hpp"
#include "qclaw/query_ledger.hpp"
#include "qclaw/rng.hpp"
#include "qclaw/stats.hpp"
#include "qclaw/sweep.hpp"

namespace {

using namespace qclaw;

constexpr std::uint64_t kSuiteSeed = 0x76616c3176ULL;  // stable across releases; bump on grid changes

int cmd_bound_table(int l_max) {
  std::printf("l,ours,ours_decimal,hsx,hsx_decimal\n");
  for (const BoundRow& row : bound_table(l_max)) {
    std::printf("%d,%s,%s,%s,%s\n", row.l, rational_string(row.ours).c_str(),
                rational_decimal4(row.ours).c_str(), rational_string(row.hsx).c_str(),
                rational_decimal4(row.hsx).c_str());
  }
  return 0;
}

int cmd_sha3_table() {
  std::printf("l,log2_queries\n");
  const std::vector<long long> rows = sha3_bound_table();
  for (std::size_t i = 0; i < rows.size(); ++i)
    std::printf("%d,%lld\n", static_cast<int>(i + 2), rows[i]);
  return 0;
}

int cmd_sweep(const SweepConfig& config) {
  SweepAudit audit;
  const std::vector<SweepRecord> records = run_sweep(config, &audit);

  std::printf("algorithm=%s l=%d c_N=%g k=%d trials=%" PRIu64 " seed=%" PRIu64 "\n",
              algo_name(config.algorithm), config.l, config.c_n, config.k,
              config.trials, config.base_seed);
  std::printf("%12s %12s %8s %17s %16s %16s\n", "N", "successes", "rate", "95% CI",
              "mean_queries", "stddev_queries");
  for (const SweepRecord& rec : records) {
    const auto [lo, hi] = wilson_interval(rec.successes, rec.trials);
    const double rate = static_cast<double>(rec.successes) / static_cast<double>(rec.trials);
    std::printf("%12" PRIu64 " %6" PRIu64 "/%-5" PRIu64 " %8.3f [%6.3f, %6.3f] %16.2f %16.2f\n",
                rec.n, rec.successes, rec.trials, rate, lo, hi, rec.mean_queries,
                rec.stddev_queries);
  }
  if (!config.out_path.empty())
    std::printf("wrote %zu records to %s\n", records.size(), config.out_path.c_str());

  if (audit.verify_failures > 0 || audit.cap_violations > 0) {
    std::fprintf(stderr,
                 "audit failed: %" PRIu64 " bad solutions, %" PRIu64 " cap violations\n",
                 audit.verify_failures, audit.cap_violations);
    return 1;
  }
  return 0;
}

int cmd_fit(const std::string& path) {
  const std::vector<SweepRecord> records = read_sweep_csv(path);
  const FitResult fit = fit_exponent(records);
  std::printf("records=%zu algorithm=%s l=%d\n", records.size(),
              records.front().algorithm.c_str(), records.front().l);
  std::printf("slope=%.4f intercept=%.4f residual=%.4f\n", fit.slope, fit.intercept,
              fit.residual);
  std::printf("theory=%s (%.4f) within_tolerance=%s\n",
              rational_string(fit.theory_exponent).c_str(),
              rational_value(fit.theory_exponent), fit.within_tolerance ? "yes" : "no");
  return fit.within_tolerance ? 0 : 1;
}

// One row of a validation run, printed and optionally appended to a CSV.
struct CheckRow {
  std::string check;
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  double empirical = 0.0;
  double bound = 0.0;
  std::uint64_t excluded = 0;
  bool pass = false;
};

void print_rows(const std::string& suite, const std::vector<CheckRow>& rows,
                const std::string& out_path) {
  for (const CheckRow& row : rows) {
    const std::string excluded =
        row.excluded ? " excluded=" + std::to_string(row.excluded) : "";
    std::printf("[%s] %-34s trials=%-6" PRIu64 " violations=%-5" PRIu64
                " rate=%.5f bound=%.5f%s %s\n",
                suite.c_str(), row.check.c_str(), row.trials, row.violations,
                row.empirical, row.bound, excluded.c_str(),
                row.pass ? "PASS" : "FAIL");
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    out << "suite,check,trials,violations,empirical_rate,theoretical_bound,excluded,pass\n";
    char buf[64];
    for (const CheckRow& row : rows) {
      std::snprintf(buf, sizeof(buf), "%.6f,%.6f", row.empirical, row.bound);
      out << suite << ',' << row.check << ',' << row.trials << ',' << row.violations
          << ',' << buf << ',' << row.excluded << ',' << (row.pass ? 1 : 0) << '\n';
    }
  }
}

CheckRow row_from_report(const std::string& name, const LemmaReport& rep) {
  return {name,     rep.trials,   rep.violations, rep.empirical_rate,
          rep.theoretical_bound, rep.excluded, rep.pass};
}

std::vector<std::uint64_t> sample_distinct(std::uint64_t n, std::uint64_t count, Prng& rng) {
  std::vector<std::uint64_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::uint64_t i = 0; i < count; ++i)
    std::swap(pool[i], pool[i + rng.bounded(n - i)]);
  pool.resize(count);
  return pool;
}

std::vector<CheckRow> grover_suite() {
  Prng rng(derive_seed(kSuiteSeed, 1));
  std::uint64_t triples = 0;
  std::uint64_t violations = 0;
  double max_delta = 0.0;
  for (std::uint64_t n : {2u, 4u, 8u, 16u, 32u, 64u, 128u, 256u, 512u, 1024u}) {
    std::vector<std::uint64_t> ts{1, n / 8, n / 4, n / 2, n};
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    ts.erase(std::remove(ts.begin(), ts.end(), std::uint64_t{0}), ts.end());
    for (std::uint64_t t : ts) {
      const std::vector<std::uint64_t> marked = sample_distinct(n, t, rng);
      for (std::uint64_t j : {0u, 1u, 2u, 3u, 5u, 8u, 13u}) {
        const SearchSpace space{n, t};
        const double delta =
            std::fabs(grover_success_prob(space, j) - statevector_grover(space, marked, j));
        max_delta = std::max(max_delta, delta);
        triples += 1;
        if (delta >= 1e-9) violations += 1;
      }
    }
  }
  CheckRow row{"closed_form_vs_statevector", triples, violations, max_delta, 1e-9, 0,
               violations == 0 && triples >= 200};
  return {row};
}

std::vector<CheckRow> bbht_suite() {
  struct Pair {
    std::uint64_t n, t;
  };
  const std::vector<Pair> grid{{1024, 1},  {1024, 4},    {1024, 16},  {1024, 64},
                               {1024, 200}, {4096, 1},   {4096, 16},  {4096, 128},
                               {4096, 512}, {16384, 1},  {16384, 64}, {16384, 1024},
                               {16384, 3000}};
  const std::uint64_t trials = 10000;
  std::vector<CheckRow> rows;
  Prng fill(derive_seed(kSuiteSeed, 2));
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto [n, t] = grid[g];
    const double bound = 4.0 * static_cast<double>(n) /
                         std::sqrt(static_cast<double>(n - t) * static_cast<double>(t));
    const VectorMarkedOracle oracle(sample_distinct(n, t, fill));
    double total = 0.0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
      Prng rng(derive_seed(derive_seed(kSuiteSeed, 3 + g), trial));
      QueryLedger ledger(static_cast<std::uint64_t>(bound * 100.0) + 10000);
      const GroverOutcome out = bbht_search({n, t}, oracle, ledger, rng);
      total += static_cast<double>(out.queries_charged);
    }
    const double mean = total / static_cast<double>(trials);
    char name[64];
    std::snprintf(name, sizeof(name), "mean_queries_n%" PRIu64 "_t%" PRIu64, n, t);
    rows.push_back({name, trials, 0, mean, 1.05 * bound, 0, mean <= 1.05 * bound});
  }
  return rows;
}

std::vector<CheckRow> claws_suite() {
  struct Entry {
    Algo algo;
    int l;
    std::uint64_t n;
    std::uint64_t trials;
  };
  const std::vector<Entry> grid{
      {Algo::kBht, 2, 1 << 10, 50},
      {Algo::kMclaw, 2, 1 << 10, 50},
      {Algo::kMclaw, 3, 1 << 12, 30},
      {Algo::kHsx, 2, 1 << 12, 30},
      {Algo::kHsx, 3, 1 << 12, 30},
      {Algo::kCollision, 3, 1 << 12, 30},
  };
  std::vector<CheckRow> rows;
  for (const Entry& entry : grid) {
    SweepConfig config;
    config.algorithm = entry.algo;
    config.l = entry.l;
    config.n_list = {entry.n};
    config.k = 4;
    config.trials = entry.trials;
    config.base_seed = derive_seed(kSuiteSeed, 100 + static_cast<int>(entry.algo));
    SweepAudit audit;
    const std::vector<SweepRecord> records = run_sweep(config, &audit);
    const std::uint64_t bad = audit.verify_failures + audit.cap_violations;
    char name[64];
    std::snprintf(name, sizeof(name), "%s_l%d_n%" PRIu64 "_verified", algo_name(entry.algo),
                  entry.l, entry.n);
    rows.push_back({name, entry.trials, bad,
                    static_cast<double>(records[0].successes) /
                        static_cast<double>(entry.trials),
                    0.0, 0, bad == 0});
  }
  return rows;
}

std::vector<CheckRow> lemmas_suite() {
  std::vector<CheckRow> rows;
  {
    Prng rng(derive_seed(kSuiteSeed, 10));
    rows.push_back(row_from_report("image_size_4096_4096",
                                   image_concentration_check(4096, 4096, 1000, rng)));
  }
  struct HgEntry {
    std::uint64_t n1, n, m;
  };
  const std::vector<HgEntry> hg_grid{{3333, 10000, 400}, {5000, 10000, 100},
                                     {1024, 4096, 64},   {500, 1000, 0}};
  for (std::size_t i = 0; i < hg_grid.size(); ++i) {
    const auto [n1, n, m] = hg_grid[i];
    const double mean = static_cast<double>(n1) * static_cast<double>(m) /
                        static_cast<double>(n);
    const double lambda = std::max(2.0, std::sqrt(mean) / 2.0);
    const HypergeomParams params = HypergeomParams::make(n1, n, m, lambda);
    Prng rng(derive_seed(kSuiteSeed, 20 + i));
    char name[64];
    std::snprintf(name, sizeof(name), "hypergeom_tail_n%" PRIu64 "_m%" PRIu64, n, m);
    rows.push_back(row_from_report(name, hypergeom_tail_check(params, 10000, rng)));
  }
  struct GeEntry {
    int l, level;
    std::uint64_t n, trials;
  };
  const std::vector<GeEntry> ge_grid{{2, 1, 1 << 14, 200}, {2, 2, 1 << 14, 200},
                                     {3, 2, 1 << 12, 100}};
  for (std::size_t i = 0; i < ge_grid.size(); ++i) {
    const auto [l, level, n, trials] = ge_grid[i];
    Prng rng(derive_seed(kSuiteSeed, 30 + i));
    char name[64];
    std::snprintf(name, sizeof(name), "good_event_l%d_level%d_n%" PRIu64, l, level, n);
    rows.push_back(row_from_report(name, good_event_rate(l, n, 1.0, 4, level, trials, rng)));
  }
  return rows;
}

int cmd_validate(const std::string& suite, const std::string& out_path) {
  std::vector<CheckRow> rows;
  if (suite == "grover") rows = grover_suite();
  else if (suite == "bbht") rows = bbht_suite();
  else if (suite == "claws") rows = claws_suite();
  else if (suite == "lemmas") rows = lemmas_suite();
  else throw std::invalid_argument("unknown suite '" + suite +
                                   "', expected grover, bbht, lemmas or claws");
  print_rows(suite, rows, out_path);
  const bool all_pass =
      std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
  std::printf("%s suite: %s\n", suite.c_str(), all_pass ? "PASS" : "FAIL");
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"query-model simulator for multicollision and claw finding"};
  app.require_subcommand(1);

  auto* bound_cmd = app.add_subcommand("bound-table", "exponent table for both finders");
  int l_max = 8;
  bound_cmd->add_option("--l-max", l_max, "largest l")->default_val(8);

  app.add_subcommand("sha3-table", "log2 query budgets at range 2^512");

  auto* sweep_cmd = app.add_subcommand("sweep", "Monte-Carlo query-count sweep over N");
  std::string algo_str, config_path, out_path;
  std::vector<std::string> n_args;
  int l = 2, k = 4;
  double c_n = 1.0;
  std::uint64_t trials = 100, seed = 42;
  sweep_cmd->add_option("--algo", algo_str, "bht, hsx, mclaw or collision");
  sweep_cmd->add_option("--l", l, "tuple size");
  sweep_cmd->add_option("--n", n_args, "range sizes, decimal or 2^k")->delimiter(',');
  sweep_cmd->add_option("--c-n", c_n, "domain shrink factor");
  sweep_cmd->add_option("--k", k, "budget multiplier");
  sweep_cmd->add_option("--trials", trials, "trials per N");
  sweep_cmd->add_option("--seed", seed, "base seed");
  sweep_cmd->add_option("--out", out_path, "CSV output path");
  sweep_cmd->add_option("--config", config_path, "JSON config, flags override");

  auto* fit_cmd = app.add_subcommand("fit", "exponent fit over a sweep CSV");
  std::string fit_path;
  fit_cmd->add_option("--in", fit_path, "sweep CSV")->required();

  auto* validate_cmd = app.add_subcommand("validate", "run a property suite");
  std::string suite, validate_out;
  validate_cmd->add_option("--suite", suite, "grover, bbht, lemmas or claws")->required();
  validate_cmd->add_option("--out", validate_out, "CSV report path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bound_cmd) return cmd_bound_table(l_max);
    if (app.got_subcommand("sha3-table")) return cmd_sha3_table();
    if (*sweep_cmd) {
      SweepConfig config;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw std::runtime_error("cannot open '" + config_path + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        config = sweep_config_from_json(buf.str());
      }
      if (sweep_cmd->count("--algo")) config.algorithm = algo_from_name(algo_str);
      if (sweep_cmd->count("--l")) config.l = l;
      if (sweep_cmd->count("--n")) {
        config.n_list.clear();
        for (const std::string& item : n_args) config.n_list.push_back(parse_size(item));
      }
      if (sweep_cmd->count("--c-n")) config.c_n = c_n;
      if (sweep_cmd->count("--k")) config.k = k;
      if (sweep_cmd->count("--trials")) config.trials = trials;
      if (sweep_cmd->count("--seed")) config.base_seed = seed;
      if (sweep_cmd->count("--out")) config.out_path = out_path;
      return cmd_sweep(config);
    }
    if (*fit_cmd) return cmd_fit(fit_path);
    if (*validate_cmd) return cmd_validate(suite, validate_out);
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 2;
  }
  return 0;
}
