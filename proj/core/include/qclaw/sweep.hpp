#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qclaw/params.hpp"

namespace qclaw {

enum class Algo { kBht, kHsx, kMclaw, kCollision };

const char* algo_name(Algo algo);
Algo algo_from_name(const std::string& name);

// Accepts plain decimals and "2^k" shorthand.
std::uint64_t parse_size(const std::string& text);

struct SweepConfig {
  Algo algorithm = Algo::kMclaw;
  int l = 2;
  std::vector<std::uint64_t> n_list;  // strictly increasing powers of two
  double c_n = 1.0;
  int k = 4;
  std::uint64_t trials = 100;
  std::uint64_t base_seed = 42;
  std::string out_path;  // empty skips the CSV

  // Throws std::invalid_argument describing the first problem found,
  // including any N beyond the per-l table budget.
  void validate() const;
};

SweepConfig sweep_config_from_json(const std::string& text);
std::string sweep_config_to_json(const SweepConfig& config);

// Largest table size run_sweep accepts for the given list depth.
std::uint64_t feasible_n_cap(int l);

struct SweepRecord {
  std::string algorithm;
  int l = 0;
  std::uint64_t n = 0;
  double c_n = 1.0;
  int k = 4;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double mean_queries = 0.0;    // over all trials, aborted runs cost the full cap
  double stddev_queries = 0.0;
  std::vector<double> mean_per_level;
  std::uint64_t seed = 0;
};

// Solution and budget audit accumulated while sweeping; every returned
// solution is re-verified against the tables and every run is checked
// against its query cap.
struct SweepAudit {
  std::uint64_t solutions_checked = 0;
  std::uint64_t verify_failures = 0;
  std::uint64_t cap_violations = 0;
};

// Ledger limit for one run: k * ceil(169 * l * c_N^(3/2) * N^e) with the
// algorithm's own exponent.
std::uint64_t query_cap(Algo algo, int l, std::uint64_t n, double c_n, int k);

// One record per N, deterministic for a fixed config; trials are distributed
// over a small worker pool (QCLAW_WORKERS, default one thread per core).
std::vector<SweepRecord> run_sweep(const SweepConfig& config, SweepAudit* audit = nullptr);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root mean squared, in log space
  Rational theory_exponent{0, 1};
  bool within_tolerance = false;
};

// Least-squares slope of ln(mean_queries) against ln(N) over at least five
// records of one (algorithm, l) pair, compared with the predicted exponent
// under a per-l tolerance (0.05, 0.07, then 0.10 from l=4 up).
FitResult fit_exponent(const std::vector<SweepRecord>& records);

void write_sweep_csv(const std::string& path, const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_sweep_csv(const std::string& path);

}  // namespace qclaw
