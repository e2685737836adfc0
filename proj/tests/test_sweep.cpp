#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "qclaw/params.hpp"
#include "qclaw/sweep.hpp"

using namespace qclaw;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SweepConfig small_config() {
  SweepConfig config;
  config.algorithm = Algo::kMclaw;
  config.l = 2;
  config.n_list = {1 << 10};
  config.trials = 30;
  config.base_seed = 99;
  return config;
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("size strings accept decimals and powers of two") {
  CHECK(parse_size("4096") == 4096);
  CHECK(parse_size("2^12") == 4096);
  CHECK(parse_size("2^0") == 1);
  CHECK_THROWS_AS(parse_size("3^5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_size("2^64"), std::invalid_argument);
  CHECK_THROWS_AS(parse_size("12ab"), std::invalid_argument);
}

TEST_CASE("algorithm names round-trip") {
  for (Algo algo : {Algo::kBht, Algo::kHsx, Algo::kMclaw, Algo::kCollision})
    CHECK(algo_from_name(algo_name(algo)) == algo);
  CHECK_THROWS_AS(algo_from_name("grover"), std::invalid_argument);
}

TEST_CASE("config validation rejects bad shapes") {
  SweepConfig config = small_config();
  config.trials = 29;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);

  config = small_config();
  config.n_list = {1000};  // not a power of two
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);

  config = small_config();
  config.n_list = {1 << 12, 1 << 10};
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);

  config = small_config();
  config.algorithm = Algo::kBht;
  config.l = 3;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);

  config = small_config();
  config.l = 4;
  config.n_list = {1 << 22};  // beyond the l=4 table budget
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);

  CHECK_NOTHROW(small_config().validate());
}

TEST_CASE("table budgets shrink as l grows") {
  CHECK(feasible_n_cap(2) == (1ULL << 22));
  CHECK(feasible_n_cap(3) == (1ULL << 22));
  CHECK(feasible_n_cap(4) == (1ULL << 20));
  CHECK(feasible_n_cap(6) == (1ULL << 18));
}

TEST_CASE("query caps follow each algorithm's own exponent") {
  const std::uint64_t n = 1 << 12;
  CHECK(query_cap(Algo::kMclaw, 2, n, 1.0, 4) == MclawParams::build(2, n, 1.0, 4).qlimit);
  const double hsx_scale = 169.0 * 3 * pow_fraction(n, 4, 9);
  CHECK(query_cap(Algo::kHsx, 3, n, 1.0, 4) ==
        4 * static_cast<std::uint64_t>(std::ceil(hsx_scale)));
  CHECK(query_cap(Algo::kBht, 2, n, 1.0, 4) == query_cap(Algo::kMclaw, 2, n, 1.0, 4));
}

TEST_CASE("sweeps are deterministic and auditable") {
  const SweepConfig config = small_config();
  SweepAudit audit_a, audit_b;
  const auto a = run_sweep(config, &audit_a);
  const auto b = run_sweep(config, &audit_b);
  REQUIRE(a.size() == 1);
  CHECK(a[0].mean_queries == b[0].mean_queries);
  CHECK(a[0].stddev_queries == b[0].stddev_queries);
  CHECK(a[0].successes == b[0].successes);
  CHECK(a[0].mean_per_level == b[0].mean_per_level);
  CHECK(audit_a.solutions_checked == a[0].successes);
  CHECK(audit_a.verify_failures == 0);
  CHECK(audit_a.cap_violations == 0);
  CHECK(audit_b.solutions_checked == audit_a.solutions_checked);
}

TEST_CASE("csv output is byte-stable and round-trips") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path_a = dir / "qclaw_sweep_a.csv";
  const auto path_b = dir / "qclaw_sweep_b.csv";

  SweepConfig config = small_config();
  config.out_path = path_a.string();
  const auto records = run_sweep(config);
  config.out_path = path_b.string();
  run_sweep(config);
  CHECK(slurp(path_a) == slurp(path_b));

  const auto parsed = read_sweep_csv(path_a.string());
  REQUIRE(parsed.size() == records.size());
  CHECK(parsed[0].algorithm == records[0].algorithm);
  CHECK(parsed[0].n == records[0].n);
  CHECK(parsed[0].successes == records[0].successes);
  CHECK(parsed[0].mean_queries == doctest::Approx(records[0].mean_queries));
  CHECK(parsed[0].mean_per_level.size() == records[0].mean_per_level.size());

  std::filesystem::remove(path_a);
  std::filesystem::remove(path_b);
}

TEST_CASE("csv reader rejects foreign files") {
  const auto path = std::filesystem::temp_directory_path() / "qclaw_not_sweep.csv";
  std::ofstream(path) << "x,y\n1,2\n";
  CHECK_THROWS_AS(read_sweep_csv(path.string()), std::runtime_error);
  std::filesystem::remove(path);
}

TEST_CASE("synthetic power laws fit exactly") {
  std::vector<SweepRecord> records;
  for (int e = 10; e <= 18; e += 2) {
    SweepRecord rec;
    rec.algorithm = "mclaw";
    rec.l = 2;
    rec.n = 1ULL << e;
    rec.trials = 100;
    rec.successes = 100;
    rec.mean_queries = 7.0 * std::pow(double(rec.n), 1.0 / 3.0);
    records.push_back(rec);
  }
  const FitResult fit = fit_exponent(records);
  CHECK(std::fabs(fit.slope - 1.0 / 3.0) < 1e-9);
  CHECK(fit.residual < 1e-9);
  CHECK(fit.theory_exponent == make_rational(1, 3));
  CHECK(fit.within_tolerance);
}

TEST_CASE("constant records fit a zero slope") {
  std::vector<SweepRecord> records;
  for (int e = 10; e <= 18; e += 2) {
    SweepRecord rec;
    rec.algorithm = "mclaw";
    rec.l = 2;
    rec.n = 1ULL << e;
    rec.mean_queries = 123.0;
    records.push_back(rec);
  }
  const FitResult fit = fit_exponent(records);
  CHECK(std::fabs(fit.slope) < 1e-12);
  CHECK_FALSE(fit.within_tolerance);
}

TEST_CASE("fits demand five homogeneous records") {
  std::vector<SweepRecord> records(4);
  CHECK_THROWS_AS(fit_exponent(records), std::invalid_argument);

  records.clear();
  for (int e = 10; e <= 18; e += 2) {
    SweepRecord rec;
    rec.algorithm = e == 10 ? "hsx" : "mclaw";
    rec.l = 2;
    rec.n = 1ULL << e;
    rec.mean_queries = 100.0;
    records.push_back(rec);
  }
  CHECK_THROWS_AS(fit_exponent(records), std::invalid_argument);
}

TEST_CASE("json configs mirror the native fields") {
  SweepConfig config = small_config();
  config.n_list = {1 << 10, 1 << 12};
  config.out_path = "out.csv";
  const SweepConfig parsed = sweep_config_from_json(sweep_config_to_json(config));
  CHECK(parsed.algorithm == config.algorithm);
  CHECK(parsed.l == config.l);
  CHECK(parsed.n_list == config.n_list);
  CHECK(parsed.c_n == config.c_n);
  CHECK(parsed.k == config.k);
  CHECK(parsed.trials == config.trials);
  CHECK(parsed.base_seed == config.base_seed);
  CHECK(parsed.out_path == config.out_path);

  const SweepConfig shorthand = sweep_config_from_json(
      R"({"algorithm":"hsx","l":3,"n":["2^12","2^14"],"trials":40})");
  CHECK(shorthand.algorithm == Algo::kHsx);
  CHECK(shorthand.n_list == std::vector<std::uint64_t>{1 << 12, 1 << 14});
  CHECK(shorthand.trials == 40);
  CHECK(shorthand.k == 4);  // defaulted
}

}  // TEST_SUITE
