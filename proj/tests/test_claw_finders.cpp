#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qclaw/claw_finders.hpp"
#include "qclaw/function_table.hpp"
#include "qclaw/params.hpp"
#include "qclaw/query_ledger.hpp"
#include "qclaw/rng.hpp"
#include "qclaw/sweep.hpp"

using namespace qclaw;

TEST_SUITE("claw_finders") {

TEST_CASE("two-list claws verify and stay under ten cube-roots") {
  const std::uint64_t n = 1 << 12;
  const std::uint64_t trials = 200;
  double total = 0.0;
  std::uint64_t found = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const auto f1 = FunctionTable::sample(n, n, derive_seed(201, 2 * trial));
    const auto f2 = FunctionTable::sample(n, n, derive_seed(201, 2 * trial + 1));
    Prng rng(derive_seed(202, trial));
    QueryLedger ledger(query_cap(Algo::kBht, 2, n, 1.0, 4));
    const AlgoResult res = bht_claw(f1, f2, 0, ledger, rng);
    total += static_cast<double>(res.total_queries);
    if (!res.aborted()) {
      found += 1;
      const auto& claw = std::get<ClawTuple>(res.solution);
      CHECK(verify_claw(claw, {f1, f2}));
      REQUIRE(res.per_level_queries.size() == 2);
      CHECK(res.per_level_queries[0] + res.per_level_queries[1] == res.total_queries);
    }
  }
  CHECK(found == trials);
  CHECK(total / static_cast<double>(trials) <= 10.0 * std::cbrt(double(n)));
}

TEST_CASE("two-list finder validates its inputs") {
  const auto f1 = FunctionTable::sample(64, 64, 1);
  const auto f2 = FunctionTable::sample(64, 128, 2);
  Prng rng(1);
  QueryLedger ledger(1000);
  CHECK_THROWS_AS(bht_claw(f1, f2, 0, ledger, rng), std::invalid_argument);
  const auto f3 = FunctionTable::sample(64, 64, 3);
  CHECK_THROWS_AS(bht_claw(f1, f3, 65, ledger, rng), std::invalid_argument);
}

TEST_CASE("multiclaw succeeds often enough and always verifies") {
  const std::uint64_t n = 1 << 12;
  const MclawParams params = MclawParams::build(2, n, 1.0, 4);
  const std::uint64_t trials = 200;
  std::uint64_t successes = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::vector<FunctionTable> fs;
    for (int i = 0; i < 2; ++i)
      fs.push_back(FunctionTable::sample(n, n, derive_seed(301, 2 * trial + i)));
    Prng rng(derive_seed(302, trial));
    QueryLedger ledger(params.qlimit);
    const AlgoResult res = mclaw(fs, params, ledger, rng);
    CHECK(res.total_queries <= params.qlimit);
    if (!res.aborted()) {
      successes += 1;
      CHECK(verify_claw(std::get<ClawTuple>(res.solution), fs));
    }
  }
  CHECK(static_cast<double>(successes) / static_cast<double>(trials) >= 0.70);
}

TEST_CASE("multiclaw runs are bitwise deterministic") {
  const std::uint64_t n = 1 << 10;
  const MclawParams params = MclawParams::build(2, n, 1.0, 4);
  std::vector<FunctionTable> fs;
  for (int i = 0; i < 2; ++i) fs.push_back(FunctionTable::sample(n, n, 400 + i));

  AlgoResult first, second;
  {
    Prng rng(77);
    QueryLedger ledger(params.qlimit);
    first = mclaw(fs, params, ledger, rng);
  }
  {
    Prng rng(77);
    QueryLedger ledger(params.qlimit);
    second = mclaw(fs, params, ledger, rng);
  }
  CHECK(first.total_queries == second.total_queries);
  CHECK(first.per_level_queries == second.per_level_queries);
  REQUIRE_FALSE(first.aborted());
  CHECK(std::get<ClawTuple>(first.solution).xs == std::get<ClawTuple>(second.solution).xs);
}

TEST_CASE("multiclaw level hooks see consistent lists") {
  const std::uint64_t n = 1 << 10;
  const MclawParams params = MclawParams::build(2, n, 1.0, 4);
  std::vector<FunctionTable> fs;
  for (int i = 0; i < 2; ++i) fs.push_back(FunctionTable::sample(n, n, 410 + i));

  MclawHooks hooks;
  std::uint64_t steps_seen = 0;
  hooks.after_step = [&](int level, std::uint64_t step, const ImageList& current,
                         const ImageList* previous) {
    steps_seen += 1;
    CHECK(current.size() <= step);
    for (const ClawRecord& rec : current.records()) {
      CHECK(rec.xs.size() == static_cast<std::size_t>(level));
      CHECK(fs[level - 1].value(rec.xs.back()) == rec.y);
    }
    if (level == 1) CHECK(previous == nullptr);
    else CHECK(previous != nullptr);
  };
  Prng rng(78);
  QueryLedger ledger(params.qlimit);
  const AlgoResult res = mclaw(fs, params, ledger, rng, &hooks);
  REQUIRE_FALSE(res.aborted());
  CHECK(steps_seen >= params.capacities[0]);
}

TEST_CASE("multiclaw validates its inputs before spending queries") {
  const std::uint64_t n = 1 << 10;
  const MclawParams params = MclawParams::build(2, n, 1.0, 4);
  Prng rng(1);
  QueryLedger ledger(params.qlimit);

  std::vector<FunctionTable> one;
  one.push_back(FunctionTable::sample(n, n, 1));
  CHECK_THROWS_AS(mclaw(one, params, ledger, rng), std::invalid_argument);

  std::vector<FunctionTable> wrong_range;
  wrong_range.push_back(FunctionTable::sample(n, n, 1));
  wrong_range.push_back(FunctionTable::sample(n / 2, n / 2, 2));
  CHECK_THROWS_AS(mclaw(wrong_range, params, ledger, rng), std::invalid_argument);
  CHECK(ledger.count() == 0);
}

TEST_CASE("a starved budget aborts cleanly") {
  const std::uint64_t n = 1 << 10;
  const MclawParams params = MclawParams::build(2, n, 1.0, 4);
  std::vector<FunctionTable> fs;
  for (int i = 0; i < 2; ++i) fs.push_back(FunctionTable::sample(n, n, 420 + i));
  Prng rng(9);
  QueryLedger ledger(10);
  const AlgoResult res = mclaw(fs, params, ledger, rng);
  CHECK(res.aborted());
  CHECK(res.total_queries == 10);
  CHECK(ledger.aborted());
}

TEST_CASE("the two-cell recursive run coincides with the two-list finder") {
  const std::uint64_t n = 1 << 10;
  const auto wide = WideTable::sample(2 * n, n, 500);
  const std::uint64_t cap = query_cap(Algo::kHsx, 2, n, 1.0, 4);

  Prng rng_a(501);
  QueryLedger ledger_a(cap);
  const AlgoResult rec_a = hsx_collision(wide, 2, ledger_a, rng_a);

  Prng rng_b(501);
  QueryLedger ledger_b(cap);
  const AlgoResult rec_b = bht_claw(wide.cell(0, n), wide.cell(n, n), 0, ledger_b, rng_b);

  CHECK(rec_a.total_queries == rec_b.total_queries);
  CHECK(rec_a.per_level_queries == rec_b.per_level_queries);
  REQUIRE_FALSE(rec_a.aborted());
  REQUIRE_FALSE(rec_b.aborted());
  const auto& col = std::get<CollisionTuple>(rec_a.solution);
  const auto& claw = std::get<ClawTuple>(rec_b.solution);
  CHECK(col.y == claw.y);
  CHECK(col.xs[0] == claw.xs[0]);
  CHECK(col.xs[1] == claw.xs[1] + n);
}

TEST_CASE("three-cell recursion returns distinct colliding inputs") {
  const std::uint64_t n = 1 << 12;
  std::uint64_t found = 0;
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    const auto wide = WideTable::sample(3 * n, n, derive_seed(510, trial));
    Prng rng(derive_seed(511, trial));
    QueryLedger ledger(query_cap(Algo::kHsx, 3, n, 1.0, 4));
    const AlgoResult res = hsx_collision(wide, 3, ledger, rng);
    if (res.aborted()) continue;
    found += 1;
    const auto& col = std::get<CollisionTuple>(res.solution);
    REQUIRE(col.xs.size() == 3);
    CHECK(verify_collision(col, wide));
    const std::set<std::uint32_t> distinct(col.xs.begin(), col.xs.end());
    CHECK(distinct.size() == 3);
  }
  CHECK(found >= 45);
}

TEST_CASE("recursive finder needs a domain of l cells") {
  const auto wide = WideTable::sample(100, 64, 1);
  Prng rng(1);
  QueryLedger ledger(1000);
  CHECK_THROWS_AS(hsx_collision(wide, 2, ledger, rng), std::invalid_argument);
  CHECK_THROWS_AS(hsx_collision(wide, 1, ledger, rng), std::invalid_argument);
}

TEST_CASE("claw-to-collision reduction succeeds often enough") {
  const std::uint64_t n = 1 << 14;
  const MclawParams params = MclawParams::build(3, n, 1.0, 4);
  const std::uint64_t trials = 100;
  std::uint64_t successes = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const auto wide = WideTable::sample(3 * n, n, derive_seed(600, trial));
    Prng rng(derive_seed(601, trial));
    QueryLedger ledger(params.qlimit);
    const AlgoResult res = collision_from_claw(wide, 3, params, ledger, rng);
    CHECK(res.total_queries <= params.qlimit);
    if (res.aborted()) continue;
    successes += 1;
    const auto& col = std::get<CollisionTuple>(res.solution);
    CHECK(verify_collision(col, wide));
  }
  CHECK(static_cast<double>(successes) / static_cast<double>(trials) >= 0.70);
}

TEST_CASE("claw-to-collision reduction validates the domain split") {
  const std::uint64_t n = 1 << 10;
  const MclawParams params = MclawParams::build(3, n, 1.0, 4);
  const auto wide = WideTable::sample(2 * n, n, 1);  // too narrow for three cells
  Prng rng(1);
  QueryLedger ledger(params.qlimit);
  CHECK_THROWS_AS(collision_from_claw(wide, 3, params, ledger, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(collision_from_claw(wide, 2, params, ledger, rng),
                  std::invalid_argument);
}

TEST_CASE("verifiers reject malformed tuples") {
  const auto f1 = FunctionTable::sample(64, 64, 700);
  const auto f2 = FunctionTable::sample(64, 64, 701);
  ClawTuple claw{{1, 2}, f1.value(1)};
  if (f2.value(2) != f1.value(1)) CHECK_FALSE(verify_claw(claw, {f1, f2}));
  CHECK_FALSE(verify_claw({{1}, f1.value(1)}, {f1, f2}));  // arity mismatch
  CHECK_FALSE(verify_claw({{70, 2}, 0}, {f1, f2}));        // out of domain

  const auto wide = WideTable::sample(128, 64, 702);
  CollisionTuple dup{{5, 5}, wide.value(5)};
  CHECK_FALSE(verify_collision(dup, wide));
  CollisionTuple wrong{{1, 2}, wide.value(1)};
  if (wide.value(2) != wide.value(1)) CHECK_FALSE(verify_collision(wrong, wide));
  CHECK_FALSE(verify_collision({{}, 0}, wide));
}

}  // TEST_SUITE
