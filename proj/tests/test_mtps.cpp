#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qclaw/function_table.hpp"
#include "qclaw/mtps.hpp"
#include "qclaw/query_ledger.hpp"
#include "qclaw/rng.hpp"

using namespace qclaw;

namespace {

FunctionTable identity_table(std::uint32_t n) {
  std::vector<std::uint32_t> values(n);
  std::iota(values.begin(), values.end(), 0);
  return FunctionTable::from_values(std::move(values), n, 0);
}

}  // namespace

TEST_SUITE("mtps") {

TEST_CASE("preimage union tracks additions and removals") {
  const auto f = FunctionTable::sample(64, 64, 19);
  PreimageUnion targets(f);
  CHECK(targets.marked_count() == 0);
  std::uint64_t expect = 0;
  for (std::uint32_t y = 0; y < 8; ++y) {
    targets.add_target(y);
    expect += f.preimage_count(y);
  }
  CHECK(targets.marked_count() == expect);
  CHECK(targets.target_count() == 8);
  targets.add_target(3);  // repeat is a no-op
  CHECK(targets.marked_count() == expect);
  targets.remove_target(3);
  CHECK(targets.marked_count() == expect - f.preimage_count(3));
  targets.remove_target(60);  // never added
  CHECK(targets.target_count() == 7);
}

TEST_CASE("membership follows the table") {
  const auto f = FunctionTable::sample(64, 64, 20);
  PreimageUnion targets(f);
  targets.add_target(f.value(10));
  CHECK(targets.contains(10));
  CHECK_FALSE(targets.contains(64));  // outside the domain copy
}

TEST_CASE("search lands on a marked preimage and charges in pairs") {
  const auto f = identity_table(100);
  std::vector<std::uint32_t> ys(20);
  std::iota(ys.begin(), ys.end(), 1);
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    Prng rng(derive_seed(31, trial));
    QueryLedger ledger(1 << 20);
    const GroverOutcome out = mtps(f, ys, ledger, rng);
    REQUIRE(out.found.has_value());
    const std::uint32_t y = f.value(*out.found);
    CHECK(y >= 1);
    CHECK(y <= 20);
    CHECK(out.queries_charged % 2 == 0);
  }
}

TEST_CASE("mean cost stays under nine sqrt of the inflated ratio") {
  // 20 marked points in a domain of 100: the bound is 9*sqrt(5*100/20) = 45.
  const auto f = identity_table(100);
  PreimageUnion targets(f);
  for (std::uint32_t y = 1; y <= 20; ++y) targets.add_target(y);
  double total = 0.0;
  const std::uint64_t trials = 10000;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Prng rng(derive_seed(33, trial));
    QueryLedger ledger(1 << 20);
    total += static_cast<double>(mtps(f, targets, ledger, rng).queries_charged);
  }
  CHECK(total / static_cast<double>(trials) <= 45.0);
}

TEST_CASE("empty target set burns the ledger exactly to its limit") {
  const auto f = identity_table(100);
  PreimageUnion targets(f);
  Prng rng(3);
  QueryLedger ledger(50);
  const GroverOutcome out = mtps(f, targets, ledger, rng);
  CHECK_FALSE(out.found.has_value());
  CHECK(ledger.aborted());
  CHECK(ledger.count() == 50);
}

TEST_CASE("a union built over another table is rejected") {
  const auto f = identity_table(100);
  const auto g = identity_table(100);
  PreimageUnion targets(g);
  targets.add_target(1);
  Prng rng(5);
  QueryLedger ledger(100);
  CHECK_THROWS_AS(mtps(f, targets, ledger, rng), std::invalid_argument);
}

TEST_CASE("the span overload requires at least one target") {
  const auto f = identity_table(100);
  Prng rng(5);
  QueryLedger ledger(100);
  CHECK_THROWS_AS(mtps(f, std::vector<std::uint32_t>{}, ledger, rng),
                  std::invalid_argument);
}

}  // TEST_SUITE
