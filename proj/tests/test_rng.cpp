#include <set>

#include "doctest.h"
#include "qclaw/rng.hpp"

using namespace qclaw;

TEST_SUITE("rng") {

TEST_CASE("same seed gives the same stream") {
  Prng a(123), b(123);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("different seeds diverge") {
  Prng a(1), b(2);
  int equal = 0;
  for (int i = 0; i < 64; ++i)
    if (a.next() == b.next()) equal += 1;
  CHECK(equal == 0);
}

TEST_CASE("bounded stays in range and hits every residue") {
  Prng rng(7);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t v = rng.bounded(7);
    CHECK(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("bounded handles bound 1") {
  Prng rng(9);
  for (int i = 0; i < 10; ++i) CHECK(rng.bounded(1) == 0);
}

TEST_CASE("uniform01 lies in the unit interval") {
  Prng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("derive_seed separates streams") {
  const std::uint64_t base = 42;
  CHECK(derive_seed(base, 0) != derive_seed(base, 1));
  CHECK(derive_seed(base, 0) != derive_seed(base + 1, 0));
  Prng a(derive_seed(base, 0)), b(derive_seed(base, 1));
  CHECK(a.next() != b.next());
}

}  // TEST_SUITE
