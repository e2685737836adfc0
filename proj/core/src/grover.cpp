#include "qclaw/grover.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace qclaw {

namespace {

void check_space(const SearchSpace& space) {
  if (space.size == 0) throw std::invalid_argument("SearchSpace: size must be positive");
  if (space.marked_count > space.size)
    throw std::invalid_argument("SearchSpace: marked_count exceeds size");
}

}  // namespace

double grover_success_prob(const SearchSpace& space, std::uint64_t iterations) {
  check_space(space);
  if (space.marked_count == 0)
    throw std::invalid_argument("grover_success_prob: marked_count must be positive");
  const double theta = std::asin(std::sqrt(static_cast<double>(space.marked_count) /
                                           static_cast<double>(space.size)));
  const double s = std::sin(static_cast<double>(2 * iterations + 1) * theta);
  return s * s;
}

double statevector_grover(const SearchSpace& space,
                          std::span<const std::uint64_t> marked,
                          std::uint64_t iterations) {
  check_space(space);
  if (space.size > kStatevectorLimit)
    throw std::domain_error("statevector_grover: backend limit is 4096 states");
  if (marked.size() != space.marked_count)
    throw std::invalid_argument("statevector_grover: marked set size disagrees with marked_count");

  const std::size_t n = space.size;
  std::vector<bool> is_marked(n, false);
  for (std::uint64_t x : marked) {
    if (x >= n) throw std::invalid_argument("statevector_grover: marked element out of range");
    if (is_marked[x]) throw std::invalid_argument("statevector_grover: duplicate marked element");
    is_marked[x] = true;
  }

  // Real amplitudes suffice: the initial state and both reflections are real.
  std::vector<double> amp(n, 1.0 / std::sqrt(static_cast<double>(n)));
  for (std::uint64_t round = 0; round < iterations; ++round) {
    for (std::uint64_t x : marked) amp[x] = -amp[x];
    double mean = std::accumulate(amp.begin(), amp.end(), 0.0) / static_cast<double>(n);
    for (double& a : amp) a = 2.0 * mean - a;
  }

  double mass = 0.0;
  for (std::uint64_t x : marked) mass += amp[x] * amp[x];
  return mass;
}

GroverOutcome bbht_search(const SearchSpace& space, const MarkedOracle& oracle,
                          QueryLedger& ledger, Prng& rng,
                          const BbhtSchedule& schedule, std::uint64_t cost_per_eval) {
  check_space(space);
  if (schedule.growth_factor <= 1.0)
    throw std::invalid_argument("bbht_search: growth_factor must exceed 1");
  if (schedule.initial_bound < 1.0)
    throw std::invalid_argument("bbht_search: initial_bound must be at least 1");
  if (cost_per_eval == 0)
    throw std::invalid_argument("bbht_search: cost_per_eval must be at least 1");

#ifndef NDEBUG
  // The expected-query bound needs t/n < 17/81; the procedure itself works
  // for any t, so only flag the violation once instead of guessing a bound.
  if (space.marked_count * 81 >= space.size * 17) {
    static std::atomic_flag warned = ATOMIC_FLAG_INIT;
    if (!warned.test_and_set()) {
      std::fprintf(stderr,
                   "bbht_search: marked fraction %llu/%llu is not below 17/81; "
                   "expected-query bound does not apply\n",
                   static_cast<unsigned long long>(space.marked_count),
                   static_cast<unsigned long long>(space.size));
    }
  }
#endif

  const double cap =
      schedule.cap > 0.0 ? schedule.cap : std::sqrt(static_cast<double>(space.size));
  const bool has_marked = space.marked_count > 0;
  const double theta =
      has_marked ? std::asin(std::sqrt(static_cast<double>(space.marked_count) /
                                       static_cast<double>(space.size)))
                 : 0.0;

  GroverOutcome out;
  double m = schedule.initial_bound;
  for (;;) {
    const auto j_bound = static_cast<std::uint64_t>(m);
    const std::uint64_t j = rng.bounded(j_bound < 1 ? 1 : j_bound);
    out.rounds += 1;
    const std::uint64_t before = ledger.count();
    const ChargeStatus status = ledger.charge(cost_per_eval * (j + 1));
    out.queries_charged += ledger.count() - before;
    if (status == ChargeStatus::kAborted) return out;
    if (has_marked) {
      const double s = std::sin(static_cast<double>(2 * j + 1) * theta);
      if (rng.uniform01() < s * s) {
        out.found = oracle.sample(rng);
        return out;
      }
    }
    m = std::min(m * schedule.growth_factor, cap);
  }
}

}  // namespace qclaw
