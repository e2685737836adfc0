#pragma once

#include <cstdint>
#include <utility>

#include "qclaw/rng.hpp"

namespace qclaw {

// Parameters of the one-sided hypergeometric tail bound
// P(K < E[K] - lambda) <= exp(-2*alpha*(lambda^2 - 1)), valid for lambda >= 2.
struct HypergeomParams {
  std::uint64_t n1 = 0;  // samples drawn
  std::uint64_t n = 0;   // population size
  std::uint64_t m = 0;   // defectives in the population
  double lambda = 0.0;
  double alpha = 0.0;

  static HypergeomParams make(std::uint64_t n1, std::uint64_t n, std::uint64_t m,
                              double lambda);
  double expected() const { return static_cast<double>(n1) * static_cast<double>(m) /
                                   static_cast<double>(n); }
};

// Outcome of a Monte-Carlo lemma check.  All checks are phrased on the
// violation side: empirical_rate = violations/trials and the report passes
// when that rate stays within theoretical_bound plus two binomial standard
// errors of the estimate.  Trials that never reach the checked event are
// excluded from the rate and counted in `excluded`.
struct LemmaReport {
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  double empirical_rate = 0.0;
  double theoretical_bound = 0.0;
  bool pass = false;
  std::uint64_t excluded = 0;
};

// Lower bound on the expected image size of a uniformly random function
// from a domain of the given size into the given range: |X|/2 - sqrt(|X| ln|Y| / 2).
// Vacuous (possibly negative) at tiny sizes.
double image_bound(std::uint64_t domain_size, std::uint64_t range_size);

// Draws one hypergeometric variate by sequential sampling without replacement.
std::uint64_t sample_hypergeometric(std::uint64_t n1, std::uint64_t n, std::uint64_t m,
                                    Prng& rng);

// Samples fresh random tables and reports how often the realized image size
// falls below image_bound(); the violation rate is checked against 2/|Y|.
LemmaReport image_concentration_check(std::uint64_t domain_size, std::uint64_t range_size,
                                      std::uint64_t trials, Prng& rng);

LemmaReport hypergeom_tail_check(const HypergeomParams& params, std::uint64_t trials,
                                 Prng& rng);

// Runs the multiclaw pipeline on fresh random instances and records, at the
// moment the given level starts, how many list images the level's function can
// still reach.  The violation rate of that count dropping below the schedule
// entry N_{i-1} is checked against 2/N + exp(-N_{i-1} / (15 c_N)).
LemmaReport good_event_rate(int l, std::uint64_t range_size, double c_n, int k,
                            int level, std::uint64_t trials, Prng& rng);

// 95% Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials);

}  // namespace qclaw
