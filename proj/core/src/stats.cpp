#include "qclaw/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qclaw/claw_finders.hpp"
#include "qclaw/function_table.hpp"
#include "qclaw/params.hpp"
#include "qclaw/query_ledger.hpp"

namespace qclaw {

HypergeomParams HypergeomParams::make(std::uint64_t n1, std::uint64_t n, std::uint64_t m,
                                      double lambda) {
  if (n == 0 || n1 > n || m > n)
    throw std::invalid_argument("hypergeometric parameters out of range");
  if (lambda < 2.0) throw std::invalid_argument("tail offset lambda must be at least 2");
  HypergeomParams p;
  p.n1 = n1;
  p.n = n;
  p.m = m;
  p.lambda = lambda;
  const auto inv = [](std::uint64_t v) { return 1.0 / (static_cast<double>(v) + 1.0); };
  p.alpha = std::max(inv(n1) + inv(n - n1), inv(m) + inv(n - m));
  return p;
}

double image_bound(std::uint64_t domain_size, std::uint64_t range_size) {
  if (domain_size == 0 || domain_size > range_size)
    throw std::invalid_argument("image_bound requires 0 < domain <= range");
  const double x = static_cast<double>(domain_size);
  return x / 2.0 - std::sqrt(x * std::log(static_cast<double>(range_size)) / 2.0);
}

std::uint64_t sample_hypergeometric(std::uint64_t n1, std::uint64_t n, std::uint64_t m,
                                    Prng& rng) {
  if (n == 0 || n1 > n || m > n)
    throw std::invalid_argument("hypergeometric parameters out of range");
  std::uint64_t hits = 0;
  std::uint64_t remaining = n;
  std::uint64_t defectives = m;
  for (std::uint64_t i = 0; i < n1; ++i) {
    if (rng.bounded(remaining) < defectives) {
      hits += 1;
      defectives -= 1;
    }
    remaining -= 1;
  }
  return hits;
}

namespace {

LemmaReport finish_report(std::uint64_t trials, std::uint64_t violations, double bound,
                          std::uint64_t excluded) {
  LemmaReport rep;
  rep.trials = trials;
  rep.violations = violations;
  rep.excluded = excluded;
  rep.theoretical_bound = bound;
  if (trials > 0) {
    const double rate = static_cast<double>(violations) / static_cast<double>(trials);
    rep.empirical_rate = rate;
    const double sigma = std::sqrt(rate * (1.0 - rate) / static_cast<double>(trials));
    rep.pass = rate <= bound + 2.0 * sigma;
  }
  return rep;
}

}  // namespace

LemmaReport image_concentration_check(std::uint64_t domain_size, std::uint64_t range_size,
                                      std::uint64_t trials, Prng& rng) {
  const double bound = image_bound(domain_size, range_size);
  std::uint64_t violations = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const FunctionTable f = FunctionTable::sample(domain_size, range_size, rng.next());
    if (static_cast<double>(f.image_size()) < bound) violations += 1;
  }
  return finish_report(trials, violations, 2.0 / static_cast<double>(range_size), 0);
}

LemmaReport hypergeom_tail_check(const HypergeomParams& params, std::uint64_t trials,
                                 Prng& rng) {
  const double bound = std::exp(-2.0 * params.alpha * (params.lambda * params.lambda - 1.0));
  if (params.m == 0 || params.m == params.n) {
    // K is deterministic, the tail event never fires.
    return finish_report(trials, 0, bound, 0);
  }
  const double mean = params.expected();
  std::uint64_t violations = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto k = sample_hypergeometric(params.n1, params.n, params.m, rng);
    if (static_cast<double>(k) - mean < -params.lambda) violations += 1;
  }
  return finish_report(trials, violations, bound, 0);
}

LemmaReport good_event_rate(int l, std::uint64_t range_size, double c_n, int k,
                            int level, std::uint64_t trials, Prng& rng) {
  if (level < 1 || level > l) throw std::invalid_argument("level must be in 1..l");
  const MclawParams params = MclawParams::build(l, range_size, c_n, k);
  const double threshold = params.schedule[level - 1];
  const double bound = 2.0 / static_cast<double>(range_size) +
                       std::exp(-threshold / (15.0 * c_n));

  std::uint64_t counted = 0;
  std::uint64_t violations = 0;
  std::uint64_t excluded = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::vector<FunctionTable> fs;
    fs.reserve(l);
    for (int i = 0; i < l; ++i)
      fs.push_back(FunctionTable::sample(range_size, range_size, rng.next()));
    Prng trial_rng(rng.next());
    QueryLedger ledger(params.qlimit);

    bool observed = false;
    std::uint64_t overlap = 0;
    MclawHooks hooks;
    hooks.on_level_start = [&](int lvl, std::uint64_t ov) {
      if (lvl == level) {
        observed = true;
        overlap = ov;
      }
    };
    mclaw(fs, params, ledger, trial_rng, &hooks);

    if (!observed) {
      excluded += 1;
      continue;
    }
    counted += 1;
    if (static_cast<double>(overlap) < threshold) violations += 1;
  }
  return finish_report(counted, violations, bound, excluded);
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace qclaw
