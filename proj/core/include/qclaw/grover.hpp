#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "qclaw/query_ledger.hpp"
#include "qclaw/rng.hpp"

namespace qclaw {

// Quantum search instance: n candidates, t of them marked.
struct SearchSpace {
  std::uint64_t size = 0;
  std::uint64_t marked_count = 0;
};

// Probability of measuring a marked element after `iterations` Grover
// rounds: sin^2((2j+1) * asin(sqrt(t/n))).  Rejects t = 0, the caller has
// to decide what an empty search means.
double grover_success_prob(const SearchSpace& space, std::uint64_t iterations);

// Dense amplitude simulation (sign flip on marked, inversion about the
// mean), the cross-check oracle for grover_success_prob.  Refuses
// size > kStatevectorLimit.
inline constexpr std::uint64_t kStatevectorLimit = 1ULL << 12;
double statevector_grover(const SearchSpace& space,
                          std::span<const std::uint64_t> marked,
                          std::uint64_t iterations);

// Growth schedule for searching with an unknown number of marked items.
// cap <= 0 means "use sqrt(space.size)".
struct BbhtSchedule {
  double growth_factor = 6.0 / 5.0;
  double initial_bound = 1.0;
  double cap = 0.0;
};

struct GroverOutcome {
  std::optional<std::uint64_t> found;
  std::uint64_t queries_charged = 0;
  std::uint64_t rounds = 0;
};

// What bbht_search needs to know about the marked set: membership and a
// uniform draw (the simulated measurement result on success).
class MarkedOracle {
 public:
  virtual ~MarkedOracle() = default;
  virtual bool contains(std::uint64_t x) const = 0;
  // Uniform over the marked set; only called when marked_count > 0.
  virtual std::uint64_t sample(Prng& rng) const = 0;
};

class VectorMarkedOracle final : public MarkedOracle {
 public:
  explicit VectorMarkedOracle(std::vector<std::uint64_t> marked)
      : marked_(std::move(marked)), members_(marked_.begin(), marked_.end()) {}

  bool contains(std::uint64_t x) const override { return members_.count(x) != 0; }
  std::uint64_t sample(Prng& rng) const override {
    return marked_[rng.bounded(marked_.size())];
  }

 private:
  std::vector<std::uint64_t> marked_;
  std::unordered_set<std::uint64_t> members_;
};

// Unknown-t amplitude amplification in the query model.  Each round draws
// j uniform from {0..floor(m)-1}, charges cost_per_eval*(j+1) to the ledger
// (j Grover evaluations plus one test of the measured candidate), succeeds
// with the closed-form probability, and otherwise grows m geometrically up
// to the cap.  With marked_count == 0 the loop only ends when the ledger
// aborts.  Expected charges stay below 4n/sqrt((n-t)t) per-eval units while
// t/n < 17/81.
GroverOutcome bbht_search(const SearchSpace& space, const MarkedOracle& oracle,
                          QueryLedger& ledger, Prng& rng,
                          const BbhtSchedule& schedule = {},
                          std::uint64_t cost_per_eval = 1);

}  // namespace qclaw
