#include "qclaw/mtps.hpp"

#include <stdexcept>

namespace qclaw {

GroverOutcome mtps(const FunctionTable& f, const PreimageUnion& targets,
                   QueryLedger& ledger, Prng& rng) {
  if (&targets.table() != &f)
    throw std::invalid_argument("mtps: preimage union was built for a different table");
  const SearchSpace inflated{5 * f.domain_size(), targets.marked_count()};
  return bbht_search(inflated, targets, ledger, rng, BbhtSchedule{}, 2);
}

GroverOutcome mtps(const FunctionTable& f, std::span<const std::uint32_t> target_ys,
                   QueryLedger& ledger, Prng& rng) {
  if (target_ys.empty()) throw std::invalid_argument("mtps: target set must be non-empty");
  PreimageUnion targets(f);
  for (std::uint32_t y : target_ys) targets.add_target(y);
  return mtps(f, targets, ledger, rng);
}

}  // namespace qclaw
