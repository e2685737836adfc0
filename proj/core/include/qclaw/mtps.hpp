#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "qclaw/function_table.hpp"
#include "qclaw/grover.hpp"

namespace qclaw {

// Marked set for a target-membership search: the union of f's preimages over
// a mutable set of target images.  Doubles as the MarkedOracle on the 5x
// inflated domain {0..5|X|-1}, where id x < |X| encodes the marked copy
// (alpha = 0) of x and sample() hands back the plain x.
class PreimageUnion final : public MarkedOracle {
 public:
  explicit PreimageUnion(const FunctionTable& f) : f_(&f) {}

  void add_target(std::uint32_t y) {
    if (!targets_.insert(y).second) return;
    for (std::uint32_t x : f_->preimages(y)) {
      pos_.emplace(x, static_cast<std::uint32_t>(marked_.size()));
      marked_.push_back(x);
    }
  }

  void remove_target(std::uint32_t y) {
    if (targets_.erase(y) == 0) return;
    for (std::uint32_t x : f_->preimages(y)) {
      auto it = pos_.find(x);
      const std::uint32_t hole = it->second;
      pos_.erase(it);
      if (hole + 1 != marked_.size()) {
        marked_[hole] = marked_.back();
        pos_[marked_[hole]] = hole;
      }
      marked_.pop_back();
    }
  }

  bool has_target(std::uint32_t y) const { return targets_.count(y) != 0; }
  std::uint64_t target_count() const { return targets_.size(); }
  std::uint64_t marked_count() const { return marked_.size(); }
  const FunctionTable& table() const { return *f_; }

  bool contains(std::uint64_t id) const override {
    return id < f_->domain_size() &&
           targets_.count(f_->value(id)) != 0;
  }
  std::uint64_t sample(Prng& rng) const override {
    return marked_[rng.bounded(marked_.size())];
  }

 private:
  const FunctionTable* f_;
  std::unordered_set<std::uint32_t> targets_;
  std::vector<std::uint32_t> marked_;
  std::unordered_map<std::uint32_t, std::uint32_t> pos_;
};

// Find x with f(x) in the target set via bbht_search on the 5x inflated
// domain.  The inflation pins the marked fraction at |f^-1(targets)|/(5|X|),
// at most 1/5, inside the regime of the expected-query bound; the price is
// 2 charged queries per predicate evaluation (compute and uncompute), and the
// post-measurement test is charged 2 as well.  Expected charges stay below
// 9*sqrt(5|X|/t) for t marked.  An empty preimage union burns the ledger.
GroverOutcome mtps(const FunctionTable& f, const PreimageUnion& targets,
                   QueryLedger& ledger, Prng& rng);

// Convenience overload building the preimage union from a plain list.
GroverOutcome mtps(const FunctionTable& f, std::span<const std::uint32_t> target_ys,
                   QueryLedger& ledger, Prng& rng);

}  // namespace qclaw
