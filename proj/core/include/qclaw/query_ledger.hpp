#pragma once

#include <cstdint>
#include <stdexcept>

namespace qclaw {

enum class ChargeStatus { kOk, kAborted };

// Monotone oracle-query counter with a hard budget.  Reaching the limit
// aborts the run; the count is capped exactly at the limit and later
// charges are no-ops.
class QueryLedger {
 public:
  explicit QueryLedger(std::uint64_t limit) : limit_(limit) {
    if (limit == 0) throw std::invalid_argument("QueryLedger: limit must be positive");
  }

  ChargeStatus charge(std::uint64_t amount) {
    if (aborted_) return ChargeStatus::kAborted;
    if (amount >= limit_ - count_) {
      count_ = limit_;
      aborted_ = true;
      return ChargeStatus::kAborted;
    }
    count_ += amount;
    return ChargeStatus::kOk;
  }

  std::uint64_t count() const { return count_; }
  std::uint64_t limit() const { return limit_; }
  bool aborted() const { return aborted_; }

 private:
  std::uint64_t count_ = 0;
  std::uint64_t limit_;
  bool aborted_ = false;
};

}  // namespace qclaw
