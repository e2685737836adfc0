#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace qclaw {

// Partial claw: x_1..x_i under functions f_1..f_i, all mapping to y.
struct ClawRecord {
  std::vector<std::uint32_t> xs;
  std::uint32_t y = 0;
};

// Level list L_i with its image set L'_i.  The y values are kept pairwise
// distinct: a record whose y is already present could never be joined later
// (its y is consumed together with the stored record), so inserting it again
// is refused and the caller just moves on.
class ImageList {
 public:
  bool insert(ClawRecord record) {
    auto [it, fresh] =
        index_.try_emplace(record.y, static_cast<std::uint32_t>(records_.size()));
    if (!fresh) return false;
    records_.push_back(std::move(record));
    return true;
  }

  bool contains_y(std::uint32_t y) const { return index_.count(y) != 0; }

  // Remove and return the record with image y.
  ClawRecord take(std::uint32_t y) {
    auto it = index_.find(y);
    if (it == index_.end()) throw std::logic_error("ImageList: y not present");
    ClawRecord out = std::move(records_[it->second]);
    const std::size_t hole = it->second;
    index_.erase(it);
    if (hole + 1 != records_.size()) {
      records_[hole] = std::move(records_.back());
      index_[records_[hole].y] = static_cast<std::uint32_t>(hole);
    }
    records_.pop_back();
    return out;
  }

  std::size_t size() const { return records_.size(); }
  const std::vector<ClawRecord>& records() const { return records_; }

 private:
  std::vector<ClawRecord> records_;
  std::unordered_map<std::uint32_t, std::uint32_t> index_;
};

}  // namespace qclaw
