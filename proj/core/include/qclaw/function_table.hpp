#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace qclaw {

// Exhaustively tabulated random function f: [domain] -> [range] with a full
// preimage index, the object every oracle in the simulator wraps.  Claw
// instances always satisfy domain <= range; larger domains live in WideTable
// and get carved into cells first.  Tables are immutable once built and safe
// to share across concurrent trials.
class FunctionTable {
 public:
  // Keeps the table plus its index comfortably in memory at desk scale.
  static constexpr std::uint64_t kMaxEntries = 1ULL << 24;

  // Values drawn independently and uniformly from [range_size], so a fixed
  // seed pins the whole table.
  static FunctionTable sample(std::uint64_t domain_size, std::uint64_t range_size,
                              std::uint64_t seed);

  // Restriction to the first subset_size domain points.
  FunctionTable restrict_front(std::uint64_t subset_size) const;

  std::uint32_t value(std::uint64_t x) const { return values_[x]; }
  std::uint64_t domain_size() const { return values_.size(); }
  std::uint64_t range_size() const { return range_size_; }
  std::uint64_t seed() const { return seed_; }
  // Number of range points with at least one preimage.
  std::uint64_t image_size() const { return image_size_; }

  std::span<const std::uint32_t> preimages(std::uint32_t y) const {
    return {items_.data() + offsets_[y], items_.data() + offsets_[y + 1]};
  }
  std::uint64_t preimage_count(std::uint32_t y) const {
    return offsets_[y + 1] - offsets_[y];
  }

  // Flat binary layout (header: domain, range, seed; body: 32-bit values),
  // for reproducing a run offline.  Little-endian, like every platform this
  // targets.
  void save(const std::filesystem::path& path) const;
  static FunctionTable load(const std::filesystem::path& path);

  // Used by WideTable when carving cells; values must be in [range_size).
  static FunctionTable from_values(std::vector<std::uint32_t> values,
                                   std::uint64_t range_size, std::uint64_t seed);

 private:
  FunctionTable() = default;
  void build_index();

  std::vector<std::uint32_t> values_;
  std::uint64_t range_size_ = 0;
  std::uint64_t seed_ = 0;
  std::uint64_t image_size_ = 0;
  // CSR layout: preimages of y sit at items_[offsets_[y] .. offsets_[y+1]).
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> items_;
};

// Raw value array for a function whose domain exceeds its range (collision
// instances), with no preimage index of its own.  Proper FunctionTables are
// carved out of it by restriction or disjoint cells.
class WideTable {
 public:
  static WideTable sample(std::uint64_t domain_size, std::uint64_t range_size,
                          std::uint64_t seed);

  // Restriction to the first subset_size points (subset_size <= range).
  FunctionTable restrict_front(std::uint64_t subset_size) const;
  // Cell [offset, offset + size), renumbered from 0.
  FunctionTable cell(std::uint64_t offset, std::uint64_t size) const;

  std::uint32_t value(std::uint64_t x) const { return values_[x]; }
  std::uint64_t domain_size() const { return values_.size(); }
  std::uint64_t range_size() const { return range_size_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::vector<std::uint32_t> values_;
  std::uint64_t range_size_ = 0;
  std::uint64_t seed_ = 0;
};

}  // namespace qclaw
