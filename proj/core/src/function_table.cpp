#include "qclaw/function_table.hpp"

#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>

#include "qclaw/rng.hpp"

namespace qclaw {

namespace {

constexpr char kMagic[8] = {'q', 'c', 'l', 'a', 'w', 'f', 't', '1'};

std::vector<std::uint32_t> sample_values(std::uint64_t domain_size,
                                         std::uint64_t range_size,
                                         std::uint64_t seed) {
  if (domain_size == 0 || range_size == 0)
    throw std::invalid_argument("function table: sizes must be positive");
  if (domain_size > FunctionTable::kMaxEntries || range_size > FunctionTable::kMaxEntries)
    throw std::invalid_argument("function table: exceeds in-memory table budget (2^24)");
  Prng rng(seed);
  std::vector<std::uint32_t> values(domain_size);
  for (auto& v : values) v = static_cast<std::uint32_t>(rng.bounded(range_size));
  return values;
}

}  // namespace

void FunctionTable::build_index() {
  const std::uint64_t n = values_.size();
  offsets_.assign(range_size_ + 1, 0);
  for (std::uint32_t v : values_) offsets_[v + 1] += 1;
  image_size_ = 0;
  for (std::uint64_t y = 0; y < range_size_; ++y) {
    if (offsets_[y + 1] != 0) image_size_ += 1;
    offsets_[y + 1] += offsets_[y];
  }
  items_.resize(n);
  std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::uint64_t x = 0; x < n; ++x) items_[cursor[values_[x]]++] = static_cast<std::uint32_t>(x);
}

FunctionTable FunctionTable::sample(std::uint64_t domain_size, std::uint64_t range_size,
                                    std::uint64_t seed) {
  if (domain_size > range_size)
    throw std::invalid_argument(
        "FunctionTable::sample: domain exceeds range, restrict the domain first");
  return from_values(sample_values(domain_size, range_size, seed), range_size, seed);
}

FunctionTable FunctionTable::from_values(std::vector<std::uint32_t> values,
                                         std::uint64_t range_size, std::uint64_t seed) {
  if (values.empty() || range_size == 0)
    throw std::invalid_argument("function table: sizes must be positive");
  if (values.size() > range_size)
    throw std::invalid_argument("function table: domain exceeds range");
  if (range_size > kMaxEntries)
    throw std::invalid_argument("function table: exceeds in-memory table budget (2^24)");
  for (std::uint32_t v : values)
    if (v >= range_size) throw std::invalid_argument("function table: value out of range");
  FunctionTable t;
  t.values_ = std::move(values);
  t.range_size_ = range_size;
  t.seed_ = seed;
  t.build_index();
  return t;
}

FunctionTable FunctionTable::restrict_front(std::uint64_t subset_size) const {
  if (subset_size == 0 || subset_size > domain_size())
    throw std::invalid_argument("restrict_front: subset size out of range");
  std::vector<std::uint32_t> values(values_.begin(), values_.begin() + subset_size);
  return from_values(std::move(values), range_size_, seed_);
}

void FunctionTable::save(const std::filesystem::path& path) const {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(std::fopen(path.c_str(), "wb"),
                                                    std::fclose);
  if (!f) throw std::runtime_error("FunctionTable::save: cannot open " + path.string());
  const std::uint64_t header[3] = {domain_size(), range_size_, seed_};
  if (std::fwrite(kMagic, 1, sizeof kMagic, f.get()) != sizeof kMagic ||
      std::fwrite(header, sizeof header[0], 3, f.get()) != 3 ||
      std::fwrite(values_.data(), sizeof values_[0], values_.size(), f.get()) !=
          values_.size())
    throw std::runtime_error("FunctionTable::save: short write to " + path.string());
}

FunctionTable FunctionTable::load(const std::filesystem::path& path) {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(std::fopen(path.c_str(), "rb"),
                                                    std::fclose);
  if (!f) throw std::runtime_error("FunctionTable::load: cannot open " + path.string());
  char magic[8];
  std::uint64_t header[3];
  if (std::fread(magic, 1, sizeof magic, f.get()) != sizeof magic ||
      std::memcmp(magic, kMagic, sizeof magic) != 0)
    throw std::runtime_error("FunctionTable::load: bad magic in " + path.string());
  if (std::fread(header, sizeof header[0], 3, f.get()) != 3)
    throw std::runtime_error("FunctionTable::load: truncated header in " + path.string());
  if (header[0] == 0 || header[0] > kMaxEntries || header[1] == 0 ||
      header[1] > kMaxEntries)
    throw std::runtime_error("FunctionTable::load: implausible sizes in " + path.string());
  std::vector<std::uint32_t> values(header[0]);
  if (std::fread(values.data(), sizeof values[0], values.size(), f.get()) != values.size())
    throw std::runtime_error("FunctionTable::load: truncated body in " + path.string());
  for (std::uint32_t v : values)
    if (v >= header[1])
      throw std::runtime_error("FunctionTable::load: value out of range in " + path.string());
  return from_values(std::move(values), header[1], header[2]);
}

WideTable WideTable::sample(std::uint64_t domain_size, std::uint64_t range_size,
                            std::uint64_t seed) {
  WideTable t;
  t.values_ = sample_values(domain_size, range_size, seed);
  t.range_size_ = range_size;
  t.seed_ = seed;
  return t;
}

FunctionTable WideTable::restrict_front(std::uint64_t subset_size) const {
  if (subset_size > range_size_)
    throw std::invalid_argument("restrict_front: subset larger than the range");
  return cell(0, subset_size);
}

FunctionTable WideTable::cell(std::uint64_t offset, std::uint64_t size) const {
  if (size == 0 || offset + size > domain_size())
    throw std::invalid_argument("WideTable::cell: window out of range");
  std::vector<std::uint32_t> values(values_.begin() + offset,
                                    values_.begin() + offset + size);
  return FunctionTable::from_values(std::move(values), range_size_, seed_);
}

}  // namespace qclaw
