#include "qclaw/claw_finders.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "qclaw/mtps.hpp"

namespace qclaw {

bool verify_claw(const ClawTuple& claw, const std::vector<FunctionTable>& fs) {
  if (claw.xs.size() != fs.size() || fs.empty()) return false;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (claw.xs[i] >= fs[i].domain_size()) return false;
    if (fs[i].value(claw.xs[i]) != claw.y) return false;
  }
  return true;
}

namespace {

template <typename Table>
bool verify_collision_impl(const CollisionTuple& col, const Table& f) {
  if (col.xs.empty()) return false;
  std::unordered_set<std::uint32_t> seen;
  for (std::uint32_t x : col.xs) {
    if (x >= f.domain_size()) return false;
    if (!seen.insert(x).second) return false;
    if (f.value(x) != col.y) return false;
  }
  return true;
}

}  // namespace

bool verify_collision(const CollisionTuple& col, const FunctionTable& f) {
  return verify_collision_impl(col, f);
}
bool verify_collision(const CollisionTuple& col, const WideTable& f) {
  return verify_collision_impl(col, f);
}

AlgoResult bht_claw(const FunctionTable& f1, const FunctionTable& f2,
                    std::uint64_t t1, QueryLedger& ledger, Prng& rng) {
  if (f1.range_size() != f2.range_size())
    throw std::invalid_argument("bht_claw: mismatched ranges");
  const std::uint64_t n = f1.range_size();
  if (t1 == 0) t1 = static_cast<std::uint64_t>(std::ceil(pow_fraction(n, 1, 3)));
  if (t1 > f1.domain_size())
    throw std::invalid_argument("bht_claw: list size exceeds the domain of f1");

  AlgoResult res;
  res.per_level_queries.assign(2, 0);
  const std::uint64_t start = ledger.count();

  ImageList list;
  for (std::uint64_t x = 0; x < t1; ++x) {
    if (ledger.charge(1) == ChargeStatus::kAborted) {
      res.per_level_queries[0] = ledger.count() - start;
      res.total_queries = ledger.count() - start;
      return res;
    }
    list.insert({{static_cast<std::uint32_t>(x)}, f1.value(x)});
  }
  res.per_level_queries[0] = ledger.count() - start;

  PreimageUnion targets(f2);
  for (const ClawRecord& rec : list.records()) targets.add_target(rec.y);
  const GroverOutcome out = mtps(f2, targets, ledger, rng);
  res.per_level_queries[1] = out.queries_charged;
  res.total_queries = ledger.count() - start;
  if (!out.found) return res;

  const auto x2 = static_cast<std::uint32_t>(*out.found);
  const std::uint32_t y = f2.value(x2);
  const ClawRecord rec = list.take(y);
  res.solution = ClawTuple{{rec.xs[0], x2}, y};
  return res;
}

namespace {

// Shared state of one recursive collision run.  Lists are always built from
// cell 0 (consumed via leaf_cursor so sub-calls never reuse an input) and
// the level-j extension searches cell j-1; a tuple therefore takes one entry
// per cell and is distinct by construction.
struct HsxRun {
  const WideTable& f;
  std::vector<FunctionTable> cells;
  std::vector<std::uint64_t> offsets;
  std::uint64_t t1 = 0;
  std::uint64_t leaf_cursor = 0;
  std::vector<std::uint64_t> per_level;
  QueryLedger& ledger;
  Prng& rng;

  std::optional<ClawRecord> build(int depth);
};

std::optional<ClawRecord> HsxRun::build(int depth) {
  const std::uint64_t n = f.range_size();
  ImageList list;

  if (depth == 2) {
    // Base case, the two-cell birthday procedure.
    if (leaf_cursor + t1 > cells[0].domain_size())
      throw std::runtime_error("hsx_collision: cell 0 exhausted by leaf lists");
    for (std::uint64_t i = 0; i < t1; ++i) {
      const std::uint64_t before = ledger.count();
      const ChargeStatus status = ledger.charge(1);
      per_level[0] += ledger.count() - before;
      if (status == ChargeStatus::kAborted) return std::nullopt;
      const std::uint64_t x = leaf_cursor++;
      list.insert({{static_cast<std::uint32_t>(offsets[0] + x)}, cells[0].value(x)});
    }
    PreimageUnion targets(cells[1]);
    for (const ClawRecord& rec : list.records()) targets.add_target(rec.y);
    const GroverOutcome out = mtps(cells[1], targets, ledger, rng);
    per_level[1] += out.queries_charged;
    if (!out.found) return std::nullopt;
    const auto x2 = static_cast<std::uint32_t>(*out.found);
    const std::uint32_t y = cells[1].value(x2);
    ClawRecord rec = list.take(y);
    rec.xs.push_back(static_cast<std::uint32_t>(offsets[1] + x2));
    rec.y = y;
    return rec;
  }

  // ceil(N^(1/3^(depth-1))) sub-collisions, then one direct extension search
  // in the depth's own cell (the membership predicate costs a single query).
  long long den = 1;
  for (int i = 1; i < depth; ++i) den *= 3;
  const auto reps = static_cast<std::uint64_t>(std::ceil(pow_fraction(n, 1, den)));
  for (std::uint64_t r = 0; r < reps; ++r) {
    std::optional<ClawRecord> rec = build(depth - 1);
    if (!rec) return std::nullopt;
    list.insert(std::move(*rec));
  }

  const FunctionTable& cell = cells[depth - 1];
  PreimageUnion targets(cell);
  for (const ClawRecord& rec : list.records()) targets.add_target(rec.y);
  const SearchSpace space{cell.domain_size(), targets.marked_count()};
  const GroverOutcome out = bbht_search(space, targets, ledger, rng);
  per_level[depth - 1] += out.queries_charged;
  if (!out.found) return std::nullopt;
  const auto x = static_cast<std::uint32_t>(*out.found);
  const std::uint32_t y = cell.value(x);
  ClawRecord rec = list.take(y);
  rec.xs.push_back(static_cast<std::uint32_t>(offsets[depth - 1] + x));
  rec.y = y;
  return rec;
}

}  // namespace

AlgoResult hsx_collision(const WideTable& f, int l, QueryLedger& ledger, Prng& rng) {
  if (l < 2) throw std::invalid_argument("hsx_collision: l must be at least 2");
  const std::uint64_t n = f.range_size();
  if (f.domain_size() < static_cast<std::uint64_t>(l) * n)
    throw std::invalid_argument("hsx_collision: domain must be at least l times the range");

  HsxRun run{f, {}, {}, 0, 0, {}, ledger, rng};
  const std::uint64_t stride = f.domain_size() / l;
  for (int i = 0; i < l; ++i) {
    run.offsets.push_back(static_cast<std::uint64_t>(i) * stride);
    run.cells.push_back(f.cell(run.offsets.back(), n));
  }
  run.t1 = static_cast<std::uint64_t>(std::ceil(pow_fraction(n, 1, 3)));
  run.per_level.assign(l, 0);

  AlgoResult res;
  const std::uint64_t start = ledger.count();
  std::optional<ClawRecord> rec = run.build(l);
  res.per_level_queries = std::move(run.per_level);
  res.total_queries = ledger.count() - start;
  if (rec) res.solution = CollisionTuple{std::move(rec->xs), rec->y};
  return res;
}

AlgoResult mclaw(const std::vector<FunctionTable>& fs, const MclawParams& params,
                 QueryLedger& ledger, Prng& rng, const MclawHooks* hooks) {
  const int l = params.l;
  if (static_cast<int>(fs.size()) != l)
    throw std::invalid_argument("mclaw: expected one function per level");
  for (const FunctionTable& f : fs) {
    if (f.range_size() != params.range_size)
      throw std::invalid_argument("mclaw: range disagrees with params");
    if (static_cast<double>(f.domain_size()) * params.c_n <
        static_cast<double>(params.range_size))
      throw std::invalid_argument("mclaw: domain smaller than range/c_N");
  }
  if (params.capacities.front() > fs[0].domain_size())
    throw std::invalid_argument("mclaw: level-1 capacity exceeds the domain of f_1");

  AlgoResult res;
  res.per_level_queries.assign(l, 0);
  const std::uint64_t start = ledger.count();

  ImageList prev;
  for (int i = 1; i <= l; ++i) {
    const FunctionTable& f = fs[i - 1];
    const std::uint64_t level_start = ledger.count();

    if (hooks && hooks->on_level_start) {
      std::uint64_t overlap = 0;
      if (i == 1) {
        overlap = f.image_size();
      } else {
        for (const ClawRecord& rec : prev.records())
          if (f.preimage_count(rec.y) > 0) overlap += 1;
      }
      hooks->on_level_start(i, overlap);
    }

    ImageList cur;
    PreimageUnion targets(f);
    if (i >= 2)
      for (const ClawRecord& rec : prev.records()) targets.add_target(rec.y);

    const std::uint64_t capacity = params.capacities[i - 1];
    for (std::uint64_t j = 0; j < capacity; ++j) {
      if (i == 1) {
        // Fresh domain point in enumeration order, one query.
        const ChargeStatus status = ledger.charge(1);
        if (status == ChargeStatus::kAborted) {
          res.per_level_queries[i - 1] = ledger.count() - level_start;
          res.total_queries = ledger.count() - start;
          return res;
        }
        const auto x = static_cast<std::uint32_t>(j);
        cur.insert({{x}, f.value(x)});
      } else {
        const GroverOutcome out = mtps(f, targets, ledger, rng);
        if (!out.found) {
          res.per_level_queries[i - 1] = ledger.count() - level_start;
          res.total_queries = ledger.count() - start;
          return res;
        }
        const auto x = static_cast<std::uint32_t>(*out.found);
        const std::uint32_t y = f.value(x);
        ClawRecord rec = prev.take(y);
        targets.remove_target(y);
        rec.xs.push_back(x);
        rec.y = y;
        cur.insert(std::move(rec));
      }
      if (hooks && hooks->after_step)
        hooks->after_step(i, j + 1, cur, i >= 2 ? &prev : nullptr);
    }
    res.per_level_queries[i - 1] = ledger.count() - level_start;
    prev = std::move(cur);
  }

  res.total_queries = ledger.count() - start;
  res.solution = ClawTuple{prev.records().front().xs, prev.records().front().y};
  return res;
}

AlgoResult collision_from_claw(const WideTable& f, int l, const MclawParams& params,
                               QueryLedger& ledger, Prng& rng, const MclawHooks* hooks) {
  if (l != params.l) throw std::invalid_argument("collision_from_claw: l disagrees with params");
  if (f.range_size() != params.range_size)
    throw std::invalid_argument("collision_from_claw: range disagrees with params");
  if (static_cast<double>(f.domain_size()) * params.c_n <
      static_cast<double>(l) * static_cast<double>(f.range_size()))
    throw std::invalid_argument(
        "collision_from_claw: domain must be at least l*range/c_N");

  const std::uint64_t stride = f.domain_size() / l;
  const std::uint64_t cell_size = std::min<std::uint64_t>(stride, f.range_size());
  std::vector<FunctionTable> cells;
  std::vector<std::uint64_t> offsets;
  for (int i = 0; i < l; ++i) {
    offsets.push_back(static_cast<std::uint64_t>(i) * stride);
    cells.push_back(f.cell(offsets.back(), cell_size));
  }

  AlgoResult res = mclaw(cells, params, ledger, rng, hooks);
  if (!res.aborted()) {
    const ClawTuple& claw = std::get<ClawTuple>(res.solution);
    CollisionTuple col;
    col.y = claw.y;
    for (int i = 0; i < l; ++i)
      col.xs.push_back(static_cast<std::uint32_t>(offsets[i] + claw.xs[i]));
    res.solution = std::move(col);
  }
  return res;
}

}  // namespace qclaw
