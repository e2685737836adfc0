#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "qclaw/function_table.hpp"
#include "qclaw/image_list.hpp"
#include "qclaw/params.hpp"
#include "qclaw/query_ledger.hpp"
#include "qclaw/rng.hpp"

namespace qclaw {

// x_1..x_l under functions f_1..f_l with f_1(x_1) = ... = f_l(x_l) = y.
struct ClawTuple {
  std::vector<std::uint32_t> xs;
  std::uint32_t y = 0;
};

// l pairwise-distinct preimages of y under one function.
struct CollisionTuple {
  std::vector<std::uint32_t> xs;
  std::uint32_t y = 0;
};

using Solution = std::variant<std::monostate, ClawTuple, CollisionTuple>;

struct AlgoResult {
  Solution solution;
  std::uint64_t total_queries = 0;
  std::vector<std::uint64_t> per_level_queries;
  std::uint64_t trial_seed = 0;

  bool aborted() const { return std::holds_alternative<std::monostate>(solution); }
};

bool verify_claw(const ClawTuple& claw, const std::vector<FunctionTable>& fs);
bool verify_collision(const CollisionTuple& col, const FunctionTable& f);
bool verify_collision(const CollisionTuple& col, const WideTable& f);

// Two-function claw finder: list the first t1 points of f1, then one
// target-membership search on f2 against the list's images, then join.
// t1 = 0 selects the balanced default ceil(N^(1/3)).
AlgoResult bht_claw(const FunctionTable& f1, const FunctionTable& f2,
                    std::uint64_t t1, QueryLedger& ledger, Prng& rng);

// Recursive l-collision finder over a single wide function, domain at least
// l times the range.  The domain is split into l disjoint cells: lists are
// built from cell 1, and the level-j extension searches cell j, which makes
// every tuple's entries distinct by construction and keeps repeated
// sub-calls from reusing inputs (cell 1 is consumed through a cursor).
// ceil(N^(1/3^(l-1))) sub-collisions feed the top-level extension; the
// two-cell base case is the same procedure as bht_claw.
AlgoResult hsx_collision(const WideTable& f, int l, QueryLedger& ledger, Prng& rng);

// Test instrumentation for the multiclaw finder.
struct MclawHooks {
  // Fired as level i (1-based) begins, with |Im(f_i) ∩ L'_{i-1}| at that
  // moment (for i = 1 that is just |Im(f_1)|).
  std::function<void(int level, std::uint64_t image_overlap)> on_level_start;
  // Fired after each completed (i, j) step with the list under construction
  // and the list being consumed (null at level 1).
  std::function<void(int level, std::uint64_t step, const ImageList& current,
                     const ImageList* previous)>
      after_step;
};

// Multiclaw finder with list reuse.  Level 1 takes fresh domain points of
// f_1 in enumeration order at 1 query each; level i >= 2 runs
// target-membership searches of f_i against the image set of the previous
// level's list, consuming the matched record and its image as it goes.
// Loop bounds are params.capacities; the ledger (budget params.qlimit)
// aborts the run wherever it is exhausted.
AlgoResult mclaw(const std::vector<FunctionTable>& fs, const MclawParams& params,
                 QueryLedger& ledger, Prng& rng, const MclawHooks* hooks = nullptr);

// l-collision finder for one wide function: partition the domain into l
// disjoint equal cells, restrict each to the range size if needed, and run
// the multiclaw finder on the restrictions.  Distinctness of the returned
// preimages follows from cell disjointness; the query count is exactly the
// underlying multiclaw run's.
AlgoResult collision_from_claw(const WideTable& f, int l, const MclawParams& params,
                               QueryLedger& ledger, Prng& rng,
                               const MclawHooks* hooks = nullptr);

}  // namespace qclaw
