// Copyright 2026 The IRELAND Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Iterative rule learning through clause generation.  Exact MILPs at the
// scale of the full DNF problem are expensive, so the search is split:
//
//   sub problem (SP)   finds one new AND clause maximizing coverage of a
//                      case subset while covering at most UB controls and
//                      differing from every pooled clause;
//   master (MP)        selects at most K pooled clauses maximizing case
//                      coverage subject to the same false-positive cap.
//
// Each configured cap UB_u drives its own sub-routine: alternate MP and
// SP solves, feeding the cases the master still misses back into the sub
// problem, until the miss count reaches tau_u, a new clause stops
// helping, or time runs out.  A final cap-free master then picks the
// best weighted-error rule from everything the bounds discovered.
//
// Sub-routines for distinct caps are independent except for the shared
// clause pool.  The driver interleaves up to `parallelism` sub-routines
// in fixed rounds (one MP+SP step per active bound per round, appends in
// bound order), which makes every schedule deterministic: the work an
// actual thread pool would do, replayed in a canonical order.

#ifndef IRELAND_IRELAND_HPP_
#define IRELAND_IRELAND_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "ireland/clause_pool.hpp"
#include "ireland/dataset.hpp"
#include "ireland/milp.hpp"
#include "ireland/rules.hpp"

namespace ireland {

// A false-positive cap, either an absolute control count or a fraction
// of the control class resolved as ceil(value * num_controls).
struct UpperBound {
  double value = 0.0;
  bool is_fraction = false;

  std::int64_t resolve(std::size_t num_controls) const;
};

struct IrelandConfig {
  // Non-empty, strictly increasing within each representation.
  std::vector<UpperBound> upper_bounds = {{0.0, false}};
  // Case-subset size N_s for the sub problems.
  std::size_t subsample_size = 100;
  double per_solve_time_limit = 120.0;  // seconds
  // Allowed misses per bound; one entry broadcasts to every bound.
  std::vector<std::int64_t> max_false_negatives = {0};
  int max_clauses = 2;      // K, clauses in the final rule
  int max_clause_size = 2;  // M, features per clause
  double global_time_budget = 14400.0;  // seconds
  std::uint64_t seed = 0;
  // Sub-routines interleaved at once; 0 means one slot per bound.
  int parallelism = 0;

  void validate() const;  // throws std::invalid_argument
  std::int64_t tau(std::size_t u) const;
};

// One row per solve, in execution order.
struct SolveTraceRow {
  int bound_index = 0;      // position of UB_u in the config; -1 = final
  std::int64_t ub = 0;      // resolved cap; -1 for the final master
  int iteration = 0;        // 0 = initialization, then 1, 2, ...
  std::string problem;      // "sp-init", "mp", "sp", "mp-final"
  double objective = 0.0;   // solver objective, NaN when no solution
  double best_bound = 0.0;
  double seconds = 0.0;
  std::size_t pool_size = 0;  // after any append this solve caused
  SolveStatus status = SolveStatus::kOptimal;
};

struct IrelandResult {
  DnfRule rule{std::vector<AndClause>{}};
  ClausePool pool;
  double objective = 0.0;             // weighted error, re-evaluated
  double normalized_objective = 0.0;  // objective / num_samples
  std::vector<SolveTraceRow> trace;
  bool budget_limited = false;
};

// The clause generator: maximize sum of y over case_subset with
//   sum_{controls} y <= ub, AND-linking of every y to the clause s,
//   one exclusion row per pooled clause, and 1 <= |clause| <= max_clause_size.
// Variables: s_1_<j>, y_<n>; rows: card_1, min_size_1, fp_cap,
// and_case_<n>_1, and_ctrl_<n>_1, excl_<i> (0-based pool index).
MilpModel build_subproblem(const BinaryDataset& ds,
                           std::span<const std::size_t> case_subset,
                           std::int64_t ub, const ClausePool& pool,
                           int max_clause_size);

// The clause selector: maximize sum of case y with q_<k> picking pooled
// clauses, y linked to the picks through the cached coverage, FP <= ub,
// and sum q <= max_clauses.  Controls no pooled clause covers get no
// variable.  Rows: pick_cap, fp_cap, or_case_<n>, or_ctrl_<n>.
MilpModel build_subroutine_master(const ClausePool& pool,
                                  const BinaryDataset& ds, std::int64_t ub,
                                  int max_clauses);

// The cap-free selector the final rule comes from: minimize the weighted
// error over pool subsets of size <= max_clauses.
MilpModel build_final_master(const ClausePool& pool, const BinaryDataset& ds,
                             int max_clauses);

// One sub-problem solve per configured bound, each on all controls plus
// a seeded random case subset of size min(subsample_size, num_cases);
// every produced clause is appended.  Appends one trace row per solve.
ClausePool initialize_pool(const BinaryDataset& ds, const IrelandConfig& cfg,
                           std::vector<SolveTraceRow>* trace = nullptr);

struct SubroutineOutcome {
  bool reached_target = false;     // false negatives <= tau
  bool budget_limited = false;     // stopped by the global clock
  std::int64_t false_negatives = 0;  // after the last master solve
  int iterations = 0;              // master solves performed
};

// Runs bound u's alternation to completion against the shared pool.
// seconds_left caps the total time (infinity = config budget only).
SubroutineOutcome run_subroutine(std::size_t u, const BinaryDataset& ds,
                                 ClausePool& pool, const IrelandConfig& cfg,
                                 std::vector<SolveTraceRow>* trace = nullptr,
                                 double seconds_left = -1.0);

// Initialization, all sub-routines, final master.  The returned
// objective is balanced_error of the returned rule, recomputed from the
// dataset rather than read off the solver.
IrelandResult run_ireland(const BinaryDataset& ds, const IrelandConfig& cfg);

}  // namespace ireland

#endif  // IRELAND_IRELAND_HPP_
