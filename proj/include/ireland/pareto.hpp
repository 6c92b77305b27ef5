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
// Sensitivity/specificity trade-off curves over a clause pool.  Each
// curve point is the best rule (at most K pooled clauses) for one side
// of the trade-off: maximize sensitivity subject to a specificity floor,
// or the mirror image.  Floors are exact rationals, so a bound like
// "sensitivity >= (tp+1)/|cases|" selects exactly the rules covering
// more cases than tp, with no floating-point fence sitting.
//
// The curve starts from the two floor-zero extremes and repeatedly
// probes between adjacent points whose sensitivity (or specificity)
// differs by more than epsilon_gap: first at the average of the two
// attained values, then, when that returns a point already on the curve,
// directly beside the lower point, which either discovers the next
// frontier point or proves the pair has nothing between it.

#ifndef IRELAND_PARETO_HPP_
#define IRELAND_PARETO_HPP_

#include <cstdint>
#include <vector>

#include "ireland/clause_pool.hpp"
#include "ireland/dataset.hpp"
#include "ireland/milp.hpp"
#include "ireland/rules.hpp"

namespace ireland {

// num/den with den >= 1; values used as metric floors in [0, 1].
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

struct ParetoPoint {
  double sensitivity = 0.0;
  double specificity = 1.0;
  std::int64_t true_positives = 0;
  std::int64_t false_positives = 0;
  DnfRule rule{std::vector<AndClause>{}};
  double seconds = 0.0;  // solve time that produced the point
};

struct BoundSolve {
  // A selection meeting the floor exists.  Specificity floors are always
  // feasible (the empty rule has specificity 1); sensitivity floors can
  // be genuinely unattainable from the pool.
  bool feasible = false;
  // A solver limit interfered; when feasible, the point may be inexact.
  bool time_limited = false;
  ParetoPoint point;
};

struct CurveConfig {
  // Adjacent-point spacing worth refining, in (0, 1]; gaps at most this
  // wide are left alone, so 1.0 keeps only the extremes.
  double epsilon_gap = 0.02;
  int max_clauses = 2;  // K, clauses per selected rule
  double per_solve_time_limit = 120.0;
  double time_budget = kInfinity;  // whole-curve wall-clock cap

  void validate() const;  // throws std::invalid_argument
};

// Lexicographic pair of exact solves: maximize the primary metric under
// the floor, then optimize the secondary metric among the primary-optimal
// selections.  Metrics of the returned point are recomputed from its
// rule, never read off the solver.
BoundSolve max_sens_given_spec(const ClausePool& pool, const BinaryDataset& ds,
                               Fraction spec_lb, int max_clauses,
                               double time_limit = kInfinity);
BoundSolve max_spec_given_sens(const ClausePool& pool, const BinaryDataset& ds,
                               Fraction sens_lb, int max_clauses,
                               double time_limit = kInfinity);

struct TradeOffCurve {
  // Sorted by ascending sensitivity; specificity is nonincreasing and no
  // point is dominated by another.
  std::vector<ParetoPoint> points;
  // False when the time budget or a solver limit cut the search short.
  bool complete = true;
};

// Requires a non-empty pool (throws std::invalid_argument otherwise).
TradeOffCurve trade_off_curve(const ClausePool& pool, const BinaryDataset& ds,
                              const CurveConfig& cfg);

}  // namespace ireland

#endif  // IRELAND_PARETO_HPP_
