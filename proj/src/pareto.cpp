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

#include "ireland/pareto.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>

#include "ireland/formulations.hpp"
#include "ireland/ireland.hpp"

namespace ireland {
namespace {

using Clock = std::chrono::steady_clock;

// ceil(f * count) for a nonnegative fraction.
std::int64_t ceil_scaled(Fraction f, std::int64_t count) {
  if (f.den < 1) throw std::invalid_argument("fraction denominator must be >= 1");
  if (f.num < 0) throw std::invalid_argument("metric floor cannot be negative");
  return (f.num * count + f.den - 1) / f.den;
}

std::vector<int> metric_vars(const MilpModel& m, const BinaryDataset& ds,
                             bool cases) {
  std::vector<int> out;
  for (std::size_t n : cases ? ds.cases() : ds.controls()) {
    const int id = m.variable_index("y_" + std::to_string(n + 1));
    if (id >= 0) out.push_back(id);
  }
  return out;
}

ParetoPoint evaluate_selection(const MilpModel& m, const SolveResult& r,
                               const ClausePool& pool, const BinaryDataset& ds,
                               double seconds) {
  std::vector<AndClause> picked;
  for (std::size_t k = 0; k < pool.size(); ++k) {
    const int id = m.variable_index("q_" + std::to_string(k + 1));
    if (id >= 0 && r.assignment[static_cast<std::size_t>(id)] > 0.5) {
      picked.push_back(pool.clause(k));
    }
  }
  ParetoPoint p;
  p.rule = DnfRule(std::move(picked));
  const ConfusionCounts cc = confusion(rule_predict(p.rule, ds), ds);
  p.true_positives = cc.tp;
  p.false_positives = cc.fp;
  p.sensitivity = sensitivity(cc);
  p.specificity = specificity(cc);
  p.seconds = seconds;
  return p;
}

SolveOptions timed_options(const MilpModel& m, double limit) {
  SolveOptions o;
  o.time_limit_seconds = std::max(0.01, limit);
  o.branch_priority = s_first_priorities(m);
  return o;
}

// Both bound solves share one skeleton: a primary solve, then a secondary
// solve with the primary value pinned.
BoundSolve lexicographic_solve(const ClausePool& pool, const BinaryDataset& ds,
                               int max_clauses, double time_limit,
                               bool sens_primary, std::int64_t floor_value) {
  const auto t0 = Clock::now();
  BoundSolve out;
  const std::int64_t n0 = static_cast<std::int64_t>(ds.num_controls());

  MilpModel m = build_subroutine_master(
      pool, ds, sens_primary ? n0 - floor_value : n0, max_clauses);
  const std::vector<int> case_y = metric_vars(m, ds, true);
  const std::vector<int> ctrl_y = metric_vars(m, ds, false);
  const std::vector<double> case_ones(case_y.size(), 1.0);
  const std::vector<double> ctrl_ones(ctrl_y.size(), 1.0);

  if (!sens_primary) {
    // Specificity first: minimize false positives subject to the
    // sensitivity floor; the builder's cap row is left vacuous.
    m.add_constraint("tp_floor", case_y, case_ones, Relation::kGreaterEq,
                     static_cast<double>(floor_value));
    m.set_objective(ObjSense::kMinimize, ctrl_y, ctrl_ones);
  }
  const SolveResult first =
      solve_branch_and_bound(m, timed_options(m, time_limit));
  out.time_limited = first.status == SolveStatus::kFeasibleTimeLimit ||
                     first.status == SolveStatus::kMemoryAbort;
  if (first.status == SolveStatus::kInfeasible) return out;
  if (!first.has_solution()) return out;
  out.feasible = true;

  std::int64_t tp1 = 0;
  for (int id : case_y) {
    if (first.assignment[static_cast<std::size_t>(id)] >= 0.5) ++tp1;
  }
  std::int64_t fp1 = 0;
  for (int id : ctrl_y) {
    if (first.assignment[static_cast<std::size_t>(id)] >= 0.5) ++fp1;
  }

  // Pin the primary metric, optimize the secondary.
  if (sens_primary) {
    m.add_constraint("tp_floor", case_y, case_ones, Relation::kGreaterEq,
                     static_cast<double>(tp1));
    m.set_objective(ObjSense::kMinimize, ctrl_y, ctrl_ones);
  } else {
    m.add_constraint("fp_ceiling", ctrl_y, ctrl_ones, Relation::kLessEq,
                     static_cast<double>(fp1));
    m.set_objective(ObjSense::kMaximize, case_y, case_ones);
  }
  const double left =
      time_limit - std::chrono::duration<double>(Clock::now() - t0).count();
  const SolveResult second =
      solve_branch_and_bound(m, timed_options(m, left));
  out.time_limited = out.time_limited ||
                     second.status == SolveStatus::kFeasibleTimeLimit ||
                     second.status == SolveStatus::kMemoryAbort;
  const SolveResult& chosen = second.has_solution() ? second : first;
  const double seconds =
      std::chrono::duration<double>(Clock::now() - t0).count();
  out.point = evaluate_selection(m, chosen, pool, ds, seconds);
  return out;
}

}  // namespace

void CurveConfig::validate() const {
  if (!(epsilon_gap > 0.0) || epsilon_gap > 1.0) {
    throw std::invalid_argument("gap threshold must be in (0, 1]");
  }
  if (max_clauses < 1) throw std::invalid_argument("need at least one clause");
  if (!(per_solve_time_limit > 0.0)) {
    throw std::invalid_argument("per-solve time limit must be positive");
  }
  if (!(time_budget > 0.0)) {
    throw std::invalid_argument("time budget must be positive");
  }
}

BoundSolve max_sens_given_spec(const ClausePool& pool, const BinaryDataset& ds,
                               Fraction spec_lb, int max_clauses,
                               double time_limit) {
  const std::int64_t n0 = static_cast<std::int64_t>(ds.num_controls());
  const std::int64_t tn_req = ceil_scaled(spec_lb, n0);
  if (tn_req > n0) {
    return BoundSolve{};  // specificity floor above 1 is unattainable
  }
  return lexicographic_solve(pool, ds, max_clauses, time_limit,
                             /*sens_primary=*/true, /*floor=*/tn_req);
}

BoundSolve max_spec_given_sens(const ClausePool& pool, const BinaryDataset& ds,
                               Fraction sens_lb, int max_clauses,
                               double time_limit) {
  const std::int64_t n1 = static_cast<std::int64_t>(ds.num_cases());
  const std::int64_t tp_req = ceil_scaled(sens_lb, n1);
  if (tp_req > n1) {
    return BoundSolve{};  // sensitivity floor above 1 is unattainable
  }
  return lexicographic_solve(pool, ds, max_clauses, time_limit,
                             /*sens_primary=*/false, /*floor=*/tp_req);
}

TradeOffCurve trade_off_curve(const ClausePool& pool, const BinaryDataset& ds,
                              const CurveConfig& cfg) {
  cfg.validate();
  if (pool.empty()) {
    throw std::invalid_argument("trade-off curve needs a non-empty pool");
  }
  const auto t0 = Clock::now();
  const double budget = cfg.time_budget;
  const std::int64_t n1 = static_cast<std::int64_t>(ds.num_cases());
  const std::int64_t n0 = static_cast<std::int64_t>(ds.num_controls());

  TradeOffCurve curve;
  // Frontier points keyed by true-positive count; the lexicographic
  // solves return the best false-positive count per key.
  std::map<std::int64_t, ParetoPoint> frontier;
  const auto note_limit = [&curve](const BoundSolve& b) {
    if (b.time_limited) curve.complete = false;
  };
  const auto insert = [&frontier](const ParetoPoint& p) {
    auto it = frontier.find(p.true_positives);
    if (it == frontier.end()) {
      frontier.emplace(p.true_positives, p);
      return true;
    }
    if (p.false_positives < it->second.false_positives) {
      it->second = p;
      return true;
    }
    return false;
  };
  const auto seconds_left = [&]() {
    return budget - std::chrono::duration<double>(Clock::now() - t0).count();
  };
  const auto solve_limit = [&]() {
    return std::min(cfg.per_solve_time_limit, seconds_left());
  };

  // Floor-zero extremes.
  {
    const BoundSolve right = max_sens_given_spec(pool, ds, Fraction{0, 1},
                                                 cfg.max_clauses, solve_limit());
    note_limit(right);
    if (right.feasible) insert(right.point);
    const BoundSolve left = max_spec_given_sens(pool, ds, Fraction{0, 1},
                                                cfg.max_clauses, solve_limit());
    note_limit(left);
    if (left.feasible) insert(left.point);
  }

  // Adjacent pairs with a wide metric gap, by true-positive interval.
  std::deque<std::pair<std::int64_t, std::int64_t>> open;
  const auto push_gaps = [&](std::int64_t lo, std::int64_t hi) {
    if (hi > lo) open.emplace_back(lo, hi);
  };
  {
    auto it = frontier.begin();
    if (it != frontier.end()) {
      for (auto next = std::next(it); next != frontier.end(); ++it, ++next) {
        push_gaps(it->first, next->first);
      }
    }
  }

  while (!open.empty()) {
    if (seconds_left() <= 0.0) {
      curve.complete = false;
      break;
    }
    const auto [lo, hi] = open.front();
    open.pop_front();
    if (!frontier.count(lo) || !frontier.count(hi)) continue;
    const ParetoPoint& a = frontier.at(lo);
    const ParetoPoint& b = frontier.at(hi);
    const double sens_gap = b.sensitivity - a.sensitivity;
    const double spec_gap = a.specificity - b.specificity;
    if (sens_gap <= cfg.epsilon_gap && spec_gap <= cfg.epsilon_gap) continue;

    BoundSolve probe;
    if (sens_gap > cfg.epsilon_gap) {
      probe = max_spec_given_sens(pool, ds, Fraction{lo + hi, 2 * n1},
                                  cfg.max_clauses, solve_limit());
    } else {
      // Mirror: bound specificity at the average of the attained values.
      const std::int64_t tn_sum =
          2 * n0 - a.false_positives - b.false_positives;
      probe = max_sens_given_spec(pool, ds, Fraction{tn_sum, 2 * n0},
                                  cfg.max_clauses, solve_limit());
    }
    note_limit(probe);
    bool split = false;
    if (probe.feasible && probe.point.true_positives > lo &&
        probe.point.true_positives < hi && insert(probe.point)) {
      split = true;
    }
    if (!split) {
      // The average bound came back with a known point; ask for the
      // next frontier point above `lo` directly.
      const BoundSolve next = max_spec_given_sens(
          pool, ds, Fraction{lo + 1, n1}, cfg.max_clauses, solve_limit());
      note_limit(next);
      if (next.feasible && next.point.true_positives > lo &&
          next.point.true_positives < hi && insert(next.point)) {
        probe = next;
        split = true;
      }
    }
    if (split) {
      push_gaps(lo, probe.point.true_positives);
      push_gaps(probe.point.true_positives, hi);
    }
  }

  for (auto& [tp, point] : frontier) curve.points.push_back(point);
  // Drop dominated points (possible only after truncated solves).
  std::vector<ParetoPoint> kept;
  for (const ParetoPoint& p : curve.points) {
    bool dominated = false;
    for (const ParetoPoint& q : curve.points) {
      const bool better_or_equal = q.true_positives >= p.true_positives &&
                                   q.false_positives <= p.false_positives;
      const bool strictly = q.true_positives > p.true_positives ||
                            q.false_positives < p.false_positives;
      if (better_or_equal && strictly) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(p);
  }
  curve.points = std::move(kept);
  std::sort(curve.points.begin(), curve.points.end(),
            [](const ParetoPoint& a, const ParetoPoint& b) {
              return a.sensitivity < b.sensitivity;
            });
  return curve;
}

}  // namespace ireland
