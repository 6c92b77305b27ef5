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

#include "ireland/ireland.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>

#include "ireland/formulations.hpp"

namespace ireland {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_until(Clock::time_point deadline) {
  return std::chrono::duration<double>(deadline - Clock::now()).count();
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Every subsample draw reads its own stream so serial and interleaved
// schedules see identical subsets.
std::uint64_t stream_seed(std::uint64_t seed, std::size_t u, int iteration) {
  std::uint64_t h = splitmix(seed);
  h = splitmix(h ^ (static_cast<std::uint64_t>(u) + 1));
  h = splitmix(h ^ (static_cast<std::uint64_t>(iteration) + 1));
  return h;
}

std::vector<std::size_t> draw_cases(std::span<const std::size_t> from,
                                    std::size_t want, std::uint64_t stream) {
  std::vector<std::size_t> picked(from.begin(), from.end());
  if (picked.size() <= want) return picked;
  std::mt19937_64 rng(stream);
  for (std::size_t i = 0; i < want; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, picked.size() - 1);
    std::swap(picked[i], picked[pick(rng)]);
  }
  picked.resize(want);
  std::sort(picked.begin(), picked.end());
  return picked;
}

SolveOptions make_options(const MilpModel& m, double limit) {
  SolveOptions o;
  o.time_limit_seconds = limit;
  o.branch_priority = s_first_priorities(m);
  return o;
}

// Per-solve cap: the configured limit is honored exactly, while the
// remaining-budget clamp is floored so that the last sliver of a draining
// budget cannot spawn degenerate near-zero solves.
double clamped_limit(double per_solve, double remaining) {
  return std::min(per_solve, std::max(0.01, remaining));
}

void record(std::vector<SolveTraceRow>* trace, int bound_index, std::int64_t ub,
            int iteration, const char* kind, const SolveResult& r,
            std::size_t pool_size) {
  if (!trace) return;
  SolveTraceRow row;
  row.bound_index = bound_index;
  row.ub = ub;
  row.iteration = iteration;
  row.problem = kind;
  row.objective = r.has_solution()
                      ? r.objective
                      : std::numeric_limits<double>::quiet_NaN();
  row.best_bound = r.best_bound;
  row.seconds = r.runtime_seconds;
  row.pool_size = pool_size;
  row.status = r.status;
  trace->push_back(row);
}

std::optional<AndClause> clause_from_solution(const MilpModel& m,
                                              const SolveResult& r) {
  if (!r.has_solution()) return std::nullopt;
  DnfRule rule = extract_rule(m, r.assignment);
  if (rule.clauses.empty()) return std::nullopt;
  return rule.clauses.front();
}

// Cases the master's solution leaves uncovered.
std::vector<std::size_t> missed_cases(const MilpModel& m, const SolveResult& r,
                                      const BinaryDataset& ds) {
  std::vector<std::size_t> missed;
  for (std::size_t n : ds.cases()) {
    const int id = m.variable_index("y_" + std::to_string(n + 1));
    if (id < 0 || r.assignment[static_cast<std::size_t>(id)] < 0.5) {
      missed.push_back(n);
    }
  }
  return missed;
}

// One bound's MP/SP alternation, advanced one iteration at a time so the
// driver can interleave several bounds deterministically.
class BoundRoutine {
 public:
  BoundRoutine(std::size_t u, std::int64_t ub) : u_(u), ub_(ub) {}

  bool running() const { return running_; }
  const SubroutineOutcome& outcome() const { return out_; }

  void step(const BinaryDataset& ds, ClausePool& pool,
            const IrelandConfig& cfg, std::vector<SolveTraceRow>* trace,
            Clock::time_point deadline) {
    if (!running_) return;
    double left = seconds_until(deadline);
    if (left <= 0.0) {
      out_.budget_limited = true;
      running_ = false;
      return;
    }
    ++out_.iterations;
    const int iter = out_.iterations;

    MilpModel mp = build_subroutine_master(pool, ds, ub_, cfg.max_clauses);
    const SolveResult mr = solve_branch_and_bound(
        mp, make_options(mp, clamped_limit(cfg.per_solve_time_limit, left)));
    record(trace, static_cast<int>(u_), ub_, iter, "mp", mr, pool.size());
    if (!mr.has_solution()) {
      running_ = false;
      return;
    }
    const std::vector<std::size_t> missed = missed_cases(mp, mr, ds);
    const std::int64_t tp =
        static_cast<std::int64_t>(ds.num_cases() - missed.size());
    out_.false_negatives = static_cast<std::int64_t>(missed.size());
    if (out_.false_negatives <= cfg.tau(u_)) {
      out_.reached_target = true;
      running_ = false;
      return;
    }
    if (iter > 1 && tp <= prev_tp_) {
      running_ = false;  // the appended clause did not raise coverage
      return;
    }
    prev_tp_ = tp;

    left = seconds_until(deadline);
    if (left <= 0.0) {
      out_.budget_limited = true;
      running_ = false;
      return;
    }
    const std::vector<std::size_t> subset =
        missed.size() > cfg.subsample_size
            ? draw_cases(missed, cfg.subsample_size,
                         stream_seed(cfg.seed, u_, iter))
            : missed;
    MilpModel sp =
        build_subproblem(ds, subset, ub_, pool, cfg.max_clause_size);
    const SolveResult sr = solve_branch_and_bound(
        sp, make_options(sp, clamped_limit(cfg.per_solve_time_limit, left)));
    const std::optional<AndClause> clause = clause_from_solution(sp, sr);
    const bool appended = clause.has_value() && pool.append(*clause, ds);
    record(trace, static_cast<int>(u_), ub_, iter, "sp", sr, pool.size());
    if (!appended) running_ = false;  // no usable clause from this bound
  }

 private:
  std::size_t u_;
  std::int64_t ub_;
  bool running_ = true;
  std::int64_t prev_tp_ = -1;
  SubroutineOutcome out_;
};

}  // namespace

std::int64_t UpperBound::resolve(std::size_t num_controls) const {
  if (!is_fraction) return std::llround(value);
  const double raw = value * static_cast<double>(num_controls);
  const std::int64_t nearest = std::llround(raw);
  if (std::fabs(raw - static_cast<double>(nearest)) < 1e-9) return nearest;
  return static_cast<std::int64_t>(std::ceil(raw));
}

void IrelandConfig::validate() const {
  if (upper_bounds.empty()) {
    throw std::invalid_argument("need at least one false-positive cap");
  }
  for (std::size_t i = 0; i < upper_bounds.size(); ++i) {
    const UpperBound& b = upper_bounds[i];
    if (b.is_fraction != upper_bounds.front().is_fraction) {
      throw std::invalid_argument(
          "caps must be all absolute or all fractional");
    }
    if (b.is_fraction) {
      if (b.value < 0.0 || b.value > 1.0) {
        throw std::invalid_argument("fractional cap outside [0, 1]");
      }
    } else {
      if (b.value < 0.0 ||
          std::fabs(b.value - std::round(b.value)) > 1e-9) {
        throw std::invalid_argument(
            "absolute cap must be a nonnegative integer");
      }
    }
    if (i > 0 && !(upper_bounds[i - 1].value < b.value)) {
      throw std::invalid_argument("caps must be strictly increasing");
    }
  }
  if (subsample_size < 1) {
    throw std::invalid_argument("subsample size must be at least 1");
  }
  if (max_false_negatives.size() != 1 &&
      max_false_negatives.size() != upper_bounds.size()) {
    throw std::invalid_argument(
        "miss allowances must have one entry or one per cap");
  }
  for (std::int64_t t : max_false_negatives) {
    if (t < 0) throw std::invalid_argument("miss allowance cannot be negative");
  }
  if (max_clauses < 1) throw std::invalid_argument("need at least one clause");
  if (max_clause_size < 1) {
    throw std::invalid_argument("clauses need at least one feature");
  }
  if (!(per_solve_time_limit > 0.0)) {
    throw std::invalid_argument("per-solve time limit must be positive");
  }
  if (!(global_time_budget > 0.0)) {
    throw std::invalid_argument("time budget must be positive");
  }
  if (parallelism < 0) {
    throw std::invalid_argument("parallelism cannot be negative");
  }
}

std::int64_t IrelandConfig::tau(std::size_t u) const {
  if (max_false_negatives.size() == 1) return max_false_negatives.front();
  return max_false_negatives.at(u);
}

MilpModel build_subproblem(const BinaryDataset& ds,
                           std::span<const std::size_t> case_subset,
                           std::int64_t ub, const ClausePool& pool,
                           int max_clause_size) {
  const std::size_t J = ds.num_features();
  if (ub < 0) throw std::invalid_argument("cap cannot be negative");
  if (max_clause_size < 1 || static_cast<std::size_t>(max_clause_size) > J) {
    throw std::invalid_argument("clause size cap must lie in [1, num_features]");
  }
  for (std::size_t i = 0; i < case_subset.size(); ++i) {
    const std::size_t n = case_subset[i];
    if (n >= ds.num_samples() || !ds.label(n)) {
      throw std::invalid_argument("subset entry is not a case");
    }
    if (i > 0 && case_subset[i - 1] >= n) {
      throw std::invalid_argument("subset must be strictly increasing");
    }
  }

  MilpModel m;
  for (std::size_t j = 0; j < J; ++j) {
    m.add_binary("s_1_" + std::to_string(j + 1));
  }
  for (std::size_t n : case_subset) {
    m.add_binary("y_" + std::to_string(n + 1));
  }
  for (std::size_t n : ds.controls()) {
    m.add_continuous("y_" + std::to_string(n + 1), 0.0, 1.0);
  }

  {
    std::vector<int> vars;
    std::vector<double> ones;
    for (std::size_t j = 0; j < J; ++j) {
      vars.push_back(static_cast<int>(j));
      ones.push_back(1.0);
    }
    std::vector<int> vars2 = vars;
    std::vector<double> ones2 = ones;
    m.add_constraint("card_1", std::move(vars), std::move(ones),
                     Relation::kLessEq, static_cast<double>(max_clause_size));
    m.add_constraint("min_size_1", std::move(vars2), std::move(ones2),
                     Relation::kGreaterEq, 1.0);
  }
  {
    std::vector<int> vars;
    std::vector<double> ones;
    for (std::size_t n : ds.controls()) {
      vars.push_back(m.variable_index("y_" + std::to_string(n + 1)));
      ones.push_back(1.0);
    }
    m.add_constraint("fp_cap", std::move(vars), std::move(ones),
                     Relation::kLessEq, static_cast<double>(ub));
  }
  for (std::size_t n : case_subset) {
    // J y_n + sum_j (1 - X_nj) s_j <= J.
    std::vector<int> vars{m.variable_index("y_" + std::to_string(n + 1))};
    std::vector<double> coeffs{static_cast<double>(J)};
    for (std::size_t j = 0; j < J; ++j) {
      if (!ds.x(n, j)) {
        vars.push_back(static_cast<int>(j));
        coeffs.push_back(1.0);
      }
    }
    m.add_constraint("and_case_" + std::to_string(n + 1) + "_1",
                     std::move(vars), std::move(coeffs), Relation::kLessEq,
                     static_cast<double>(J));
  }
  for (std::size_t n : ds.controls()) {
    // y_n + sum_j (1 - X_nj) s_j >= 1.
    std::vector<int> vars{m.variable_index("y_" + std::to_string(n + 1))};
    std::vector<double> coeffs{1.0};
    for (std::size_t j = 0; j < J; ++j) {
      if (!ds.x(n, j)) {
        vars.push_back(static_cast<int>(j));
        coeffs.push_back(1.0);
      }
    }
    m.add_constraint("and_ctrl_" + std::to_string(n + 1) + "_1",
                     std::move(vars), std::move(coeffs), Relation::kGreaterEq,
                     1.0);
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    // Hamming distance >= 1 from the pooled clause:
    //   sum_{j in c} s_j - sum_{j not in c} s_j <= |c| - 1.
    const AndClause& c = pool.clause(i);
    std::vector<std::uint8_t> member(J, 0);
    for (int j : c.features) member[static_cast<std::size_t>(j)] = 1;
    std::vector<int> vars;
    std::vector<double> coeffs;
    for (std::size_t j = 0; j < J; ++j) {
      vars.push_back(static_cast<int>(j));
      coeffs.push_back(member[j] ? 1.0 : -1.0);
    }
    m.add_constraint("excl_" + std::to_string(i), std::move(vars),
                     std::move(coeffs), Relation::kLessEq,
                     static_cast<double>(c.features.size()) - 1.0);
  }

  std::vector<int> obj_vars;
  std::vector<double> obj_coeffs;
  for (std::size_t n : case_subset) {
    obj_vars.push_back(m.variable_index("y_" + std::to_string(n + 1)));
    obj_coeffs.push_back(1.0);
  }
  m.set_objective(ObjSense::kMaximize, std::move(obj_vars),
                  std::move(obj_coeffs));
  return m;
}

namespace {

// Shared linking skeleton of the two masters.  Returns per-control
// coverage counts; controls covered by nothing get no variable.
std::vector<std::size_t> add_master_linking(MilpModel& m,
                                            const ClausePool& pool,
                                            const BinaryDataset& ds,
                                            int max_clauses) {
  const std::size_t P = pool.size();
  for (std::size_t k = 0; k < P; ++k) {
    m.add_binary("q_" + std::to_string(k + 1));
  }
  std::vector<std::size_t> covers(ds.num_samples(), 0);
  for (std::size_t k = 0; k < P; ++k) {
    for (std::size_t n = 0; n < ds.num_samples(); ++n) {
      if (pool.coverage(k).test(n)) ++covers[n];
    }
  }
  for (std::size_t n : ds.cases()) {
    m.add_continuous("y_" + std::to_string(n + 1), 0.0, 1.0);
  }
  for (std::size_t n : ds.controls()) {
    if (covers[n] > 0) m.add_binary("y_" + std::to_string(n + 1));
  }
  {
    std::vector<int> vars;
    std::vector<double> ones;
    for (std::size_t k = 0; k < P; ++k) {
      vars.push_back(static_cast<int>(k));
      ones.push_back(1.0);
    }
    m.add_constraint("pick_cap", std::move(vars), std::move(ones),
                     Relation::kLessEq, static_cast<double>(max_clauses));
  }
  for (std::size_t n : ds.cases()) {
    // y_n - sum_{k covering n} q_k <= 0.
    std::vector<int> vars{m.variable_index("y_" + std::to_string(n + 1))};
    std::vector<double> coeffs{1.0};
    for (std::size_t k = 0; k < P; ++k) {
      if (pool.coverage(k).test(n)) {
        vars.push_back(static_cast<int>(k));
        coeffs.push_back(-1.0);
      }
    }
    m.add_constraint("or_case_" + std::to_string(n + 1), std::move(vars),
                     std::move(coeffs), Relation::kLessEq, 0.0);
  }
  for (std::size_t n : ds.controls()) {
    if (covers[n] == 0) continue;
    // covers_n * y_n - sum_{k covering n} q_k >= 0.
    std::vector<int> vars{m.variable_index("y_" + std::to_string(n + 1))};
    std::vector<double> coeffs{static_cast<double>(covers[n])};
    for (std::size_t k = 0; k < P; ++k) {
      if (pool.coverage(k).test(n)) {
        vars.push_back(static_cast<int>(k));
        coeffs.push_back(-1.0);
      }
    }
    m.add_constraint("or_ctrl_" + std::to_string(n + 1), std::move(vars),
                     std::move(coeffs), Relation::kGreaterEq, 0.0);
  }
  return covers;
}

}  // namespace

MilpModel build_subroutine_master(const ClausePool& pool,
                                  const BinaryDataset& ds, std::int64_t ub,
                                  int max_clauses) {
  if (ub < 0) throw std::invalid_argument("cap cannot be negative");
  if (max_clauses < 1) throw std::invalid_argument("need at least one clause");
  MilpModel m;
  const std::vector<std::size_t> covers =
      add_master_linking(m, pool, ds, max_clauses);
  {
    std::vector<int> vars;
    std::vector<double> ones;
    for (std::size_t n : ds.controls()) {
      if (covers[n] == 0) continue;
      vars.push_back(m.variable_index("y_" + std::to_string(n + 1)));
      ones.push_back(1.0);
    }
    m.add_constraint("fp_cap", std::move(vars), std::move(ones),
                     Relation::kLessEq, static_cast<double>(ub));
  }
  std::vector<int> obj_vars;
  std::vector<double> obj_coeffs;
  for (std::size_t n : ds.cases()) {
    obj_vars.push_back(m.variable_index("y_" + std::to_string(n + 1)));
    obj_coeffs.push_back(1.0);
  }
  m.set_objective(ObjSense::kMaximize, std::move(obj_vars),
                  std::move(obj_coeffs));
  return m;
}

MilpModel build_final_master(const ClausePool& pool, const BinaryDataset& ds,
                             int max_clauses) {
  if (max_clauses < 1) throw std::invalid_argument("need at least one clause");
  MilpModel m;
  const std::vector<std::size_t> covers =
      add_master_linking(m, pool, ds, max_clauses);
  const SampleWeights weights = class_weights(ds);
  std::vector<int> obj_vars;
  std::vector<double> obj_coeffs;
  double constant = 0.0;
  for (std::size_t n : ds.cases()) {
    obj_vars.push_back(m.variable_index("y_" + std::to_string(n + 1)));
    obj_coeffs.push_back(-weights.w[n]);
    constant += weights.w[n];
  }
  for (std::size_t n : ds.controls()) {
    if (covers[n] == 0) continue;
    obj_vars.push_back(m.variable_index("y_" + std::to_string(n + 1)));
    obj_coeffs.push_back(weights.w[n]);
  }
  m.set_objective(ObjSense::kMinimize, std::move(obj_vars),
                  std::move(obj_coeffs), constant);
  return m;
}

ClausePool initialize_pool(const BinaryDataset& ds, const IrelandConfig& cfg,
                           std::vector<SolveTraceRow>* trace) {
  cfg.validate();
  const auto t0 = Clock::now();
  ClausePool pool;
  for (std::size_t u = 0; u < cfg.upper_bounds.size(); ++u) {
    const std::int64_t ub = cfg.upper_bounds[u].resolve(ds.num_controls());
    const std::vector<std::size_t> subset =
        draw_cases(ds.cases(), std::min(cfg.subsample_size, ds.num_cases()),
                   stream_seed(cfg.seed, u, 0));
    MilpModel sp = build_subproblem(ds, subset, ub, pool, cfg.max_clause_size);
    const double elapsed =
        std::chrono::duration<double>(Clock::now() - t0).count();
    const double limit =
        clamped_limit(cfg.per_solve_time_limit, cfg.global_time_budget - elapsed);
    const SolveResult sr =
        solve_branch_and_bound(sp, make_options(sp, limit));
    const std::optional<AndClause> clause = clause_from_solution(sp, sr);
    if (clause.has_value()) pool.append(*clause, ds);
    record(trace, static_cast<int>(u), ub, 0, "sp-init", sr, pool.size());
  }
  return pool;
}

SubroutineOutcome run_subroutine(std::size_t u, const BinaryDataset& ds,
                                 ClausePool& pool, const IrelandConfig& cfg,
                                 std::vector<SolveTraceRow>* trace,
                                 double seconds_left) {
  cfg.validate();
  if (u >= cfg.upper_bounds.size()) {
    throw std::invalid_argument("bound index out of range");
  }
  const double budget =
      seconds_left < 0.0 ? cfg.global_time_budget : seconds_left;
  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(budget));
  BoundRoutine routine(u, cfg.upper_bounds[u].resolve(ds.num_controls()));
  while (routine.running()) {
    routine.step(ds, pool, cfg, trace, deadline);
  }
  return routine.outcome();
}

IrelandResult run_ireland(const BinaryDataset& ds, const IrelandConfig& cfg) {
  cfg.validate();
  const auto t0 = Clock::now();
  const auto deadline =
      t0 + std::chrono::duration_cast<Clock::duration>(
               std::chrono::duration<double>(cfg.global_time_budget));
  IrelandResult out;
  out.pool = initialize_pool(ds, cfg, &out.trace);

  std::vector<BoundRoutine> routines;
  routines.reserve(cfg.upper_bounds.size());
  for (std::size_t u = 0; u < cfg.upper_bounds.size(); ++u) {
    routines.emplace_back(u, cfg.upper_bounds[u].resolve(ds.num_controls()));
  }
  const std::size_t slots =
      cfg.parallelism <= 0
          ? routines.size()
          : std::min<std::size_t>(static_cast<std::size_t>(cfg.parallelism),
                                  routines.size());
  std::vector<std::size_t> active;
  std::size_t next = 0;
  while (next < routines.size() && active.size() < slots) {
    active.push_back(next++);
  }
  while (!active.empty()) {
    for (std::size_t idx : active) {
      routines[idx].step(ds, out.pool, cfg, &out.trace, deadline);
    }
    std::vector<std::size_t> still;
    for (std::size_t idx : active) {
      if (routines[idx].running()) still.push_back(idx);
    }
    while (next < routines.size() && still.size() < slots) {
      still.push_back(next++);
    }
    active = std::move(still);
  }
  for (const BoundRoutine& r : routines) {
    out.budget_limited = out.budget_limited || r.outcome().budget_limited;
  }

  MilpModel fm = build_final_master(out.pool, ds, cfg.max_clauses);
  const SolveResult fr = solve_branch_and_bound(
      fm, make_options(fm, cfg.per_solve_time_limit));
  record(&out.trace, -1, -1, 0, "mp-final", fr, out.pool.size());
  std::vector<AndClause> picked;
  if (fr.has_solution()) {
    for (std::size_t k = 0; k < out.pool.size(); ++k) {
      const int id = fm.variable_index("q_" + std::to_string(k + 1));
      if (id >= 0 && fr.assignment[static_cast<std::size_t>(id)] > 0.5) {
        picked.push_back(out.pool.clause(k));
      }
    }
  } else {
    out.budget_limited = true;
  }
  out.rule = DnfRule(std::move(picked));
  const SampleWeights weights = class_weights(ds);
  out.objective = balanced_error(rule_predict(out.rule, ds), ds, weights);
  out.normalized_objective =
      out.objective / static_cast<double>(ds.num_samples());
  return out;
}

}  // namespace ireland
