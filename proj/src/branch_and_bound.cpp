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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <vector>

#include "ireland/milp.hpp"
#include "simplex.hpp"

namespace ireland {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Converts an internal minimization value to the model's sense.
double to_user_sense(double value, ObjSense sense, double constant) {
  return (sense == ObjSense::kMaximize ? -value : value) + constant;
}

struct Node {
  std::int64_t parent = -1;
  int branch_var = -1;
  std::int8_t branch_value = 0;
  double bound_est = -kInfinity;  // min-sense lower bound inherited from parent
  bool open = true;
};

class TreeSolver {
 public:
  TreeSolver(const MilpModel& model, const SolveOptions& opts)
      : model_(model),
        opts_(opts),
        lp_(model, opts.feasibility_tol),
        sense_(model.objective().sense),
        constant_(model.objective().constant) {
    const std::size_t n = model.num_variables();
    base_lb_.resize(n);
    base_ub_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      base_lb_[j] = model.variable(j).lower;
      base_ub_[j] = model.variable(j).upper;
      if (model.variable(j).kind == VarKind::kBinary) {
        binaries_.push_back(static_cast<int>(j));
      }
    }
    const double sign = sense_ == ObjSense::kMaximize ? -1.0 : 1.0;
    min_cost_.assign(n, 0.0);
    const Objective& obj = model.objective();
    for (std::size_t k = 0; k < obj.vars.size(); ++k) {
      min_cost_[static_cast<std::size_t>(obj.vars[k])] += sign * obj.coeffs[k];
    }
  }

  SolveResult run();

 private:
  bool out_of_time() const {
    if (opts_.cancel != nullptr && opts_.cancel->load(std::memory_order_relaxed)) {
      return true;
    }
    return seconds_since(start_) >= opts_.time_limit_seconds;
  }

  double min_objective(std::span<const double> x) const {
    double total = 0.0;
    for (std::size_t j = 0; j < min_cost_.size(); ++j) {
      if (min_cost_[j] != 0.0) total += min_cost_[j] * x[j];
    }
    return total;
  }

  void restore_bounds(std::int64_t id, std::vector<double>* lb,
                      std::vector<double>* ub) const {
    *lb = base_lb_;
    *ub = base_ub_;
    for (std::int64_t cur = id; cur > 0; cur = nodes_[static_cast<std::size_t>(cur)].parent) {
      const Node& node = nodes_[static_cast<std::size_t>(cur)];
      const auto v = static_cast<std::size_t>(node.branch_var);
      (*lb)[v] = node.branch_value;
      (*ub)[v] = node.branch_value;
    }
  }

  // Candidate = assignment with binaries rounded. Accepts it as incumbent
  // when it verifies feasible; objective is recomputed exactly from the
  // rounded vector, never taken from the LP.
  bool try_candidate(std::span<const double> x) {
    std::vector<double> rounded(x.begin(), x.end());
    for (int b : binaries_) {
      rounded[static_cast<std::size_t>(b)] =
          std::round(rounded[static_cast<std::size_t>(b)]);
    }
    const double tol = std::max(1e-6, opts_.feasibility_tol * 10.0);
    if (!model_.is_feasible(rounded, tol, 0.5)) return false;
    const double value = min_objective(rounded);
    if (value < incumbent_value_ - 1e-12) {
      incumbent_value_ = value;
      incumbent_ = std::move(rounded);
    }
    return true;
  }

  // Rounded-relaxation repair: iteratively fix binaries at their rounded
  // values, re-solving the LP after each fixing round.
  void dive(const std::vector<double>& lb0, const std::vector<double>& ub0,
            const std::vector<double>& x0);

  int pick_branch_var(std::span<const double> x) const {
    int best = -1;
    double best_frac = opts_.integrality_tol;
    int best_priority = 0;
    for (int b : binaries_) {
      const double v = x[static_cast<std::size_t>(b)];
      const double frac = std::fabs(v - std::round(v));
      if (frac <= opts_.integrality_tol) continue;
      const int priority =
          opts_.branch_priority.empty()
              ? 0
              : opts_.branch_priority[static_cast<std::size_t>(b)];
      if (best >= 0 && priority > best_priority) continue;
      if (best >= 0 && priority == best_priority && frac <= best_frac) continue;
      best = b;
      best_frac = frac;
      best_priority = priority;
    }
    return best;
  }

  double open_bound_floor() {
    while (!by_bound_.empty()) {
      const auto [est, id] = by_bound_.top();
      if (nodes_[static_cast<std::size_t>(id)].open) return est;
      by_bound_.pop();
    }
    return incumbent_value_;  // tree exhausted: the incumbent is proven
  }

  void emit_trace() {
    if (!opts_.trace) return;
    double bound = std::min(open_bound_floor(), incumbent_value_);
    bound = std::max(bound, last_traced_bound_);  // bounds never regress
    last_traced_bound_ = bound;
    const double user_incumbent =
        incumbent_.empty()
            ? (sense_ == ObjSense::kMaximize ? -kInfinity : kInfinity)
            : to_user_sense(incumbent_value_, sense_, constant_);
    opts_.trace(processed_, to_user_sense(bound, sense_, constant_),
                user_incumbent);
  }

  const MilpModel& model_;
  const SolveOptions& opts_;
  SimplexSolver lp_;
  ObjSense sense_;
  double constant_;
  std::vector<double> base_lb_, base_ub_;
  std::vector<int> binaries_;
  std::vector<double> min_cost_;

  std::vector<Node> nodes_;
  std::vector<std::int64_t> dfs_stack_;
  std::priority_queue<std::pair<double, std::int64_t>,
                      std::vector<std::pair<double, std::int64_t>>,
                      std::greater<>>
      by_bound_;
  std::vector<double> incumbent_;
  double incumbent_value_ = kInfinity;
  std::int64_t processed_ = 0;
  std::int64_t open_count_ = 0;
  std::int64_t lp_iterations_ = 0;
  double last_traced_bound_ = -kInfinity;
  Clock::time_point start_;
};

void TreeSolver::dive(const std::vector<double>& lb0,
                      const std::vector<double>& ub0,
                      const std::vector<double>& x0) {
  std::vector<double> lb = lb0;
  std::vector<double> ub = ub0;
  std::vector<double> x = x0;
  for (std::size_t round = 0; round <= binaries_.size(); ++round) {
    if (out_of_time()) return;
    int frac_var = -1;
    double frac_best = opts_.integrality_tol;
    for (int b : binaries_) {
      const auto j = static_cast<std::size_t>(b);
      const double v = x[j];
      const double frac = std::fabs(v - std::round(v));
      if (frac <= opts_.integrality_tol) {
        lb[j] = std::round(v);
        ub[j] = lb[j];
      } else if (frac > frac_best) {
        frac_best = frac;
        frac_var = b;
      }
    }
    if (frac_var < 0) {
      try_candidate(x);
      return;
    }
    const auto j = static_cast<std::size_t>(frac_var);
    double value = std::round(x[j]);
    lb[j] = value;
    ub[j] = value;
    LpResult res = lp_.solve(lb, ub);
    lp_iterations_ += res.iterations;
    const bool acceptable =
        res.status == LpStatus::kOptimal &&
        (incumbent_.empty() || res.objective < incumbent_value_ - 1e-12);
    if (!acceptable) {
      value = 1.0 - value;  // try the opposite branch once
      lb[j] = value;
      ub[j] = value;
      res = lp_.solve(lb, ub);
      lp_iterations_ += res.iterations;
      if (res.status != LpStatus::kOptimal ||
          (!incumbent_.empty() && res.objective >= incumbent_value_ - 1e-12)) {
        return;
      }
    }
    x = res.x;
  }
}

SolveResult TreeSolver::run() {
  start_ = Clock::now();
  SolveResult out;

  nodes_.push_back(Node{});
  dfs_stack_.push_back(0);
  by_bound_.emplace(-kInfinity, 0);
  open_count_ = 1;

  bool aborted_time = false;
  bool aborted_memory = false;
  bool numerical_failure = false;
  bool unbounded = false;

  std::vector<double> lb;
  std::vector<double> ub;

  while (true) {
    // Node selection: depth-first while no incumbent exists, then best-first.
    std::int64_t id = -1;
    if (incumbent_.empty()) {
      while (!dfs_stack_.empty()) {
        const std::int64_t top = dfs_stack_.back();
        dfs_stack_.pop_back();
        if (nodes_[static_cast<std::size_t>(top)].open) {
          id = top;
          break;
        }
      }
    }
    if (id < 0) {
      while (!by_bound_.empty()) {
        const auto [est, top] = by_bound_.top();
        if (!nodes_[static_cast<std::size_t>(top)].open) {
          by_bound_.pop();
          continue;
        }
        // Optimality by bound: nothing open can beat the incumbent.
        if (!incumbent_.empty() &&
            est >= incumbent_value_ -
                       opts_.relative_gap_tol *
                           std::max(1.0, std::fabs(incumbent_value_))) {
          id = -1;
        } else {
          id = top;
          by_bound_.pop();
        }
        break;
      }
    }
    if (id < 0) break;  // open set empty or bound-closed

    Node& node = nodes_[static_cast<std::size_t>(id)];
    if (!node.open) continue;
    node.open = false;
    --open_count_;

    if (out_of_time()) {
      aborted_time = true;
      break;
    }

    restore_bounds(id, &lb, &ub);
    LpResult res = lp_.solve(lb, ub);
    lp_iterations_ += res.iterations;
    ++processed_;

    if (res.status == LpStatus::kIterationLimit) {
      numerical_failure = true;
      break;
    }
    if (res.status == LpStatus::kUnbounded) {
      if (id == 0) {
        unbounded = true;
        break;
      }
      numerical_failure = true;  // a restriction cannot out-grow its root
      break;
    }
    if (res.status == LpStatus::kInfeasible) {
      emit_trace();
      continue;
    }

    const double node_lp = res.objective;
    if (!incumbent_.empty() &&
        node_lp >= incumbent_value_ - 1e-9 * std::max(1.0, std::fabs(incumbent_value_))) {
      emit_trace();
      continue;  // pruned by bound
    }

    const int branch_var = pick_branch_var(res.x);
    if (branch_var < 0) {
      // LP solution is integral on the binaries.
      try_candidate(res.x);
      emit_trace();
    } else {
      try_candidate(res.x);  // cheap rounding attempt at every node
      if (opts_.dive_frequency > 0 &&
          (processed_ == 1 || processed_ % opts_.dive_frequency == 0)) {
        dive(lb, ub, res.x);
      }
      const auto j = static_cast<std::size_t>(branch_var);
      const auto preferred = static_cast<std::int8_t>(std::round(res.x[j]));
      const auto other = static_cast<std::int8_t>(1 - preferred);
      for (std::int8_t value : {other, preferred}) {
        nodes_.push_back(Node{id, branch_var, value, node_lp, true});
        const auto child = static_cast<std::int64_t>(nodes_.size()) - 1;
        dfs_stack_.push_back(child);
        by_bound_.emplace(node_lp, child);
        ++open_count_;
      }
      emit_trace();
      if (open_count_ > opts_.max_open_nodes) {
        aborted_memory = true;
        break;
      }
    }

    if (!incumbent_.empty()) {
      const double floor = std::min(open_bound_floor(), incumbent_value_);
      if (incumbent_value_ - floor <=
          opts_.relative_gap_tol * std::max(1.0, std::fabs(incumbent_value_))) {
        break;  // proven within gap tolerance
      }
    }
  }

  out.runtime_seconds = seconds_since(start_);
  out.node_count = processed_;
  out.lp_iterations = lp_iterations_;

  const double bound_floor = std::min(open_bound_floor(), incumbent_value_);
  if (unbounded) {
    out.status = SolveStatus::kUnbounded;
    out.best_bound = to_user_sense(-kInfinity, sense_, constant_);
    out.objective = out.best_bound;
    return out;
  }
  if (numerical_failure) {
    out.status = SolveStatus::kNumericalFailure;
  } else if (aborted_memory) {
    out.status = SolveStatus::kMemoryAbort;
  } else if (aborted_time) {
    out.status = SolveStatus::kFeasibleTimeLimit;
  } else if (incumbent_.empty()) {
    out.status = SolveStatus::kInfeasible;
    out.best_bound = to_user_sense(kInfinity, sense_, constant_);
    out.objective = to_user_sense(kInfinity, sense_, constant_);
    return out;
  } else {
    out.status = SolveStatus::kOptimal;
  }

  if (!incumbent_.empty()) {
    out.assignment = incumbent_;
    out.objective = to_user_sense(incumbent_value_, sense_, constant_);
    out.best_bound = out.status == SolveStatus::kOptimal
                         ? out.objective
                         : to_user_sense(bound_floor, sense_, constant_);
  } else {
    out.objective = to_user_sense(kInfinity, sense_, constant_);
    out.best_bound = to_user_sense(bound_floor, sense_, constant_);
  }
  return out;
}

}  // namespace

SolveResult solve_lp_relaxation(const MilpModel& model,
                                const SolveOptions& options) {
  const auto start = Clock::now();
  SimplexSolver lp(model, options.feasibility_tol);
  std::vector<double> lb(model.num_variables());
  std::vector<double> ub(model.num_variables());
  for (std::size_t j = 0; j < model.num_variables(); ++j) {
    lb[j] = model.variable(j).lower;
    ub[j] = model.variable(j).upper;
  }
  const LpResult res = lp.solve(lb, ub);

  SolveResult out;
  out.runtime_seconds = seconds_since(start);
  out.lp_iterations = res.iterations;
  const ObjSense sense = model.objective().sense;
  const double constant = model.objective().constant;
  switch (res.status) {
    case LpStatus::kOptimal: {
      out.status = SolveStatus::kOptimal;
      out.assignment = res.x;
      out.objective = to_user_sense(res.objective, sense, constant);
      out.best_bound = out.objective;
      break;
    }
    case LpStatus::kInfeasible:
      out.status = SolveStatus::kInfeasible;
      out.objective = to_user_sense(kInfinity, sense, constant);
      out.best_bound = out.objective;
      break;
    case LpStatus::kUnbounded:
      out.status = SolveStatus::kUnbounded;
      out.objective = to_user_sense(-kInfinity, sense, constant);
      out.best_bound = out.objective;
      break;
    case LpStatus::kIterationLimit:
      out.status = SolveStatus::kNumericalFailure;
      break;
  }
  return out;
}

SolveResult solve_branch_and_bound(const MilpModel& model,
                                   const SolveOptions& options) {
  TreeSolver solver(model, options);
  return solver.run();
}

}  // namespace ireland
