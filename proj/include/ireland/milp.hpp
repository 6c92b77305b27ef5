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

#ifndef IRELAND_MILP_HPP_
#define IRELAND_MILP_HPP_

#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace ireland {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class VarKind { kBinary, kContinuous };

enum class Relation { kLessEq, kGreaterEq, kEqual };

enum class ObjSense { kMinimize, kMaximize };

struct Variable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = kInfinity;
};

// One linear row: sum of coeffs[i] * var(vars[i])  <relation>  rhs.
struct Constraint {
  std::string name;
  std::vector<int> vars;
  std::vector<double> coeffs;
  Relation rel = Relation::kLessEq;
  double rhs = 0.0;
};

struct Objective {
  ObjSense sense = ObjSense::kMinimize;
  std::vector<int> vars;
  std::vector<double> coeffs;
  double constant = 0.0;
};

// Mixed-binary linear program. Binary variables always carry bounds [0, 1];
// continuous variables may use any bounds including infinities. Variable
// names must be unique (they key LP files and solution files).
class MilpModel {
 public:
  int add_variable(const std::string& name, VarKind kind, double lower, double upper);
  int add_binary(const std::string& name) {
    return add_variable(name, VarKind::kBinary, 0.0, 1.0);
  }
  int add_continuous(const std::string& name, double lower, double upper) {
    return add_variable(name, VarKind::kContinuous, lower, upper);
  }

  // Throws std::invalid_argument on unknown variable indices or a
  // vars/coeffs length mismatch.
  void add_constraint(std::string name, std::vector<int> vars,
                      std::vector<double> coeffs, Relation rel, double rhs);

  void set_objective(ObjSense sense, std::vector<int> vars,
                     std::vector<double> coeffs, double constant = 0.0);

  std::size_t num_variables() const { return variables_.size(); }
  std::size_t num_constraints() const { return constraints_.size(); }
  std::size_t num_binary() const { return num_binary_; }
  std::size_t num_continuous() const { return variables_.size() - num_binary_; }

  const Variable& variable(std::size_t i) const { return variables_[i]; }
  const Constraint& constraint(std::size_t i) const { return constraints_[i]; }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const Objective& objective() const { return objective_; }

  // Index lookup by name; -1 when absent.
  int variable_index(const std::string& name) const;
  // First constraint with this name; -1 when absent.
  int constraint_index(const std::string& name) const;

  // Value of `assignment` under the objective (constant included).
  double objective_value(std::span<const double> assignment) const;

  // Row activity of constraint i under `assignment`.
  double row_activity(std::size_t i, std::span<const double> assignment) const;

  // True when every constraint and bound holds within `tol` and every binary
  // sits within `integrality_tol` of 0 or 1.
  bool is_feasible(std::span<const double> assignment, double tol,
                   double integrality_tol = 1.0) const;

  // Switches a variable's kind, resetting bounds to [0, 1] for binary.
  void set_kind(int var, VarKind kind);

  // Replaces a variable's bound interval; requires lower <= upper.
  void set_bounds(int var, double lower, double upper);

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  Objective objective_;
  std::unordered_map<std::string, int> var_index_;
  std::size_t num_binary_ = 0;
};

enum class SolveStatus {
  kOptimal,
  kFeasibleTimeLimit,
  kInfeasible,
  kUnbounded,
  kMemoryAbort,
  kNumericalFailure,
};

const char* to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::kNumericalFailure;
  // Empty when no feasible assignment is known.
  std::vector<double> assignment;
  // Objective of `assignment` in the model's sense; +/-inf when absent.
  double objective = 0.0;
  // Proven bound in the model's sense (lower bound for minimization).
  double best_bound = 0.0;
  double runtime_seconds = 0.0;
  std::int64_t node_count = 0;
  std::int64_t lp_iterations = 0;

  bool has_solution() const { return !assignment.empty(); }
};

// Called after each processed node with (nodes processed, best bound in the
// model's sense, incumbent objective or +/-inf). Used by tests to check
// bound monotonicity.
using NodeTrace =
    std::function<void(std::int64_t, double, double)>;

struct SolveOptions {
  double time_limit_seconds = kInfinity;
  // Constraint/bound satisfaction tolerance.
  double feasibility_tol = 1e-7;
  // Distance from an integer below which a binary counts as integral.
  double integrality_tol = 1e-6;
  // Relative optimality gap at which branch-and-bound declares optimality.
  double relative_gap_tol = 1e-6;
  // Node-store cap; exceeding it aborts with kMemoryAbort.
  std::int64_t max_open_nodes = 500000;
  // Rounded-relaxation repair (fix binaries, re-solve the continuous part)
  // runs at the root and then every this-many processed nodes; 0 disables.
  std::int64_t dive_frequency = 256;
  // Optional per-binary branching priority, lower class branches first;
  // empty means one class. Indexed by variable id, continuous entries unused.
  std::vector<int> branch_priority;
  // Cooperative cancellation, checked between node expansions; a cancelled
  // solve returns its incumbent with kFeasibleTimeLimit.
  const std::atomic<bool>* cancel = nullptr;
  NodeTrace trace;
};

// Solves the LP relaxation (binaries widened to [0, 1]) with a bounded-
// variable primal simplex. Deterministic for identical input.
SolveResult solve_lp_relaxation(const MilpModel& model,
                                const SolveOptions& options = {});

// Exact branch-and-bound: depth-first dives until a first incumbent exists,
// then best-bound-first; branches on the most fractional binary (ties by
// lowest index) within the lowest unfinished priority class.
SolveResult solve_branch_and_bound(const MilpModel& model,
                                   const SolveOptions& options = {});

}  // namespace ireland

#endif  // IRELAND_MILP_HPP_
