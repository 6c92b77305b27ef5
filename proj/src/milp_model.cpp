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

#include "ireland/milp.hpp"

#include <cmath>
#include <stdexcept>

namespace ireland {

int MilpModel::add_variable(const std::string& name, VarKind kind, double lower,
                            double upper) {
  if (name.empty()) throw std::invalid_argument("variable name cannot be empty");
  if (var_index_.count(name)) {
    throw std::invalid_argument("duplicate variable name: " + name);
  }
  if (kind == VarKind::kBinary && (lower != 0.0 || upper != 1.0)) {
    throw std::invalid_argument("binary variables must have bounds [0, 1]");
  }
  if (lower > upper) throw std::invalid_argument("lower bound above upper bound");
  const int id = static_cast<int>(variables_.size());
  variables_.push_back(Variable{name, kind, lower, upper});
  var_index_.emplace(name, id);
  if (kind == VarKind::kBinary) ++num_binary_;
  return id;
}

void MilpModel::add_constraint(std::string name, std::vector<int> vars,
                               std::vector<double> coeffs, Relation rel,
                               double rhs) {
  if (vars.size() != coeffs.size()) {
    throw std::invalid_argument("constraint vars/coeffs length mismatch");
  }
  for (int v : vars) {
    if (v < 0 || static_cast<std::size_t>(v) >= variables_.size()) {
      throw std::invalid_argument("constraint references unknown variable");
    }
  }
  constraints_.push_back(
      Constraint{std::move(name), std::move(vars), std::move(coeffs), rel, rhs});
}

void MilpModel::set_objective(ObjSense sense, std::vector<int> vars,
                              std::vector<double> coeffs, double constant) {
  if (vars.size() != coeffs.size()) {
    throw std::invalid_argument("objective vars/coeffs length mismatch");
  }
  for (int v : vars) {
    if (v < 0 || static_cast<std::size_t>(v) >= variables_.size()) {
      throw std::invalid_argument("objective references unknown variable");
    }
  }
  objective_ = Objective{sense, std::move(vars), std::move(coeffs), constant};
}

int MilpModel::variable_index(const std::string& name) const {
  auto it = var_index_.find(name);
  return it == var_index_.end() ? -1 : it->second;
}

int MilpModel::constraint_index(const std::string& name) const {
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    if (constraints_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

double MilpModel::objective_value(std::span<const double> assignment) const {
  double total = objective_.constant;
  for (std::size_t i = 0; i < objective_.vars.size(); ++i) {
    total += objective_.coeffs[i] * assignment[static_cast<std::size_t>(objective_.vars[i])];
  }
  return total;
}

double MilpModel::row_activity(std::size_t i,
                               std::span<const double> assignment) const {
  const Constraint& c = constraints_[i];
  double total = 0.0;
  for (std::size_t k = 0; k < c.vars.size(); ++k) {
    total += c.coeffs[k] * assignment[static_cast<std::size_t>(c.vars[k])];
  }
  return total;
}

bool MilpModel::is_feasible(std::span<const double> assignment, double tol,
                            double integrality_tol) const {
  if (assignment.size() != variables_.size()) return false;
  for (std::size_t v = 0; v < variables_.size(); ++v) {
    const Variable& var = variables_[v];
    const double x = assignment[v];
    if (x < var.lower - tol || x > var.upper + tol) return false;
    if (var.kind == VarKind::kBinary &&
        std::fabs(x - std::round(x)) > integrality_tol) {
      return false;
    }
  }
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    const double activity = row_activity(i, assignment);
    const Constraint& c = constraints_[i];
    switch (c.rel) {
      case Relation::kLessEq:
        if (activity > c.rhs + tol) return false;
        break;
      case Relation::kGreaterEq:
        if (activity < c.rhs - tol) return false;
        break;
      case Relation::kEqual:
        if (std::fabs(activity - c.rhs) > tol) return false;
        break;
    }
  }
  return true;
}

void MilpModel::set_kind(int var, VarKind kind) {
  Variable& v = variables_.at(static_cast<std::size_t>(var));
  if (v.kind == kind) return;
  if (kind == VarKind::kBinary) {
    v.lower = 0.0;
    v.upper = 1.0;
    ++num_binary_;
  } else {
    --num_binary_;
  }
  v.kind = kind;
}

void MilpModel::set_bounds(int var, double lower, double upper) {
  if (lower > upper) {
    throw std::invalid_argument("set_bounds: lower exceeds upper");
  }
  Variable& v = variables_.at(static_cast<std::size_t>(var));
  v.lower = lower;
  v.upper = upper;
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasibleTimeLimit: return "feasible-time-limit";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kMemoryAbort: return "memory-abort";
    case SolveStatus::kNumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

}  // namespace ireland
