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

#include "simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ireland {
namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kRatioTol = 1e-10;
constexpr double kDegenStep = 1e-11;

}  // namespace

SimplexSolver::SimplexSolver(const MilpModel& model, double feasibility_tol)
    : n_(model.num_variables()),
      m_(model.num_constraints()),
      total_cols_(n_ + 2 * m_),
      feasibility_tol_(feasibility_tol) {
  matrix_.assign(m_ * (n_ + m_), 0.0);
  rhs_.resize(m_);
  slack_lower_.resize(m_);
  slack_upper_.resize(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    const Constraint& row = model.constraint(i);
    double* out = matrix_.data() + i * (n_ + m_);
    for (std::size_t k = 0; k < row.vars.size(); ++k) {
      out[static_cast<std::size_t>(row.vars[k])] += row.coeffs[k];
    }
    out[n_ + i] = 1.0;  // slack
    rhs_[i] = row.rhs;
    rhs_scale_ = std::max(rhs_scale_, std::fabs(row.rhs));
    switch (row.rel) {
      case Relation::kLessEq:
        slack_lower_[i] = 0.0;
        slack_upper_[i] = kInfinity;
        break;
      case Relation::kGreaterEq:
        slack_lower_[i] = -kInfinity;
        slack_upper_[i] = 0.0;
        break;
      case Relation::kEqual:
        slack_lower_[i] = 0.0;
        slack_upper_[i] = 0.0;
        break;
    }
  }
  cost_.assign(total_cols_, 0.0);
  const Objective& obj = model.objective();
  const double sign = obj.sense == ObjSense::kMaximize ? -1.0 : 1.0;
  for (std::size_t k = 0; k < obj.vars.size(); ++k) {
    cost_[static_cast<std::size_t>(obj.vars[k])] += sign * obj.coeffs[k];
  }
  max_iterations_ = 10000 + 200 * static_cast<std::int64_t>(m_ + n_);
}

void SimplexSolver::compute_duals(const std::vector<double>& cost) {
  duals_.resize(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    duals_[i] = cost[static_cast<std::size_t>(basis_[i])];
  }
}

double SimplexSolver::reduced_cost(const std::vector<double>& cost, int col) const {
  double z = cost[static_cast<std::size_t>(col)];
  for (std::size_t i = 0; i < m_; ++i) {
    const double d = duals_[i];
    if (d != 0.0) z -= d * tab(i, static_cast<std::size_t>(col));
  }
  return z;
}

bool SimplexSolver::pick_entering(const std::vector<double>& cost, bool bland,
                                  int* col, int* direction) {
  compute_duals(cost);
  int best_col = -1;
  int best_dir = 0;
  double best_score = kDualTol;
  for (std::size_t j = 0; j < total_cols_; ++j) {
    const ColStatus st = status_[j];
    if (st == ColStatus::kBasic) continue;
    if (upper_[j] - lower_[j] <= kRatioTol) continue;  // fixed column
    const double z = reduced_cost(cost, static_cast<int>(j));
    double score = 0.0;
    int dir = 0;
    if (st == ColStatus::kAtLower && z < -kDualTol) {
      score = -z;
      dir = 1;
    } else if (st == ColStatus::kAtUpper && z > kDualTol) {
      score = z;
      dir = -1;
    } else if (st == ColStatus::kFree && std::fabs(z) > kDualTol) {
      score = std::fabs(z);
      dir = z < 0.0 ? 1 : -1;
    } else {
      continue;
    }
    if (bland) {
      *col = static_cast<int>(j);
      *direction = dir;
      return true;
    }
    if (score > best_score) {
      best_score = score;
      best_col = static_cast<int>(j);
      best_dir = dir;
    }
  }
  if (best_col < 0) return false;
  *col = best_col;
  *direction = best_dir;
  return true;
}

bool SimplexSolver::step(int entering, int direction) {
  const auto q = static_cast<std::size_t>(entering);
  const double sigma = direction;
  double limit = upper_[q] - lower_[q];  // own-bound flip distance (may be inf)
  int leave_row = -1;
  double best = limit;
  for (std::size_t i = 0; i < m_; ++i) {
    const double a = tab(i, q);
    if (std::fabs(a) <= kPivotTol) continue;
    const double d = sigma * a;  // basic i moves by -d per unit step
    const auto b = static_cast<std::size_t>(basis_[i]);
    double ratio;
    if (d > 0.0) {
      if (lower_[b] == -kInfinity) continue;
      ratio = (beta_[i] - lower_[b]) / d;
    } else {
      if (upper_[b] == kInfinity) continue;
      ratio = (beta_[i] - upper_[b]) / d;
    }
    if (ratio < 0.0) ratio = 0.0;  // basic slightly past its bound
    if (ratio < best - kRatioTol) {
      best = ratio;
      leave_row = static_cast<int>(i);
    } else if (leave_row >= 0 && ratio <= best + kRatioTol &&
               basis_[i] < basis_[static_cast<std::size_t>(leave_row)]) {
      leave_row = static_cast<int>(i);
    }
  }
  if (best == kInfinity) return false;  // unbounded direction
  last_step_ = best;
  if (leave_row < 0) {
    // Bound flip: the entering variable crosses to its opposite bound.
    for (std::size_t i = 0; i < m_; ++i) {
      const double a = tab(i, q);
      if (a != 0.0) beta_[i] -= sigma * best * a;
    }
    nonbasic_value_[q] += sigma * best;
    status_[q] = sigma > 0.0 ? ColStatus::kAtUpper : ColStatus::kAtLower;
  } else {
    pivot(leave_row, entering, direction, best);
  }
  return true;
}

void SimplexSolver::pivot(int row, int entering, int direction, double delta) {
  const auto r = static_cast<std::size_t>(row);
  const auto q = static_cast<std::size_t>(entering);
  const double sigma = direction;
  const double entering_value = nonbasic_value_[q] + sigma * delta;

  for (std::size_t i = 0; i < m_; ++i) {
    if (i == r) continue;
    const double a = tab(i, q);
    if (a != 0.0) beta_[i] -= sigma * delta * a;
  }

  const auto leaving = static_cast<std::size_t>(basis_[r]);
  const double d_leave = sigma * tab(r, q);
  if (d_leave > 0.0) {
    status_[leaving] = ColStatus::kAtLower;
    nonbasic_value_[leaving] = lower_[leaving];
  } else {
    status_[leaving] = ColStatus::kAtUpper;
    nonbasic_value_[leaving] = upper_[leaving];
  }

  basis_[r] = entering;
  status_[q] = ColStatus::kBasic;
  beta_[r] = entering_value;

  // Gaussian elimination on the dense tableau row.
  double* row_r = tableau_.data() + r * total_cols_;
  const double pr = row_r[q];
  const double inv = 1.0 / pr;
  for (std::size_t j = 0; j < total_cols_; ++j) row_r[j] *= inv;
  row_r[q] = 1.0;
  for (std::size_t i = 0; i < m_; ++i) {
    if (i == r) continue;
    double* row_i = tableau_.data() + i * total_cols_;
    const double f = row_i[q];
    if (std::fabs(f) <= 1e-13) {
      row_i[q] = 0.0;
      continue;
    }
    for (std::size_t j = 0; j < total_cols_; ++j) row_i[j] -= f * row_r[j];
    row_i[q] = 0.0;
  }
}

double SimplexSolver::run_phase(const std::vector<double>& cost,
                                std::int64_t* iterations, LpStatus* status) {
  const std::int64_t degen_threshold =
      64 + static_cast<std::int64_t>(m_ + total_cols_);
  std::int64_t degen_run = 0;
  bool bland = false;
  while (true) {
    if (*iterations >= max_iterations_) {
      *status = LpStatus::kIterationLimit;
      break;
    }
    int col = 0;
    int dir = 0;
    if (!pick_entering(cost, bland, &col, &dir)) {
      *status = LpStatus::kOptimal;
      break;
    }
    ++*iterations;
    if (!step(col, dir)) {
      *status = LpStatus::kUnbounded;
      break;
    }
    if (last_step_ <= kDegenStep) {
      if (++degen_run >= degen_threshold) bland = true;
    } else {
      degen_run = 0;
      bland = false;
    }
  }
  double value = 0.0;
  for (std::size_t j = 0; j < total_cols_; ++j) {
    if (status_[j] != ColStatus::kBasic && cost[j] != 0.0) {
      value += cost[j] * nonbasic_value_[j];
    }
  }
  for (std::size_t i = 0; i < m_; ++i) {
    const double c = cost[static_cast<std::size_t>(basis_[i])];
    if (c != 0.0) value += c * beta_[i];
  }
  return value;
}

LpResult SimplexSolver::solve(std::span<const double> lb,
                              std::span<const double> ub) {
  if (lb.size() != n_ || ub.size() != n_) {
    throw std::invalid_argument("bound array size mismatch");
  }
  LpResult result;

  lower_.assign(total_cols_, 0.0);
  upper_.assign(total_cols_, 0.0);
  nonbasic_value_.assign(total_cols_, 0.0);
  status_.assign(total_cols_, ColStatus::kAtLower);
  basis_.assign(m_, -1);
  beta_.assign(m_, 0.0);

  for (std::size_t j = 0; j < n_; ++j) {
    lower_[j] = lb[j];
    upper_[j] = ub[j];
    if (lb[j] != -kInfinity) {
      nonbasic_value_[j] = lb[j];
      status_[j] = ColStatus::kAtLower;
    } else if (ub[j] != kInfinity) {
      nonbasic_value_[j] = ub[j];
      status_[j] = ColStatus::kAtUpper;
    } else {
      nonbasic_value_[j] = 0.0;
      status_[j] = ColStatus::kFree;
    }
  }
  for (std::size_t i = 0; i < m_; ++i) {
    lower_[n_ + i] = slack_lower_[i];
    upper_[n_ + i] = slack_upper_[i];
  }

  // Row activities under the initial nonbasic point decide which rows need an
  // artificial: a slack residual inside its own bounds makes the slack basic.
  tableau_.assign(m_ * total_cols_, 0.0);
  bool need_phase1 = false;
  for (std::size_t i = 0; i < m_; ++i) {
    const double* arow = matrix_.data() + i * (n_ + m_);
    double activity = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (arow[j] != 0.0 && nonbasic_value_[j] != 0.0) {
        activity += arow[j] * nonbasic_value_[j];
      }
    }
    const double residual = rhs_[i] - activity;
    const std::size_t slack_col = n_ + i;
    const std::size_t art_col = n_ + m_ + i;
    double sigma = 1.0;
    if (residual >= slack_lower_[i] && residual <= slack_upper_[i]) {
      basis_[i] = static_cast<int>(slack_col);
      status_[slack_col] = ColStatus::kBasic;
      beta_[i] = residual;
      lower_[art_col] = 0.0;
      upper_[art_col] = 0.0;
    } else {
      const double displaced =
          std::clamp(residual, slack_lower_[i], slack_upper_[i]);
      nonbasic_value_[slack_col] = displaced;
      status_[slack_col] = displaced == slack_upper_[i] ? ColStatus::kAtUpper
                                                        : ColStatus::kAtLower;
      const double shifted = residual - displaced;
      sigma = shifted >= 0.0 ? 1.0 : -1.0;
      basis_[i] = static_cast<int>(art_col);
      status_[art_col] = ColStatus::kBasic;
      beta_[i] = std::fabs(shifted);
      lower_[art_col] = 0.0;
      upper_[art_col] = kInfinity;
      need_phase1 = true;
    }
    double* trow = tableau_.data() + i * total_cols_;
    for (std::size_t j = 0; j < n_ + m_; ++j) trow[j] = sigma * arow[j];
    trow[art_col] = 1.0;
  }

  if (need_phase1) {
    std::vector<double> phase1_cost(total_cols_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) phase1_cost[n_ + m_ + i] = 1.0;
    LpStatus phase_status = LpStatus::kOptimal;
    const double infeas = run_phase(phase1_cost, &result.iterations, &phase_status);
    if (phase_status == LpStatus::kIterationLimit) {
      result.status = LpStatus::kIterationLimit;
      return result;
    }
    if (infeas > feasibility_tol_ * (1.0 + rhs_scale_)) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    // Lock artificials at zero, then drive basic ones out where possible.
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t art_col = n_ + m_ + i;
      lower_[art_col] = 0.0;
      upper_[art_col] = 0.0;
      if (status_[art_col] != ColStatus::kBasic) nonbasic_value_[art_col] = 0.0;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (static_cast<std::size_t>(basis_[i]) < n_ + m_) continue;
      int pivot_col = -1;
      for (std::size_t j = 0; j < n_ + m_; ++j) {
        if (status_[j] == ColStatus::kBasic) continue;
        if (upper_[j] - lower_[j] <= kRatioTol) continue;
        if (std::fabs(tab(i, j)) > 1e-7) {
          pivot_col = static_cast<int>(j);
          break;
        }
      }
      if (pivot_col >= 0) {
        pivot(static_cast<int>(i), pivot_col, 1, 0.0);
      }
      // Otherwise the row is redundant; the artificial stays basic at zero.
    }
  }

  LpStatus phase_status = LpStatus::kOptimal;
  run_phase(cost_, &result.iterations, &phase_status);
  if (phase_status == LpStatus::kIterationLimit) {
    result.status = LpStatus::kIterationLimit;
    return result;
  }
  if (phase_status == LpStatus::kUnbounded) {
    result.status = LpStatus::kUnbounded;
    return result;
  }

  result.status = LpStatus::kOptimal;
  result.x.assign(n_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    if (status_[j] != ColStatus::kBasic) result.x[j] = nonbasic_value_[j];
  }
  for (std::size_t i = 0; i < m_; ++i) {
    const auto b = static_cast<std::size_t>(basis_[i]);
    if (b < n_) result.x[b] = beta_[i];
  }
  for (std::size_t j = 0; j < n_; ++j) {
    // Snap to bounds; keeps branched binaries exactly integral.
    if (lower_[j] != -kInfinity && std::fabs(result.x[j] - lower_[j]) < 1e-9) {
      result.x[j] = lower_[j];
    } else if (upper_[j] != kInfinity && std::fabs(result.x[j] - upper_[j]) < 1e-9) {
      result.x[j] = upper_[j];
    }
  }
  double obj = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    if (cost_[j] != 0.0) obj += cost_[j] * result.x[j];
  }
  result.objective = obj;
  return result;
}

}  // namespace ireland
