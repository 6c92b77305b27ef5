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

#ifndef IRELAND_SRC_SIMPLEX_HPP_
#define IRELAND_SRC_SIMPLEX_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "ireland/milp.hpp"

namespace ireland {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

// LP outcome in minimization sense over the structural variables only.
struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  std::vector<double> x;
  double objective = 0.0;
  std::int64_t iterations = 0;
};

// Bounded-variable primal simplex on a dense tableau.
//
// The solver is built once per model (rows and columns are fixed) and then
// re-solved under varying structural bounds, which is exactly the access
// pattern of branch-and-bound. Each solve runs two phases: Phase I drives
// artificial variables (added only for rows whose initial slack residual is
// out of range) to zero, Phase II optimizes the real cost. Entering column:
// largest reduced-cost violation, ties by lowest index; after a run of
// degenerate pivots the rule switches to Bland's (lowest index) until strict
// progress resumes, which prevents cycling. All ties break deterministically.
class SimplexSolver {
 public:
  // The objective is read from the model and converted to minimization;
  // `objective` in results is always in min sense and excludes the model's
  // constant term.
  explicit SimplexSolver(const MilpModel& model, double feasibility_tol = 1e-7);

  // `lb`/`ub` give the bounds for every structural variable (model order);
  // binary variables are treated through these bounds alone.
  LpResult solve(std::span<const double> lb, std::span<const double> ub);

  std::int64_t max_iterations() const { return max_iterations_; }

 private:
  enum class ColStatus : std::uint8_t { kAtLower, kAtUpper, kFree, kBasic };

  double reduced_cost(const std::vector<double>& cost, int col) const;
  void compute_duals(const std::vector<double>& cost);
  // Returns false when no improving column exists (optimal for `cost`).
  bool pick_entering(const std::vector<double>& cost, bool bland, int* col,
                     int* direction);
  // One ratio-test step for entering column/direction. Returns false on
  // unboundedness.
  bool step(int entering, int direction);
  void pivot(int row, int entering, int direction, double delta);
  double run_phase(const std::vector<double>& cost, std::int64_t* iterations,
                   LpStatus* status);

  // Fixed problem data.
  std::size_t n_ = 0;          // structural columns
  std::size_t m_ = 0;          // rows
  std::size_t total_cols_ = 0; // structural + slack + artificial
  std::vector<double> matrix_; // m x (n + m) row-major: structural + slack
  std::vector<double> rhs_;
  std::vector<double> cost_;   // Phase II cost, min sense, structural only prefix
  std::vector<double> slack_lower_, slack_upper_;
  double feasibility_tol_;
  double rhs_scale_ = 1.0;
  std::int64_t max_iterations_ = 0;

  // Per-solve state.
  std::vector<double> tableau_;      // m x total_cols_
  std::vector<double> lower_, upper_;
  std::vector<double> nonbasic_value_;
  std::vector<ColStatus> status_;
  std::vector<int> basis_;
  std::vector<double> beta_;
  std::vector<double> duals_;        // c_B^T, length m
  double last_step_ = 0.0;           // ratio-test step of the latest iteration

  double tab(std::size_t row, std::size_t col) const {
    return tableau_[row * total_cols_ + col];
  }
};

}  // namespace ireland

#endif  // IRELAND_SRC_SIMPLEX_HPP_
