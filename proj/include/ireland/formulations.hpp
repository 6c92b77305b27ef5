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
// Six exact MILP encodings of the DNF learning problem, bp1..bp6.
//
// Every encoding shares the same decision variables:
//   s_kj  : feature j belongs to AND-clause k,
//   t_nk  : clause k fires on sample n,
//   y_n   : the rule predicts 1 for sample n,
// and the per-clause cardinality rows  sum_j s_kj <= M.  The encodings
// differ along three axes:
//
//   loss        bp1-bp4 minimize the weighted classification error
//               sum_{controls} w_n y_n + sum_{cases} w_n (1 - y_n);
//               bp5-bp6 minimize the clause-level variant in which each
//               clause that fires on a control is charged separately:
//               sum_{controls} w_n sum_k t_nk + sum_{cases} w_n (1 - y_n).
//               Controls carry no y variable under the clause-level loss.
//
//   OR rows     linking y_n to the t_nk.  Cases always use the aggregated
//               row y_n - sum_k t_nk <= 0.  Controls use either the
//               aggregated row K y_n - sum_k t_nk >= 0 (bp1, bp2) or one
//               row -y_n + t_nk <= 0 per clause (bp3, bp4).
//
//   AND rows    linking t_nk to the s_kj.  Cases use either the aggregated
//               row J t_nk + sum_j (1 - X_nj) s_kj <= J (bp1, bp3, bp5) or
//               one row t_nk + (1 - X_nj) s_kj <= 1 per feature
//               (bp2, bp4, bp6).  Controls always use the aggregated row
//               t_nk + sum_j (1 - X_nj) s_kj >= 1.
//
// bp4 defaults to a combined control encoding that eliminates the
// controls' t variables: y_n + sum_j (1 - X_nj) s_kj >= 1 per clause.
//
// With relax_safe_vars set, variables whose integrality is implied by the
// remaining binaries at an optimum are declared continuous, shrinking the
// branch-and-bound search space.  The split is fixed per encoding; see
// table_dims for the resulting counts.  Note the bp3/bp4 splits keep only
// s binary; an aggregated case AND row then bounds a continuous t_nk by a
// fractional value on partially matched samples, so equality of the
// relaxed and all-binary optima is a property of benign inputs (for
// example separable ones), not of every dataset.  See the test suite.

#ifndef IRELAND_FORMULATIONS_HPP_
#define IRELAND_FORMULATIONS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ireland/dataset.hpp"
#include "ireland/milp.hpp"
#include "ireland/rules.hpp"

namespace ireland {

enum class BpForm : int {
  kBp1 = 1,
  kBp2 = 2,
  kBp3 = 3,
  kBp4 = 4,
  kBp5 = 5,
  kBp6 = 6,
};

// All six encodings, in order.
std::span<const BpForm> all_bp_forms();

// "bp1".."bp6".
std::string bp_form_name(BpForm form);

// Inverse of bp_form_name, case-insensitive; nullopt for unknown names.
std::optional<BpForm> parse_bp_form(const std::string& name);

struct FormulationId {
  BpForm form = BpForm::kBp1;
  // Declare implied-integral variables continuous (see file comment).
  bool relax_safe_vars = false;
  // Meaningful only for bp4: eliminate the controls' t variables by
  // merging their OR and AND rows.  Ignored by the other encodings.
  bool use_combined_bp4 = true;
};

// Closed-form model dimensions for a dataset with n0 controls, n1 cases,
// j features, and k clauses.  Binary/continuous counts assume the
// relax_safe_vars split; bp4 counts assume the combined control encoding.
struct ModelDims {
  std::int64_t n_constraints = 0;
  std::int64_t n_binary = 0;
  std::int64_t n_continuous = 0;
};

ModelDims table_dims(BpForm form, std::int64_t n0, std::int64_t n1,
                     std::int64_t j, std::int64_t k);

// Builds the MILP for the given encoding with at most max_clauses
// AND-clauses of at most max_clause_size features each.
//
// Variable names: s_<k>_<j>, t_<n>_<k>, y_<n>, all 1-based.
// Constraint names: card_<k>, and_case_<n>_<k>[_<j>], and_ctrl_<n>_<k>,
// mix_ctrl_<n>_<k>, or_case_<n>, or_ctrl_<n>[_<k>].
//
// Requires max_clauses >= 1 and 1 <= max_clause_size <= num_features.
// Throws std::invalid_argument when N * max_clauses * J exceeds the
// model-size guard of roughly two million cells.
MilpModel build(const FormulationId& id, const BinaryDataset& ds,
                int max_clauses, int max_clause_size);

// Reads the clauses out of a solution of any model built above: clause k
// collects the features whose s_kj exceeds 1 - tol.  Values farther than
// tol from both 0 and 1 raise std::invalid_argument.  Empty clauses are
// dropped and duplicate clauses are merged, so the result can hold fewer
// than max_clauses clauses, including zero (a rule predicting all zeros).
DnfRule extract_rule(const MilpModel& model, std::span<const double> solution,
                     double tol = 1e-6);

// Branching priorities that explore the rule-defining variables first:
// once the clause memberships (s_*) or clause picks (q_*) are fixed, all
// other variables follow from them, so the tree stays shallow.  Class 0
// for s_* and q_*, class 1 otherwise.
std::vector<int> s_first_priorities(const MilpModel& model);

// The four linking-row families, viewed as polyhedra over fractional
// points.  kOrPerClause is a subset of kOrAggregated, and kAndPerFeature
// a subset of kAndAggregated; the per-sample membership tests below
// witness the inclusions.
enum class ConstraintFamily {
  kOrAggregated,   // y <= sum t  and  K y >= sum t
  kOrPerClause,    // y <= sum t  and  y >= t_k for every k
  kAndAggregated,  // J t + D <= J  and  t + D >= 1, D = sum (1 - x_j) s_j
  kAndPerFeature,  // t + (1 - x_j) s_j <= 1 per feature  and  t + D >= 1
};

// A fractional (prediction, clause indicators) point.
struct OrPoint {
  double y_hat = 0.0;
  std::vector<double> t;
};

// A fractional (clause indicator, feature selections) point on a fixed
// sample row x.
struct AndPoint {
  double t = 0.0;
  std::vector<double> s;
  std::vector<std::uint8_t> x;
};

// Membership of the point in the family's polyhedron.
bool relaxation_point_check(ConstraintFamily family, const OrPoint& point);
bool relaxation_point_check(ConstraintFamily family, const AndPoint& point);

}  // namespace ireland

#endif  // IRELAND_FORMULATIONS_HPP_
