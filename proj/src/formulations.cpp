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

#include "ireland/formulations.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace ireland {
namespace {

constexpr std::int64_t kMaxBuildCells = 2'000'000;

constexpr BpForm kAllForms[] = {BpForm::kBp1, BpForm::kBp2, BpForm::kBp3,
                                BpForm::kBp4, BpForm::kBp5, BpForm::kBp6};

// Per-encoding structure; see the header comment for the three axes.
struct Traits {
  bool clause_level_loss;     // charge each control-covering clause
  bool per_clause_or_ctrl;    // -y + t_nk <= 0 instead of K y >= sum t
  bool per_feature_and_case;  // t + (1-x) s <= 1 rows instead of one row
  // Variable kinds under relax_safe_vars (s stays binary everywhere).
  bool case_t_binary;
  bool ctrl_y_binary;
};

Traits traits_of(BpForm form) {
  switch (form) {
    case BpForm::kBp1: return {false, false, false, true, true};
    case BpForm::kBp2: return {false, false, true, false, true};
    case BpForm::kBp3: return {false, true, false, false, false};
    case BpForm::kBp4: return {false, true, true, false, false};
    case BpForm::kBp5: return {true, false, false, true, false};
    case BpForm::kBp6: return {true, false, true, false, false};
  }
  throw std::invalid_argument("unknown formulation");
}

std::string tag(const char* prefix, std::size_t a) {
  return std::string(prefix) + "_" + std::to_string(a + 1);
}

std::string tag(const char* prefix, std::size_t a, std::size_t b) {
  return tag(prefix, a) + "_" + std::to_string(b + 1);
}

std::string tag(const char* prefix, std::size_t a, std::size_t b, std::size_t c) {
  return tag(prefix, a, b) + "_" + std::to_string(c + 1);
}

}  // namespace

std::span<const BpForm> all_bp_forms() { return kAllForms; }

std::string bp_form_name(BpForm form) {
  return "bp" + std::to_string(static_cast<int>(form));
}

std::optional<BpForm> parse_bp_form(const std::string& name) {
  std::string low;
  for (char c : name) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (BpForm form : kAllForms) {
    if (low == bp_form_name(form)) return form;
  }
  return std::nullopt;
}

ModelDims table_dims(BpForm form, std::int64_t n0, std::int64_t n1,
                     std::int64_t j, std::int64_t k) {
  const std::int64_t n = n0 + n1;
  ModelDims d;
  switch (form) {
    case BpForm::kBp1:
      d.n_constraints = k + n * k + n;
      d.n_binary = j * k + n1 * k + n0;
      d.n_continuous = n0 * k + n1;
      break;
    case BpForm::kBp2:
      d.n_constraints = k + n0 * k + n1 * j * k + n;
      d.n_binary = j * k + n0;
      d.n_continuous = n * k + n1;
      break;
    case BpForm::kBp3:
      d.n_constraints = k + n * k + n0 * k + n1;
      d.n_binary = j * k;
      d.n_continuous = n * k + n;
      break;
    case BpForm::kBp4:
      d.n_constraints = k + n0 * k + n1 + n1 * j * k;
      d.n_binary = j * k;
      d.n_continuous = n1 * k + n;
      break;
    case BpForm::kBp5:
      d.n_constraints = k + n * k + n1;
      d.n_binary = j * k + n1 * k;
      d.n_continuous = n0 * k + n1;
      break;
    case BpForm::kBp6:
      d.n_constraints = k + n0 * k + n1 * j * k + n1;
      d.n_binary = j * k;
      d.n_continuous = n * k + n1;
      break;
  }
  return d;
}

MilpModel build(const FormulationId& id, const BinaryDataset& ds,
                int max_clauses, int max_clause_size) {
  const std::size_t n_samples = ds.num_samples();
  const std::size_t n_features = ds.num_features();
  if (max_clauses < 1) throw std::invalid_argument("need at least one clause");
  if (max_clause_size < 1 ||
      static_cast<std::size_t>(max_clause_size) > n_features) {
    throw std::invalid_argument("clause size cap must lie in [1, num_features]");
  }
  const std::int64_t cells = static_cast<std::int64_t>(n_samples) *
                             static_cast<std::int64_t>(max_clauses) *
                             static_cast<std::int64_t>(n_features);
  if (cells > kMaxBuildCells) {
    throw std::invalid_argument("model would exceed the size guard: N*K*J = " +
                                std::to_string(cells));
  }
  if (ds.num_cases() == 0 || ds.num_controls() == 0) {
    throw std::invalid_argument("dataset must contain both classes");
  }

  const Traits tr = traits_of(id.form);
  const bool combined_bp4 = id.form == BpForm::kBp4 && id.use_combined_bp4;
  const std::size_t K = static_cast<std::size_t>(max_clauses);
  const std::size_t J = n_features;
  const SampleWeights weights = class_weights(ds);
  const bool relax = id.relax_safe_vars;

  MilpModel m;

  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t j = 0; j < J; ++j) m.add_binary(tag("s", k, j));
  }

  // Clause-fire variables.  Controls have none under the combined bp4
  // encoding; every other encoding keeps the full t grid.
  std::vector<int> t_index(n_samples * K, -1);
  for (std::size_t n = 0; n < n_samples; ++n) {
    const bool is_case = ds.label(n) != 0;
    if (!is_case && combined_bp4) continue;
    const bool binary =
        !relax || (is_case ? tr.case_t_binary : false);
    for (std::size_t k = 0; k < K; ++k) {
      const std::string name = tag("t", n, k);
      t_index[n * K + k] =
          binary ? m.add_binary(name) : m.add_continuous(name, 0.0, 1.0);
    }
  }

  // Prediction variables.  Controls have none under the clause-level loss.
  std::vector<int> y_index(n_samples, -1);
  for (std::size_t n = 0; n < n_samples; ++n) {
    const bool is_case = ds.label(n) != 0;
    if (!is_case && tr.clause_level_loss) continue;
    const bool binary = !relax || (!is_case && tr.ctrl_y_binary);
    const std::string name = tag("y", n);
    y_index[n] =
        binary ? m.add_binary(name) : m.add_continuous(name, 0.0, 1.0);
  }

  for (std::size_t k = 0; k < K; ++k) {
    std::vector<int> vars;
    std::vector<double> coeffs;
    for (std::size_t j = 0; j < J; ++j) {
      vars.push_back(static_cast<int>(k * J + j));
      coeffs.push_back(1.0);
    }
    m.add_constraint(tag("card", k), std::move(vars), std::move(coeffs),
                     Relation::kLessEq, static_cast<double>(max_clause_size));
  }

  // Features absent from a sample, i.e. the j with 1 - X_nj = 1.
  const auto missing_features = [&](std::size_t n) {
    std::vector<std::size_t> out;
    const auto row = ds.row(n);
    for (std::size_t j = 0; j < J; ++j) {
      if (!row[j]) out.push_back(j);
    }
    return out;
  };

  for (std::size_t n = 0; n < n_samples; ++n) {
    const bool is_case = ds.label(n) != 0;
    const std::vector<std::size_t> missing = missing_features(n);
    for (std::size_t k = 0; k < K; ++k) {
      if (is_case) {
        if (tr.per_feature_and_case) {
          // t_nk + (1 - X_nj) s_kj <= 1, one row per feature.
          for (std::size_t j = 0; j < J; ++j) {
            std::vector<int> vars{t_index[n * K + k]};
            std::vector<double> coeffs{1.0};
            if (!ds.x(n, j)) {
              vars.push_back(static_cast<int>(k * J + j));
              coeffs.push_back(1.0);
            }
            m.add_constraint(tag("and_case", n, k, j), std::move(vars),
                             std::move(coeffs), Relation::kLessEq, 1.0);
          }
        } else {
          // J t_nk + sum_j (1 - X_nj) s_kj <= J.
          std::vector<int> vars{t_index[n * K + k]};
          std::vector<double> coeffs{static_cast<double>(J)};
          for (std::size_t j : missing) {
            vars.push_back(static_cast<int>(k * J + j));
            coeffs.push_back(1.0);
          }
          m.add_constraint(tag("and_case", n, k), std::move(vars),
                           std::move(coeffs), Relation::kLessEq,
                           static_cast<double>(J));
        }
      } else if (combined_bp4) {
        // y_n + sum_j (1 - X_nj) s_kj >= 1.
        std::vector<int> vars{y_index[n]};
        std::vector<double> coeffs{1.0};
        for (std::size_t j : missing) {
          vars.push_back(static_cast<int>(k * J + j));
          coeffs.push_back(1.0);
        }
        m.add_constraint(tag("mix_ctrl", n, k), std::move(vars),
                         std::move(coeffs), Relation::kGreaterEq, 1.0);
      } else {
        // t_nk + sum_j (1 - X_nj) s_kj >= 1.
        std::vector<int> vars{t_index[n * K + k]};
        std::vector<double> coeffs{1.0};
        for (std::size_t j : missing) {
          vars.push_back(static_cast<int>(k * J + j));
          coeffs.push_back(1.0);
        }
        m.add_constraint(tag("and_ctrl", n, k), std::move(vars),
                         std::move(coeffs), Relation::kGreaterEq, 1.0);
      }
    }
  }

  for (std::size_t n = 0; n < n_samples; ++n) {
    const bool is_case = ds.label(n) != 0;
    if (is_case) {
      // y_n - sum_k t_nk <= 0.
      std::vector<int> vars{y_index[n]};
      std::vector<double> coeffs{1.0};
      for (std::size_t k = 0; k < K; ++k) {
        vars.push_back(t_index[n * K + k]);
        coeffs.push_back(-1.0);
      }
      m.add_constraint(tag("or_case", n), std::move(vars), std::move(coeffs),
                       Relation::kLessEq, 0.0);
    } else if (tr.clause_level_loss || combined_bp4) {
      continue;  // no control OR rows
    } else if (tr.per_clause_or_ctrl) {
      // -y_n + t_nk <= 0 per clause.
      for (std::size_t k = 0; k < K; ++k) {
        m.add_constraint(tag("or_ctrl", n, k), {y_index[n], t_index[n * K + k]},
                         {-1.0, 1.0}, Relation::kLessEq, 0.0);
      }
    } else {
      // K y_n - sum_k t_nk >= 0.
      std::vector<int> vars{y_index[n]};
      std::vector<double> coeffs{static_cast<double>(K)};
      for (std::size_t k = 0; k < K; ++k) {
        vars.push_back(t_index[n * K + k]);
        coeffs.push_back(-1.0);
      }
      m.add_constraint(tag("or_ctrl", n), std::move(vars), std::move(coeffs),
                       Relation::kGreaterEq, 0.0);
    }
  }

  // Weighted loss; the constant makes it the exact error of the rule.
  std::vector<int> obj_vars;
  std::vector<double> obj_coeffs;
  double constant = 0.0;
  for (std::size_t n : ds.cases()) {
    obj_vars.push_back(y_index[n]);
    obj_coeffs.push_back(-weights.w[n]);
    constant += weights.w[n];
  }
  for (std::size_t n : ds.controls()) {
    if (tr.clause_level_loss) {
      for (std::size_t k = 0; k < K; ++k) {
        obj_vars.push_back(t_index[n * K + k]);
        obj_coeffs.push_back(weights.w[n]);
      }
    } else {
      obj_vars.push_back(y_index[n]);
      obj_coeffs.push_back(weights.w[n]);
    }
  }
  m.set_objective(ObjSense::kMinimize, std::move(obj_vars),
                  std::move(obj_coeffs), constant);
  return m;
}

DnfRule extract_rule(const MilpModel& model, std::span<const double> solution,
                     double tol) {
  if (solution.size() != model.num_variables()) {
    throw std::invalid_argument("solution length does not match the model");
  }
  // Clause index -> selected features, discovered from variable names.
  std::map<std::size_t, std::vector<int>> picked;
  for (std::size_t i = 0; i < model.num_variables(); ++i) {
    const std::string& name = model.variable(i).name;
    if (name.size() < 5 || name.compare(0, 2, "s_") != 0) continue;
    const std::size_t sep = name.find('_', 2);
    if (sep == std::string::npos) continue;
    std::size_t k = 0;
    std::size_t j = 0;
    try {
      std::size_t used_k = 0;
      std::size_t used_j = 0;
      const std::string k_text = name.substr(2, sep - 2);
      const std::string j_text = name.substr(sep + 1);
      k = std::stoull(k_text, &used_k);
      j = std::stoull(j_text, &used_j);
      if (used_k != k_text.size() || used_j != j_text.size() || k == 0 || j == 0) {
        continue;
      }
    } catch (const std::exception&) {
      continue;  // not a clause-membership variable
    }
    const double v = solution[i];
    if (v > tol && v < 1.0 - tol) {
      throw std::invalid_argument("fractional clause membership " + name +
                                  " = " + std::to_string(v));
    }
    if (v >= 1.0 - tol) {
      picked[k].push_back(static_cast<int>(j) - 1);
    } else {
      picked.try_emplace(k);
    }
  }
  std::vector<AndClause> clauses;
  std::set<std::vector<int>> seen;
  for (auto& [k, features] : picked) {
    if (features.empty()) continue;  // unused clause slot
    AndClause clause(std::move(features));
    if (seen.insert(clause.features).second) clauses.push_back(std::move(clause));
  }
  return DnfRule(std::move(clauses));
}

std::vector<int> s_first_priorities(const MilpModel& model) {
  std::vector<int> priority(model.num_variables(), 1);
  for (std::size_t i = 0; i < model.num_variables(); ++i) {
    const std::string& name = model.variable(i).name;
    if (name.size() >= 2 &&
        (name.compare(0, 2, "s_") == 0 || name.compare(0, 2, "q_") == 0)) {
      priority[i] = 0;
    }
  }
  return priority;
}

bool relaxation_point_check(ConstraintFamily family, const OrPoint& point) {
  double sum = 0.0;
  for (double v : point.t) sum += v;
  const double k = static_cast<double>(point.t.size());
  switch (family) {
    case ConstraintFamily::kOrAggregated:
      return point.y_hat <= sum && k * point.y_hat >= sum;
    case ConstraintFamily::kOrPerClause: {
      if (point.y_hat > sum) return false;
      for (double v : point.t) {
        if (point.y_hat < v) return false;
      }
      return true;
    }
    case ConstraintFamily::kAndAggregated:
    case ConstraintFamily::kAndPerFeature:
      throw std::invalid_argument("AND families take an AndPoint");
  }
  return false;
}

bool relaxation_point_check(ConstraintFamily family, const AndPoint& point) {
  if (point.s.size() != point.x.size()) {
    throw std::invalid_argument("selection/row length mismatch");
  }
  const double j_count = static_cast<double>(point.s.size());
  double mismatch = 0.0;  // D = sum_j (1 - x_j) s_j
  for (std::size_t j = 0; j < point.s.size(); ++j) {
    if (!point.x[j]) mismatch += point.s[j];
  }
  switch (family) {
    case ConstraintFamily::kAndAggregated:
      return j_count * point.t + mismatch <= j_count &&
             point.t + mismatch >= 1.0;
    case ConstraintFamily::kAndPerFeature: {
      for (std::size_t j = 0; j < point.s.size(); ++j) {
        const double add = point.x[j] ? 0.0 : point.s[j];
        if (point.t + add > 1.0) return false;
      }
      return point.t + mismatch >= 1.0;
    }
    case ConstraintFamily::kOrAggregated:
    case ConstraintFamily::kOrPerClause:
      throw std::invalid_argument("OR families take an OrPoint");
  }
  return false;
}

}  // namespace ireland
