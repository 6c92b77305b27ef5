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

#include "ireland/rules.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ireland {

AndClause::AndClause(std::vector<int> feature_indices)
    : features(std::move(feature_indices)) {
  if (features.empty()) throw std::invalid_argument("AND clause cannot be empty");
  std::sort(features.begin(), features.end());
  if (features.front() < 0) throw std::invalid_argument("negative feature index");
  if (std::adjacent_find(features.begin(), features.end()) != features.end()) {
    throw std::invalid_argument("duplicate feature in AND clause");
  }
}

DnfRule::DnfRule(std::vector<AndClause> rule_clauses)
    : clauses(std::move(rule_clauses)) {
  std::set<std::vector<int>> seen;
  for (const AndClause& c : clauses) {
    if (!seen.insert(c.features).second) {
      throw std::invalid_argument("duplicate clause in DNF rule");
    }
  }
}

bool clause_satisfies(const AndClause& c, std::span<const std::uint8_t> row) {
  // Validate every index before answering so that a malformed clause is
  // caught even when an earlier feature already falsifies it.
  bool all = true;
  for (int j : c.features) {
    if (static_cast<std::size_t>(j) >= row.size()) {
      throw std::out_of_range("clause feature index " + std::to_string(j) +
                              " out of range for row of length " +
                              std::to_string(row.size()));
    }
    all = all && row[static_cast<std::size_t>(j)] != 0;
  }
  return all;
}

BitVec clause_coverage(const AndClause& c, const BinaryDataset& ds) {
  if (c.features.empty()) throw std::invalid_argument("empty clause");
  for (int j : c.features) {
    if (static_cast<std::size_t>(j) >= ds.num_features()) {
      throw std::out_of_range("clause feature index out of range");
    }
  }
  BitVec cov = ds.feature_column(static_cast<std::size_t>(c.features[0]));
  for (std::size_t i = 1; i < c.features.size(); ++i) {
    cov &= ds.feature_column(static_cast<std::size_t>(c.features[i]));
  }
  return cov;
}

std::vector<BitVec> coverage_matrix(std::span<const AndClause> pool,
                                    const BinaryDataset& ds) {
  std::vector<BitVec> z;
  z.reserve(pool.size());
  for (const AndClause& c : pool) z.push_back(clause_coverage(c, ds));
  return z;
}

std::vector<std::uint8_t> rule_predict(const DnfRule& r, const BinaryDataset& ds) {
  BitVec fired(ds.num_samples());
  for (const AndClause& c : r.clauses) fired |= clause_coverage(c, ds);
  std::vector<std::uint8_t> y_hat(ds.num_samples());
  for (std::size_t n = 0; n < ds.num_samples(); ++n) y_hat[n] = fired.test(n) ? 1 : 0;
  return y_hat;
}

double balanced_error(std::span<const std::uint8_t> y_hat, const BinaryDataset& ds,
                      const SampleWeights& w) {
  if (y_hat.size() != ds.num_samples() || w.w.size() != ds.num_samples()) {
    throw std::invalid_argument("prediction/weight length mismatch");
  }
  double total = 0.0;
  for (std::size_t n : ds.controls()) total += w.w[n] * (y_hat[n] ? 1.0 : 0.0);
  for (std::size_t n : ds.cases()) total += w.w[n] * (y_hat[n] ? 0.0 : 1.0);
  return total;
}

double normalized_balanced_error(std::span<const std::uint8_t> y_hat,
                                 const BinaryDataset& ds, const SampleWeights& w) {
  return balanced_error(y_hat, ds, w) / static_cast<double>(ds.num_samples());
}

double hamming_loss(const DnfRule& r, const BinaryDataset& ds,
                    const SampleWeights& w) {
  if (w.w.size() != ds.num_samples()) {
    throw std::invalid_argument("weight length mismatch");
  }
  const std::vector<BitVec> z = coverage_matrix(r.clauses, ds);
  double total = 0.0;
  for (std::size_t n : ds.controls()) {
    std::size_t hits = 0;
    for (const BitVec& col : z) hits += col.test(n) ? 1 : 0;
    total += w.w[n] * static_cast<double>(hits);
  }
  for (std::size_t n : ds.cases()) {
    bool fired = false;
    for (const BitVec& col : z) {
      if (col.test(n)) {
        fired = true;
        break;
      }
    }
    if (!fired) total += w.w[n];
  }
  return total;
}

ConfusionCounts confusion(std::span<const std::uint8_t> y_hat,
                          const BinaryDataset& ds) {
  if (y_hat.size() != ds.num_samples()) {
    throw std::invalid_argument("prediction length mismatch");
  }
  ConfusionCounts cc;
  for (std::size_t n = 0; n < ds.num_samples(); ++n) {
    if (ds.label(n)) {
      (y_hat[n] ? cc.tp : cc.fn)++;
    } else {
      (y_hat[n] ? cc.fp : cc.tn)++;
    }
  }
  return cc;
}

double sensitivity(const ConfusionCounts& cc) {
  const std::int64_t denom = cc.tp + cc.fn;
  if (denom == 0) throw std::invalid_argument("sensitivity undefined without cases");
  return static_cast<double>(cc.tp) / static_cast<double>(denom);
}

double specificity(const ConfusionCounts& cc) {
  const std::int64_t denom = cc.tn + cc.fp;
  if (denom == 0) throw std::invalid_argument("specificity undefined without controls");
  return static_cast<double>(cc.tn) / static_cast<double>(denom);
}

std::string format_clause(const AndClause& c) {
  std::ostringstream out;
  for (std::size_t i = 0; i < c.features.size(); ++i) {
    if (i > 0) out << " AND ";
    out << "x" << (c.features[i] + 1);
  }
  return out.str();
}

std::string format_rule(const DnfRule& r) {
  std::ostringstream out;
  for (std::size_t i = 0; i < r.clauses.size(); ++i) {
    if (i > 0) out << "\nOR\n";
    out << format_clause(r.clauses[i]);
  }
  return out.str();
}

namespace {

int parse_feature_token(const std::string& token) {
  if (token.size() < 2 || (token[0] != 'x' && token[0] != 'X')) {
    throw ParseError("expected feature token like `x3`, got `" + token + "`");
  }
  int value = 0;
  for (std::size_t i = 1; i < token.size(); ++i) {
    if (token[i] < '0' || token[i] > '9') {
      throw ParseError("expected feature token like `x3`, got `" + token + "`");
    }
    value = value * 10 + (token[i] - '0');
    if (value > 1000000) throw ParseError("feature index too large: " + token);
  }
  if (value < 1) throw ParseError("feature indices are 1-based: " + token);
  return value - 1;
}

}  // namespace

AndClause parse_clause(const std::string& line) {
  std::istringstream in(line);
  std::vector<int> features;
  std::string token;
  bool expect_feature = true;
  while (in >> token) {
    if (expect_feature) {
      features.push_back(parse_feature_token(token));
    } else if (token != "AND") {
      throw ParseError("expected `AND` between features, got `" + token + "`");
    }
    expect_feature = !expect_feature;
  }
  if (features.empty()) throw ParseError("empty clause line");
  if (expect_feature) throw ParseError("clause line ends with dangling `AND`");
  try {
    return AndClause(std::move(features));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid clause: ") + e.what());
  }
}

DnfRule parse_rule(const std::string& text) {
  std::vector<AndClause> clauses;
  std::istringstream in(text);
  std::string line;
  bool expect_clause = true;
  while (std::getline(in, line)) {
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    std::size_t end = line.find_last_not_of(" \t\r");
    const std::string body = line.substr(begin, end - begin + 1);
    if (expect_clause) {
      clauses.push_back(parse_clause(body));
    } else if (body != "OR") {
      throw ParseError("expected `OR` between clauses, got `" + body + "`");
    }
    expect_clause = !expect_clause;
  }
  if (!clauses.empty() && expect_clause) {
    throw ParseError("rule text ends with dangling `OR`");
  }
  try {
    return DnfRule(std::move(clauses));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid rule: ") + e.what());
  }
}

}  // namespace ireland
