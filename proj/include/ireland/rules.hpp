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

#ifndef IRELAND_RULES_HPP_
#define IRELAND_RULES_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ireland/bitvec.hpp"
#include "ireland/dataset.hpp"

namespace ireland {

// Conjunction over a non-empty set of positive literals. A sample satisfies
// the clause iff every listed feature is 1. Feature indices are 0-based and
// kept sorted; text formats use 1-based indices (x1 is feature 0).
struct AndClause {
  std::vector<int> features;

  AndClause() = default;
  // Sorts the indices; throws std::invalid_argument on empty/duplicate input.
  explicit AndClause(std::vector<int> feature_indices);

  std::size_t size() const { return features.size(); }

  bool operator==(const AndClause& other) const = default;
  bool operator<(const AndClause& other) const { return features < other.features; }
};

// Disjunction of pairwise-distinct AND clauses. An empty rule predicts 0 for
// every sample. Empty clauses cannot exist (see AndClause).
struct DnfRule {
  std::vector<AndClause> clauses;

  DnfRule() = default;
  // Throws std::invalid_argument when two clauses have equal feature sets.
  explicit DnfRule(std::vector<AndClause> rule_clauses);

  std::size_t size() const { return clauses.size(); }

  bool operator==(const DnfRule& other) const = default;
};

struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;
};

// 1 iff every feature of `c` is 1 in `row`. Throws std::out_of_range when a
// feature index exceeds the row length.
bool clause_satisfies(const AndClause& c, std::span<const std::uint8_t> row);

// N-bit coverage of one clause: bit n set iff sample n satisfies the clause.
// Computed as the AND of the clause's feature columns.
BitVec clause_coverage(const AndClause& c, const BinaryDataset& ds);

// One coverage column per pool entry, in pool order.
std::vector<BitVec> coverage_matrix(std::span<const AndClause> pool,
                                    const BinaryDataset& ds);

// Predicted labels: OR of the clause coverages.
std::vector<std::uint8_t> rule_predict(const DnfRule& r, const BinaryDataset& ds);

// Class-weighted error sum: controls predicted 1 contribute w_n, cases
// predicted 0 contribute w_n.
double balanced_error(std::span<const std::uint8_t> y_hat, const BinaryDataset& ds,
                      const SampleWeights& w);

// balanced_error divided by the number of samples.
double normalized_balanced_error(std::span<const std::uint8_t> y_hat,
                                 const BinaryDataset& ds, const SampleWeights& w);

// Weighted count of clause hits on controls plus weighted missed cases:
// sum over controls of w_n * (number of clauses satisfied) plus
// sum over cases of w_n * (1 - prediction).
double hamming_loss(const DnfRule& r, const BinaryDataset& ds,
                    const SampleWeights& w);

ConfusionCounts confusion(std::span<const std::uint8_t> y_hat,
                          const BinaryDataset& ds);

// tp / (tp + fn). Throws std::invalid_argument when there are no cases.
double sensitivity(const ConfusionCounts& cc);

// tn / (tn + fp). Throws std::invalid_argument when there are no controls.
double specificity(const ConfusionCounts& cc);

// Text form: one clause per line (`x12 AND x3`), clauses separated by lines
// containing only `OR`. An empty rule prints as an empty string.
std::string format_clause(const AndClause& c);
std::string format_rule(const DnfRule& r);

// Inverse of format_*; throws ParseError on malformed input.
AndClause parse_clause(const std::string& line);
DnfRule parse_rule(const std::string& text);

}  // namespace ireland

#endif  // IRELAND_RULES_HPP_
