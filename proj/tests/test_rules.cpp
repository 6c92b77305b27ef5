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
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "ireland/dataset.hpp"

namespace ireland {
namespace {

BinaryDataset random_dataset(std::mt19937& rng, std::size_t n, std::size_t j) {
  std::vector<std::uint8_t> rows(n * j);
  std::vector<std::uint8_t> labels(n);
  for (auto& v : rows) v = rng() & 1u;
  for (auto& v : labels) v = rng() & 1u;
  labels[0] = 1;
  labels[n - 1] = 0;
  return BinaryDataset(j, std::move(rows), std::move(labels));
}

DnfRule random_rule(std::mt19937& rng, std::size_t j, std::size_t max_clauses) {
  std::vector<AndClause> clauses;
  const std::size_t count = 1 + rng() % max_clauses;
  for (std::size_t k = 0; k < count && clauses.size() < count; ++k) {
    std::vector<int> features;
    const std::size_t size = 1 + rng() % std::min<std::size_t>(j, 3);
    while (features.size() < size) {
      const int f = static_cast<int>(rng() % j);
      if (std::find(features.begin(), features.end(), f) == features.end()) {
        features.push_back(f);
      }
    }
    AndClause c(std::move(features));
    const bool duplicate =
        std::find(clauses.begin(), clauses.end(), c) != clauses.end();
    if (!duplicate) clauses.push_back(std::move(c));
  }
  return DnfRule(std::move(clauses));
}

TEST_CASE("AndClause construction sorts and validates") {
  const AndClause c({3, 1});
  CHECK(c.features == std::vector<int>{1, 3});
  CHECK(c.size() == 2);
  CHECK_THROWS_AS(AndClause(std::vector<int>{}), std::invalid_argument);
  CHECK_THROWS_AS(AndClause({2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(AndClause({-1}), std::invalid_argument);
}

TEST_CASE("DnfRule rejects duplicate clauses") {
  CHECK_THROWS_AS(DnfRule({AndClause({0}), AndClause({0})}),
                  std::invalid_argument);
  const DnfRule ok({AndClause({0}), AndClause({0, 1})});
  CHECK(ok.size() == 2);
  CHECK(DnfRule{}.size() == 0);
}

TEST_CASE("clause satisfaction checks every listed feature") {
  // Text-format indices are 1-based: x1/x3 are features 0 and 2.
  const AndClause c13({0, 2});
  const std::vector<std::uint8_t> row_a = {1, 0, 1};
  const std::vector<std::uint8_t> row_b = {1, 1, 0};
  CHECK(clause_satisfies(c13, row_a));
  CHECK_FALSE(clause_satisfies(c13, row_b));

  const AndClause c2({1});
  const std::vector<std::uint8_t> row_c = {0, 1};
  CHECK(clause_satisfies(c2, row_c));

  CHECK_THROWS_AS(clause_satisfies(c13, std::span<const std::uint8_t>(
                                            row_c.data(), row_c.size())),
                  std::out_of_range);
}

TEST_CASE("clause coverage equals per-row satisfaction") {
  std::mt19937 rng(21u);
  const BinaryDataset ds = random_dataset(rng, 37, 6);
  for (int trial = 0; trial < 10; ++trial) {
    const DnfRule r = random_rule(rng, 6, 1);
    const AndClause& c = r.clauses[0];
    const BitVec cov = clause_coverage(c, ds);
    REQUIRE(cov.size() == ds.num_samples());
    for (std::size_t n = 0; n < ds.num_samples(); ++n) {
      CHECK(cov.test(n) == clause_satisfies(c, ds.row(n)));
    }
  }
}

TEST_CASE("coverage matrix columns follow the pool order") {
  const BinaryDataset ds(2, {1, 1, 1, 0, 0, 1, 0, 0}, {1, 1, 0, 0});
  const std::vector<AndClause> pool = {AndClause({0}), AndClause({1}),
                                       AndClause({0})};
  const std::vector<BitVec> z = coverage_matrix(pool, ds);
  REQUIRE(z.size() == 3);
  // Column 0: x1 set on samples 0,1. Column 1: x2 set on samples 0,2.
  CHECK(z[0].test(0));
  CHECK(z[0].test(1));
  CHECK_FALSE(z[0].test(2));
  CHECK(z[1].test(0));
  CHECK_FALSE(z[1].test(1));
  CHECK(z[1].test(2));
  // A duplicated clause yields an identical column.
  CHECK(z[2] == z[0]);
}

TEST_CASE("rule_predict is the OR of clause coverages") {
  const BinaryDataset ds(2, {1, 0, 0, 1, 0, 0, 1, 1}, {1, 1, 0, 1});

  SUBCASE("empty rule predicts all zeros") {
    const std::vector<std::uint8_t> y_hat = rule_predict(DnfRule{}, ds);
    CHECK(y_hat == std::vector<std::uint8_t>{0, 0, 0, 0});
  }

  SUBCASE("two clauses combine elementwise") {
    const DnfRule r({AndClause({0}), AndClause({1})});
    const std::vector<std::uint8_t> y_hat = rule_predict(r, ds);
    CHECK(y_hat == std::vector<std::uint8_t>{1, 1, 0, 1});
  }

  SUBCASE("adding a clause never clears a prediction") {
    std::mt19937 rng(5u);
    for (int trial = 0; trial < 20; ++trial) {
      const BinaryDataset rds = random_dataset(rng, 23, 5);
      DnfRule r = random_rule(rng, 5, 2);
      const std::vector<std::uint8_t> before = rule_predict(r, rds);
      AndClause extra({static_cast<int>(rng() % 5)});
      if (std::find(r.clauses.begin(), r.clauses.end(), extra) !=
          r.clauses.end()) {
        continue;
      }
      r.clauses.push_back(extra);
      const std::vector<std::uint8_t> after = rule_predict(r, rds);
      for (std::size_t n = 0; n < before.size(); ++n) {
        if (before[n]) CHECK(after[n]);
      }
    }
  }
}

TEST_CASE("balanced error matches the weighted miss formula") {
  // 2 cases then 2 controls; every weight is 0.5.
  const BinaryDataset ds(1, {1, 1, 1, 0}, {1, 1, 0, 0});
  const SampleWeights w = class_weights(ds);

  SUBCASE("perfect prediction scores zero") {
    const std::vector<std::uint8_t> y_hat = {1, 1, 0, 0};
    CHECK(balanced_error(y_hat, ds, w) == doctest::Approx(0.0));
  }

  SUBCASE("one false positive scores 0.5") {
    const std::vector<std::uint8_t> y_hat = {1, 1, 1, 0};
    CHECK(balanced_error(y_hat, ds, w) == doctest::Approx(0.5));
  }

  SUBCASE("all-zero prediction scores the full case mass") {
    const std::vector<std::uint8_t> y_hat = {0, 0, 0, 0};
    // |N0| * |N1| / N = 2 * 2 / 4 = 1.
    CHECK(balanced_error(y_hat, ds, w) == doctest::Approx(1.0));
  }

  SUBCASE("normalized form divides by N") {
    const std::vector<std::uint8_t> y_hat = {1, 1, 1, 0};
    CHECK(normalized_balanced_error(y_hat, ds, w) ==
          doctest::Approx(0.5 / 4.0));
  }

  SUBCASE("score is invariant under sample permutation") {
    std::mt19937 rng(13u);
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t n = 12;
      const BinaryDataset base = random_dataset(rng, n, 4);
      const SampleWeights bw = class_weights(base);
      std::vector<std::uint8_t> y_hat(n);
      for (auto& v : y_hat) v = rng() & 1u;
      const double original = balanced_error(y_hat, base, bw);

      std::vector<std::size_t> perm(n);
      for (std::size_t i = 0; i < n; ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<std::uint8_t> rows(n * 4);
      std::vector<std::uint8_t> labels(n);
      std::vector<std::uint8_t> y_hat_p(n);
      for (std::size_t i = 0; i < n; ++i) {
        labels[i] = base.label(perm[i]) ? 1 : 0;
        y_hat_p[i] = y_hat[perm[i]];
        for (std::size_t j = 0; j < 4; ++j) {
          rows[i * 4 + j] = base.x(perm[i], j) ? 1 : 0;
        }
      }
      const BinaryDataset permuted(4, std::move(rows), std::move(labels));
      const SampleWeights pw = class_weights(permuted);
      CHECK(balanced_error(y_hat_p, permuted, pw) ==
            doctest::Approx(original).epsilon(1e-12));
    }
  }
}

TEST_CASE("hamming loss counts every clause hit on controls") {
  // 2 cases then 2 controls, weights 0.5 each. Clauses x1 and x2.
  // Case 0 = (0,0): missed. Case 1 = (1,0): covered.
  // Control 2 = (1,1): satisfies both clauses. Control 3 = (0,0): clean.
  const BinaryDataset ds(2, {0, 0, 1, 0, 1, 1, 0, 0}, {1, 1, 0, 0});
  const SampleWeights w = class_weights(ds);
  const DnfRule r({AndClause({0}), AndClause({1})});

  CHECK(hamming_loss(r, ds, w) == doctest::Approx(1.5));

  const std::vector<std::uint8_t> y_hat = rule_predict(r, ds);
  // Balanced error sees one FP and one FN: 1.0 < 1.5.
  CHECK(balanced_error(y_hat, ds, w) == doctest::Approx(1.0));
}

TEST_CASE("hamming loss is zero for a clean perfect rule") {
  // Single clause x1; cases have x1=1, controls have x1=0.
  const BinaryDataset ds(1, {1, 1, 0, 0}, {1, 1, 0, 0});
  const SampleWeights w = class_weights(ds);
  const DnfRule r({AndClause({0})});
  CHECK(hamming_loss(r, ds, w) == doctest::Approx(0.0));
  CHECK(balanced_error(rule_predict(r, ds), ds, w) == doctest::Approx(0.0));
}

TEST_CASE("hamming loss dominates balanced error") {
  std::mt19937 rng(29u);
  for (int trial = 0; trial < 50; ++trial) {
    const BinaryDataset ds = random_dataset(rng, 20, 5);
    const SampleWeights w = class_weights(ds);
    const DnfRule r = random_rule(rng, 5, 3);
    const double hamming = hamming_loss(r, ds, w);
    const double balanced = balanced_error(rule_predict(r, ds), ds, w);
    CHECK(hamming >= balanced - 1e-12);
    CHECK(balanced >= -1e-12);
    const double cap = 2.0 * static_cast<double>(ds.num_controls()) *
                       static_cast<double>(ds.num_cases()) /
                       static_cast<double>(ds.num_samples());
    CHECK(balanced <= cap + 1e-12);
  }
}

TEST_CASE("confusion counts and the derived ratios") {
  const BinaryDataset ds(1, {1, 1, 1, 0, 0, 0}, {1, 1, 1, 1, 0, 0});

  SUBCASE("perfect prediction") {
    const std::vector<std::uint8_t> y_hat = {1, 1, 1, 1, 0, 0};
    const ConfusionCounts cc = confusion(y_hat, ds);
    CHECK(cc.tp == 4);
    CHECK(cc.fn == 0);
    CHECK(cc.tn == 2);
    CHECK(cc.fp == 0);
    CHECK(sensitivity(cc) == doctest::Approx(1.0));
    CHECK(specificity(cc) == doctest::Approx(1.0));
  }

  SUBCASE("all-zero prediction") {
    const std::vector<std::uint8_t> y_hat(6, 0);
    const ConfusionCounts cc = confusion(y_hat, ds);
    CHECK(sensitivity(cc) == doctest::Approx(0.0));
    CHECK(specificity(cc) == doctest::Approx(1.0));
  }

  SUBCASE("three of four cases found") {
    const std::vector<std::uint8_t> y_hat = {1, 1, 1, 0, 0, 0};
    const ConfusionCounts cc = confusion(y_hat, ds);
    CHECK(cc.tp == 3);
    CHECK(cc.fn == 1);
    CHECK(sensitivity(cc) == doctest::Approx(0.75));
  }

  SUBCASE("class totals are preserved") {
    std::mt19937 rng(17u);
    std::vector<std::uint8_t> y_hat(6);
    for (int trial = 0; trial < 10; ++trial) {
      for (auto& v : y_hat) v = rng() & 1u;
      const ConfusionCounts cc = confusion(y_hat, ds);
      CHECK(cc.tp + cc.fn == static_cast<std::int64_t>(ds.num_cases()));
      CHECK(cc.fp + cc.tn == static_cast<std::int64_t>(ds.num_controls()));
    }
  }

  SUBCASE("empty-class ratios are rejected") {
    ConfusionCounts no_cases;
    no_cases.tn = 1;
    CHECK_THROWS_AS(sensitivity(no_cases), std::invalid_argument);
    ConfusionCounts no_controls;
    no_controls.tp = 1;
    CHECK_THROWS_AS(specificity(no_controls), std::invalid_argument);
  }
}

TEST_CASE("rule text format round-trips") {
  const AndClause c({0, 2, 11});
  CHECK(format_clause(c) == "x1 AND x3 AND x12");
  CHECK(parse_clause("x1 AND x3 AND x12") == c);
  CHECK(parse_clause("  x3   AND x1 AND   x12 ") == c);

  const DnfRule r({AndClause({0, 2}), AndClause({4})});
  const std::string text = format_rule(r);
  CHECK(text == "x1 AND x3\nOR\nx5");
  CHECK(parse_rule(text) == r);

  CHECK(format_rule(DnfRule{}) == "");
  CHECK(parse_rule("") == DnfRule{});
  CHECK(parse_rule("\n  \n") == DnfRule{});

  std::mt19937 rng(31u);
  for (int trial = 0; trial < 20; ++trial) {
    const DnfRule random = random_rule(rng, 9, 4);
    CHECK(parse_rule(format_rule(random)) == random);
  }
}

TEST_CASE("rule parser rejects malformed text") {
  CHECK_THROWS_AS(parse_clause(""), ParseError);
  CHECK_THROWS_AS(parse_clause("x1 AND"), ParseError);
  CHECK_THROWS_AS(parse_clause("x1 x2"), ParseError);
  CHECK_THROWS_AS(parse_clause("x0"), ParseError);
  CHECK_THROWS_AS(parse_clause("y1"), ParseError);
  CHECK_THROWS_AS(parse_clause("x2 AND x2"), ParseError);
  CHECK_THROWS_AS(parse_rule("x1\nx2"), ParseError);
  CHECK_THROWS_AS(parse_rule("x1\nOR"), ParseError);
  CHECK_THROWS_AS(parse_rule("x1\nOR\nx1"), ParseError);
}

}  // namespace
}  // namespace ireland
