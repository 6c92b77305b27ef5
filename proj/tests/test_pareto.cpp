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

#include "ireland/pareto.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "doctest.h"
#include "ireland/clause_pool.hpp"
#include "ireland/dataset.hpp"
#include "ireland/generator.hpp"
#include "ireland/rules.hpp"

namespace ireland {
namespace {

// Four cases with one private feature each; control 5 shares x1/x2,
// control 7 shares x3, controls 6 and 8 match nothing.
BinaryDataset one_hot_dataset() {
  return BinaryDataset(4,
                       {1, 0, 0, 0,  //
                        0, 1, 0, 0,  //
                        0, 0, 1, 0,  //
                        0, 0, 0, 1,  //
                        1, 1, 0, 0,  //
                        0, 0, 0, 0,  //
                        0, 0, 1, 0,  //
                        0, 0, 0, 0},
                       {1, 1, 1, 1, 0, 0, 0, 0});
}

ClausePool singles_pool(const BinaryDataset& ds, std::vector<int> features) {
  ClausePool pool;
  for (int f : features) pool.append(AndClause({f}), ds);
  return pool;
}

// Exact frontier by enumerating every pool subset of size <= k.
std::vector<std::pair<double, double>> enumerate_frontier(
    const ClausePool& pool, const BinaryDataset& ds, int k) {
  std::vector<std::pair<double, double>> candidates;
  const int subsets = 1 << pool.size();
  for (int mask = 0; mask < subsets; ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) > k) continue;
    std::vector<AndClause> clauses;
    for (std::size_t c = 0; c < pool.size(); ++c) {
      if (mask & (1 << c)) clauses.push_back(pool.clause(c));
    }
    const DnfRule rule(std::move(clauses));
    const ConfusionCounts cc = confusion(rule_predict(rule, ds), ds);
    candidates.emplace_back(sensitivity(cc), specificity(cc));
  }
  std::vector<std::pair<double, double>> frontier;
  for (const auto& p : candidates) {
    bool dominated = false;
    for (const auto& q : candidates) {
      const bool no_worse = q.first >= p.first - 1e-12 &&
                            q.second >= p.second - 1e-12;
      const bool strictly_better =
          q.first > p.first + 1e-12 || q.second > p.second + 1e-12;
      if (no_worse && strictly_better) {
        dominated = true;
        break;
      }
    }
    if (!dominated) frontier.push_back(p);
  }
  std::sort(frontier.begin(), frontier.end());
  frontier.erase(std::unique(frontier.begin(), frontier.end(),
                             [](const auto& a, const auto& b) {
                               return std::abs(a.first - b.first) < 1e-12 &&
                                      std::abs(a.second - b.second) < 1e-12;
                             }),
                 frontier.end());
  return frontier;
}

void check_curve_invariants(const TradeOffCurve& curve,
                            const BinaryDataset& ds, const ClausePool& pool,
                            int k) {
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const ParetoPoint& p = curve.points[i];
    // Metrics agree with a recomputation from the stored rule.
    const ConfusionCounts cc = confusion(rule_predict(p.rule, ds), ds);
    CHECK(p.true_positives == cc.tp);
    CHECK(p.false_positives == cc.fp);
    CHECK(p.sensitivity == doctest::Approx(sensitivity(cc)).epsilon(1e-12));
    CHECK(p.specificity == doctest::Approx(specificity(cc)).epsilon(1e-12));
    CHECK(static_cast<int>(p.rule.size()) <= k);
    for (const AndClause& c : p.rule.clauses) CHECK(pool.contains(c));
    if (i > 0) {
      CHECK(p.sensitivity > curve.points[i - 1].sensitivity - 1e-12);
      CHECK(p.specificity <= curve.points[i - 1].specificity + 1e-12);
    }
  }
  // No point dominates another.
  for (const ParetoPoint& p : curve.points) {
    for (const ParetoPoint& q : curve.points) {
      if (&p == &q) continue;
      const bool no_worse = q.sensitivity >= p.sensitivity - 1e-12 &&
                            q.specificity >= p.specificity - 1e-12;
      const bool strictly_better = q.sensitivity > p.sensitivity + 1e-12 ||
                                   q.specificity > p.specificity + 1e-12;
      const bool dominated = no_worse && strictly_better;
      CHECK_FALSE(dominated);
    }
  }
}

TEST_CASE("curve configuration validation") {
  CurveConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CurveConfig bad = cfg;
  bad.epsilon_gap = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.epsilon_gap = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.max_clauses = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.per_solve_time_limit = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.time_budget = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("bounded solves optimize one metric under a floor on the other") {
  const BinaryDataset ds = one_hot_dataset();
  ClausePool pool = singles_pool(ds, {0, 1, 2, 3});

  SUBCASE("no specificity floor maximizes coverage") {
    const BoundSolve solve = max_sens_given_spec(pool, ds, Fraction{0, 1}, 2);
    REQUIRE(solve.feasible);
    CHECK(solve.point.sensitivity == doctest::Approx(0.5));
    // Among the two-case selections the cleanest reaches 3/4.
    CHECK(solve.point.specificity == doctest::Approx(0.75));
  }

  SUBCASE("a full specificity floor forbids every false positive") {
    const BoundSolve solve = max_sens_given_spec(pool, ds, Fraction{1, 1}, 2);
    REQUIRE(solve.feasible);
    CHECK(solve.point.false_positives == 0);
    CHECK(solve.point.sensitivity == doctest::Approx(0.25));
    CHECK(solve.point.specificity == doctest::Approx(1.0));
  }

  SUBCASE("no sensitivity floor maximizes specificity, then coverage") {
    const BoundSolve solve = max_spec_given_sens(pool, ds, Fraction{0, 1}, 2);
    REQUIRE(solve.feasible);
    CHECK(solve.point.specificity == doctest::Approx(1.0));
    CHECK(solve.point.sensitivity == doctest::Approx(0.25));
  }

  SUBCASE("a half sensitivity floor costs one control") {
    const BoundSolve solve = max_spec_given_sens(pool, ds, Fraction{2, 4}, 2);
    REQUIRE(solve.feasible);
    CHECK(solve.point.sensitivity == doctest::Approx(0.5));
    CHECK(solve.point.specificity == doctest::Approx(0.75));
  }

  SUBCASE("floors beyond the pool's reach are infeasible") {
    const BoundSolve solve = max_spec_given_sens(pool, ds, Fraction{3, 4}, 2);
    CHECK_FALSE(solve.feasible);
  }

  SUBCASE("reported metrics come from the rule") {
    const BoundSolve solve = max_sens_given_spec(pool, ds, Fraction{3, 4}, 2);
    REQUIRE(solve.feasible);
    const ConfusionCounts cc = confusion(rule_predict(solve.point.rule, ds), ds);
    CHECK(solve.point.true_positives == cc.tp);
    CHECK(solve.point.false_positives == cc.fp);
    CHECK(solve.point.sensitivity == doctest::Approx(sensitivity(cc)));
    CHECK(solve.point.specificity == doctest::Approx(specificity(cc)));
  }
}

TEST_CASE("a perfect pool collapses the curve to one ideal point") {
  GeneratorConfig gcfg;
  gcfg.num_samples = 30;
  gcfg.num_features = 6;
  gcfg.seed = 12;
  const GeneratedDataset gen = generate_synthetic(gcfg);
  ClausePool pool;
  for (const AndClause& c : gen.hidden_rule.clauses) pool.append(c, gen.data);

  CurveConfig cfg;
  cfg.max_clauses = static_cast<int>(gen.hidden_rule.size());
  const TradeOffCurve curve = trade_off_curve(pool, gen.data, cfg);
  CHECK(curve.complete);
  REQUIRE(curve.points.size() == 1);
  CHECK(curve.points[0].sensitivity == doctest::Approx(1.0));
  CHECK(curve.points[0].specificity == doctest::Approx(1.0));
  check_curve_invariants(curve, gen.data, pool, cfg.max_clauses);
}

TEST_CASE("a single imperfect clause yields exactly its two extremes") {
  // x2 covers one of the two cases and one of the two controls.
  const BinaryDataset ds(2,
                         {1, 0,  //
                          1, 1,  //
                          0, 1,  //
                          0, 0},
                         {1, 1, 0, 0});
  ClausePool pool = singles_pool(ds, {1});
  CurveConfig cfg;
  cfg.max_clauses = 1;
  const TradeOffCurve curve = trade_off_curve(pool, ds, cfg);
  CHECK(curve.complete);
  REQUIRE(curve.points.size() == 2);
  CHECK(curve.points[0].sensitivity == doctest::Approx(0.0));
  CHECK(curve.points[0].specificity == doctest::Approx(1.0));
  CHECK(curve.points[0].rule.size() == 0);
  CHECK(curve.points[1].sensitivity == doctest::Approx(0.5));
  CHECK(curve.points[1].specificity == doctest::Approx(0.5));
  check_curve_invariants(curve, ds, pool, 1);
}

TEST_CASE("the curve matches full enumeration on a five-clause pool") {
  GeneratorConfig gcfg;
  gcfg.num_samples = 24;
  gcfg.num_features = 8;
  gcfg.noise_rate = 0.1;
  gcfg.seed = 61;
  const GeneratedDataset gen = generate_synthetic(gcfg);
  ClausePool pool;
  for (const AndClause& c : gen.hidden_rule.clauses) pool.append(c, gen.data);
  for (int f = 0; pool.size() < 5 && f < 8; ++f) {
    pool.append(AndClause({f}), gen.data);
  }
  REQUIRE(pool.size() == 5);

  CurveConfig cfg;
  cfg.max_clauses = 3;
  // Tighter than one count step of either class, so no frontier point can
  // hide inside a gap.
  cfg.epsilon_gap = 0.02;
  const TradeOffCurve curve = trade_off_curve(pool, gen.data, cfg);
  CHECK(curve.complete);
  check_curve_invariants(curve, gen.data, pool, cfg.max_clauses);

  const std::vector<std::pair<double, double>> frontier =
      enumerate_frontier(pool, gen.data, cfg.max_clauses);
  REQUIRE(curve.points.size() == frontier.size());
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    CHECK(curve.points[i].sensitivity ==
          doctest::Approx(frontier[i].first).epsilon(1e-12));
    CHECK(curve.points[i].specificity ==
          doctest::Approx(frontier[i].second).epsilon(1e-12));
  }
}

TEST_CASE("a wide spacing threshold keeps only the extremes") {
  const BinaryDataset ds = one_hot_dataset();
  ClausePool pool = singles_pool(ds, {0, 1, 2, 3});
  CurveConfig cfg;
  cfg.max_clauses = 2;
  cfg.epsilon_gap = 1.0;
  const TradeOffCurve curve = trade_off_curve(pool, ds, cfg);
  CHECK(curve.complete);
  REQUIRE(curve.points.size() == 2);
  CHECK(curve.points.front().specificity == doctest::Approx(1.0));
  CHECK(curve.points.back().sensitivity == doctest::Approx(0.5));
  check_curve_invariants(curve, ds, pool, 2);
}

TEST_CASE("an empty pool is rejected") {
  const BinaryDataset ds = one_hot_dataset();
  const ClausePool empty;
  CurveConfig cfg;
  CHECK_THROWS_AS(trade_off_curve(empty, ds, cfg), std::invalid_argument);
}

TEST_CASE("an exhausted budget marks the curve incomplete") {
  const BinaryDataset ds = one_hot_dataset();
  ClausePool pool = singles_pool(ds, {0, 1, 2, 3});
  CurveConfig cfg;
  cfg.max_clauses = 2;
  cfg.time_budget = 1e-9;
  const TradeOffCurve curve = trade_off_curve(pool, ds, cfg);
  CHECK_FALSE(curve.complete);
  check_curve_invariants(curve, ds, pool, 2);
}

TEST_CASE("curves are deterministic") {
  const BinaryDataset ds = one_hot_dataset();
  ClausePool pool = singles_pool(ds, {0, 1, 2, 3});
  CurveConfig cfg;
  cfg.max_clauses = 2;
  const TradeOffCurve a = trade_off_curve(pool, ds, cfg);
  const TradeOffCurve b = trade_off_curve(pool, ds, cfg);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].sensitivity == b.points[i].sensitivity);
    CHECK(a.points[i].specificity == b.points[i].specificity);
    CHECK(a.points[i].rule == b.points[i].rule);
  }
}

}  // namespace
}  // namespace ireland
