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

#include "ireland/lp_format.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "ireland/milp.hpp"
#include "lp_fixtures.h"

namespace ireland {
namespace {

namespace fs = std::filesystem;

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("ireland_lp_format_test_" + name);
}

Relation to_relation(int code) {
  switch (code) {
    case 0: return Relation::kLessEq;
    case 1: return Relation::kGreaterEq;
    default: return Relation::kEqual;
  }
}

MilpModel model_from_fixture(const ireland_tests::MilpFixture& fix) {
  MilpModel model;
  const std::size_t n = fix.c.size();
  for (std::size_t v = 0; v < n; ++v) {
    const std::string name = "v" + std::to_string(v);
    if (fix.binary[v]) {
      model.add_binary(name);
    } else {
      model.add_continuous(name, fix.lower[v], fix.upper[v]);
    }
  }
  for (std::size_t r = 0; r < fix.row_coeffs.size(); ++r) {
    std::vector<int> vars;
    std::vector<double> coeffs;
    for (std::size_t v = 0; v < n; ++v) {
      if (fix.row_coeffs[r][v] != 0.0) {
        vars.push_back(static_cast<int>(v));
        coeffs.push_back(fix.row_coeffs[r][v]);
      }
    }
    if (vars.empty()) {
      vars.push_back(0);
      coeffs.push_back(0.0);
    }
    model.add_constraint("r" + std::to_string(r), std::move(vars),
                         std::move(coeffs), to_relation(fix.row_rel[r]),
                         fix.row_rhs[r]);
  }
  std::vector<int> obj_vars;
  std::vector<double> obj_coeffs;
  for (std::size_t v = 0; v < n; ++v) {
    if (fix.c[v] != 0.0) {
      obj_vars.push_back(static_cast<int>(v));
      obj_coeffs.push_back(fix.c[v]);
    }
  }
  model.set_objective(fix.maximize ? ObjSense::kMaximize : ObjSense::kMinimize,
                      std::move(obj_vars), std::move(obj_coeffs), fix.c0);
  return model;
}

bool models_equivalent(const MilpModel& a, const MilpModel& b) {
  if (a.num_variables() != b.num_variables()) return false;
  if (a.num_constraints() != b.num_constraints()) return false;
  for (std::size_t v = 0; v < a.num_variables(); ++v) {
    const Variable& va = a.variable(v);
    const int bi = b.variable_index(va.name);
    if (bi < 0) return false;
    const Variable& vb = b.variable(static_cast<std::size_t>(bi));
    if (va.kind != vb.kind) return false;
    if (va.lower != vb.lower || va.upper != vb.upper) return false;
  }
  // Compare rows by activity on random points so coefficient order and
  // variable numbering cannot matter.
  std::mt19937 rng(123u);
  std::vector<double> pa(a.num_variables());
  std::vector<double> pb(a.num_variables());
  for (int trial = 0; trial < 8; ++trial) {
    for (std::size_t v = 0; v < a.num_variables(); ++v) {
      const double value = static_cast<double>(rng() % 100) / 10.0 - 3.0;
      pa[v] = value;
      const int bi = b.variable_index(a.variable(v).name);
      pb[static_cast<std::size_t>(bi)] = value;
    }
    for (std::size_t r = 0; r < a.num_constraints(); ++r) {
      const Constraint& ra = a.constraint(r);
      const int br = b.constraint_index(ra.name);
      if (br < 0) return false;
      const Constraint& rb = b.constraint(static_cast<std::size_t>(br));
      if (ra.rel != rb.rel || ra.rhs != rb.rhs) return false;
      const double act_a = a.row_activity(r, pa);
      const double act_b = b.row_activity(static_cast<std::size_t>(br), pb);
      if (std::abs(act_a - act_b) > 1e-9) return false;
    }
    if (a.objective().sense != b.objective().sense) return false;
    if (std::abs(a.objective_value(pa) - b.objective_value(pb)) > 1e-9) {
      return false;
    }
  }
  return true;
}

TEST_CASE("format_number round-trips doubles exactly") {
  const std::vector<double> values = {0.0,    1.0,      -1.0,  0.5,
                                      0.1,    1.0 / 3.0, 1e17, -2.5e-8,
                                      123456.789, 0.6,   0.4};
  for (double v : values) {
    const std::string text = format_number(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
  }
  std::mt19937_64 rng(55u);
  for (int trial = 0; trial < 200; ++trial) {
    const double v = static_cast<double>(rng()) / 1e13 - 900000.0;
    CHECK(std::strtod(format_number(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("write/parse round-trip preserves every fixture model") {
  const auto all = [] {
    auto lps = ireland_tests::lp_fixtures();
    const auto milps = ireland_tests::milp_fixtures();
    lps.insert(lps.end(), milps.begin(), milps.end());
    return lps;
  }();
  for (const auto& fix : all) {
    const MilpModel model = model_from_fixture(fix);
    std::ostringstream out;
    write_lp(model, out);
    std::istringstream in(out.str());
    const MilpModel back = parse_lp(in);
    INFO("fixture ", fix.name);
    CHECK(models_equivalent(model, back));

    // Once the variable order follows first appearance in the text, another
    // write -> parse cycle is a fixed point.
    std::ostringstream out2;
    write_lp(back, out2);
    std::istringstream in2(out2.str());
    const MilpModel back2 = parse_lp(in2);
    std::ostringstream out3;
    write_lp(back2, out3);
    CHECK(out3.str() == out2.str());
  }
}

TEST_CASE("solving an exported model matches solving the original") {
  for (const auto& fix : ireland_tests::milp_fixtures()) {
    if (fix.status != 0) continue;
    const MilpModel model = model_from_fixture(fix);
    std::ostringstream out;
    write_lp(model, out);
    std::istringstream in(out.str());
    const MilpModel back = parse_lp(in);
    const SolveResult result = solve_branch_and_bound(back);
    INFO("fixture ", fix.name);
    REQUIRE(result.status == SolveStatus::kOptimal);
    CHECK(result.objective ==
          doctest::Approx(fix.objective).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("hand-written text parses into the expected model") {
  const std::string text =
      "\\ sample problem\n"
      "Minimize\n"
      " obj: 2 x + 3 y - 1.5\n"
      "Subject To\n"
      " c1: x + y >= 2\n"
      " c2: x - y <= 1\n"
      "Bounds\n"
      " 0 <= x <= 4\n"
      " y free\n"
      "End\n";
  std::istringstream in(text);
  const MilpModel model = parse_lp(in);
  REQUIRE(model.num_variables() == 2);
  CHECK(model.variable_index("x") == 0);
  CHECK(model.variable_index("y") == 1);
  CHECK(model.variable(1).lower == -kInfinity);
  CHECK(model.objective().constant == -1.5);
  REQUIRE(model.num_constraints() == 2);
  CHECK(model.constraint(0).rel == Relation::kGreaterEq);

  // Hand solution: y unbounded below but c1/c2 pin the optimum at the
  // intersection x + y = 2, x - y = 1 -> (1.5, 0.5); objective 3 + 1.5 - 1.5.
  const SolveResult result = solve_lp_relaxation(model);
  REQUIRE(result.status == SolveStatus::kOptimal);
  CHECK(result.objective == doctest::Approx(3.0));
  CHECK(result.assignment[0] == doctest::Approx(1.5));
  CHECK(result.assignment[1] == doctest::Approx(0.5));
}

TEST_CASE("keywords are case-insensitive") {
  const std::string text =
      "MINIMIZE\n"
      " obj: x\n"
      "subject to\n"
      " c1: x >= 1\n"
      "bounds\n"
      " 0 <= x <= 9\n"
      "end\n";
  std::istringstream in(text);
  const MilpModel model = parse_lp(in);
  const SolveResult result = solve_lp_relaxation(model);
  REQUIRE(result.status == SolveStatus::kOptimal);
  CHECK(result.objective == doctest::Approx(1.0));
}

TEST_CASE("empty objective and untouched variables still round-trip") {
  MilpModel model;
  model.add_continuous("a", 0.0, 3.0);
  model.add_continuous("loose", -2.0, 5.0);  // appears in no row
  model.add_binary("flag");                  // appears in no row
  model.add_constraint("only", {0}, {1.0}, Relation::kEqual, 2.0);
  model.set_objective(ObjSense::kMinimize, {}, {});

  std::ostringstream out;
  write_lp(model, out);
  std::istringstream in(out.str());
  const MilpModel back = parse_lp(in);
  CHECK(models_equivalent(model, back));
  const SolveResult result = solve_branch_and_bound(back);
  REQUIRE(result.status == SolveStatus::kOptimal);
  CHECK(result.objective == doctest::Approx(0.0));
}

TEST_CASE("file export and import") {
  const fs::path path = temp_file("model.lp");
  const MilpModel model = model_from_fixture(ireland_tests::milp_fixtures()[0]);
  export_lp(model, path.string());
  const MilpModel back = parse_lp_file(path.string());
  CHECK(models_equivalent(model, back));
  fs::remove(path);
  CHECK_THROWS_AS(parse_lp_file(path.string()), ParseError);
}

TEST_CASE("general integer sections are rejected") {
  const std::string text =
      "Minimize\n"
      " obj: x\n"
      "Subject To\n"
      " c1: x >= 1\n"
      "General\n"
      " x\n"
      "End\n";
  std::istringstream in(text);
  CHECK_THROWS_AS(parse_lp(in), ParseError);
}

TEST_CASE("malformed text is rejected") {
  const std::vector<std::string> bad = {
      "",
      "Frobnicate\n obj: x\nEnd\n",
      "Minimize\n obj: 2 +\nSubject To\n c1: x >= 1\nEnd\n",
      "Minimize\n obj: x\nSubject To\n c1: x >< 1\nEnd\n",
      "Minimize\n obj: x\nSubject To\n c1: x 1\nEnd\n",
  };
  for (const std::string& text : bad) {
    std::istringstream in(text);
    CHECK_THROWS_AS(parse_lp(in), ParseError);
  }
}

TEST_CASE("solution files are validated against the model") {
  MilpModel model;
  model.add_binary("pick");
  model.add_continuous("amount", 0.0, 2.0);
  model.add_constraint("cap", {0, 1}, {1.0, 1.0}, Relation::kLessEq, 2.5);
  model.set_objective(ObjSense::kMaximize, {0, 1}, {3.0, 1.0});

  SUBCASE("valid assignment is accepted and re-scored") {
    const fs::path path = temp_file("good.sol");
    {
      std::ofstream out(path);
      out << "# external result\npick 1\namount 1.5\n";
    }
    const SolveResult result = read_solution_file(model, path.string());
    CHECK(result.status == SolveStatus::kOptimal);
    CHECK(result.objective == doctest::Approx(4.5));
    CHECK(result.assignment == std::vector<double>{1.0, 1.5});
    fs::remove(path);
  }

  SUBCASE("missing variables default to zero") {
    const fs::path path = temp_file("partial.sol");
    {
      std::ofstream out(path);
      out << "amount 2\n";
    }
    const SolveResult result = read_solution_file(model, path.string());
    CHECK(result.objective == doctest::Approx(2.0));
    fs::remove(path);
  }

  SUBCASE("unknown names are rejected") {
    const fs::path path = temp_file("unknown.sol");
    {
      std::ofstream out(path);
      out << "ghost 1\n";
    }
    CHECK_THROWS_AS(read_solution_file(model, path.string()), ParseError);
    fs::remove(path);
  }

  SUBCASE("constraint violations are rejected") {
    const fs::path path = temp_file("violates.sol");
    {
      std::ofstream out(path);
      out << "pick 1\namount 2\n";  // activity 3 > 2.5
    }
    CHECK_THROWS_AS(read_solution_file(model, path.string()),
                    std::invalid_argument);
    fs::remove(path);
  }

  SUBCASE("fractional binaries are rejected") {
    const fs::path path = temp_file("fractional.sol");
    {
      std::ofstream out(path);
      out << "pick 0.5\n";
    }
    CHECK_THROWS_AS(read_solution_file(model, path.string()),
                    std::invalid_argument);
    fs::remove(path);
  }
}

TEST_CASE("export, solve externally, and read back") {
  // Emulates the external-solver workflow: write the LP, have "the external
  // solver" (a by-hand optimum) produce a solution file, read and validate.
  MilpModel model;
  model.add_binary("a");
  model.add_binary("b");
  model.add_constraint("cap", {0, 1}, {5.0, 4.0}, Relation::kLessEq, 6.0);
  model.set_objective(ObjSense::kMaximize, {0, 1}, {10.0, 6.0});

  const fs::path lp_path = temp_file("workflow.lp");
  export_lp(model, lp_path.string());
  const MilpModel reread = parse_lp_file(lp_path.string());
  CHECK(models_equivalent(model, reread));

  const fs::path sol_path = temp_file("workflow.sol");
  {
    std::ofstream out(sol_path);
    out << "a 1\nb 0\n";
  }
  const SolveResult external = read_solution_file(model, sol_path.string());
  const SolveResult internal = solve_branch_and_bound(model);
  REQUIRE(internal.status == SolveStatus::kOptimal);
  CHECK(external.objective == doctest::Approx(internal.objective));
  fs::remove(lp_path);
  fs::remove(sol_path);
}

}  // namespace
}  // namespace ireland
