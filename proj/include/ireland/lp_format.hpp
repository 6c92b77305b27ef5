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

#ifndef IRELAND_LP_FORMAT_HPP_
#define IRELAND_LP_FORMAT_HPP_

#include <iosfwd>
#include <string>

#include "ireland/dataset.hpp"  // ParseError
#include "ireland/milp.hpp"

namespace ireland {

// Shortest decimal form that parses back to exactly `v` (at most 17
// significant digits). Shared by the LP writer and the CSV emitters.
std::string format_number(double v);

// CPLEX-LP text format, restricted to the constructs this library produces:
//
//   \ comment lines
//   Minimize | Maximize
//     obj: 2 x1 + 3 x2 - 1.5
//   Subject To
//     c1: x1 + x2 <= 3
//   Bounds
//     0 <= x1 <= 1
//     x2 free
//     -infinity <= x3 <= 4
//   Binary
//     x1 x4
//   End
//
// Keywords are case-insensitive. Variables default to bounds [0, +inf).
// `General` (general integer) sections are rejected. Every model variable
// appears somewhere in the file (variables outside objective and constraints
// get an explicit bounds line), so parsing is lossless.
void write_lp(const MilpModel& model, std::ostream& out);
void export_lp(const MilpModel& model, const std::string& path);

// Parses the format above. Variable order follows first appearance
// (objective, then rows, then bounds/binary sections); a second
// write -> parse round trip is a fixed point of the text form.
MilpModel parse_lp(std::istream& in);
MilpModel parse_lp_file(const std::string& path);

// Reads `name value` pairs (one per line, `#` comments allowed) produced by
// an external solve of an exported model. Missing variables default to 0.
// Unknown names raise ParseError; an assignment that violates the model's
// constraints or integrality (tolerance 1e-6) raises std::invalid_argument.
// The returned result carries status kOptimal and the recomputed objective;
// callers treat optimality as the external solver's claim.
SolveResult read_solution_file(const MilpModel& model, const std::string& path);

}  // namespace ireland

#endif  // IRELAND_LP_FORMAT_HPP_
