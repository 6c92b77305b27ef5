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
// Command-line frontend.  Subcommands:
//
//   generate   synthetic datasets from planted rules, single or swept
//   solve      one exact MILP formulation on one dataset
//   ireland    the iterative clause-generation heuristic
//   pareto     sensitivity/specificity trade-off curves over a pool
//   bench      method comparison across a corpus directory
//
// Every run writes a key=value manifest before its first result file.
// Flags override values from an optional `--config` key=value file; all
// defaults are shown by `--help`.

#ifndef IRELAND_CLI_HPP_
#define IRELAND_CLI_HPP_

#include <string>
#include <vector>

namespace ireland {

// Runs the tool on `args` (program name excluded), exactly as the
// installed binary would.  Returns the process exit code: 0 for completed
// runs, including solver limits recorded as data; nonzero for usage,
// validation, and I/O errors.
int run_cli(const std::vector<std::string>& args);

}  // namespace ireland

#endif  // IRELAND_CLI_HPP_
