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

#include "ireland/clause_pool.hpp"

#include <fstream>
#include <stdexcept>

namespace ireland {

bool ClausePool::append(const AndClause& clause, const BinaryDataset& ds) {
  if (contains(clause)) return false;
  coverage_.push_back(clause_coverage(clause, ds));
  clauses_.push_back(clause);
  return true;
}

bool ClausePool::contains(const AndClause& clause) const {
  for (const AndClause& c : clauses_) {
    if (c.features == clause.features) return true;
  }
  return false;
}

void save_pool(const ClausePool& pool, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write pool file: " + path);
  for (std::size_t k = 0; k < pool.size(); ++k) {
    out << format_clause(pool.clause(k)) << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

ClausePool load_pool(const std::string& path, const BinaryDataset& ds) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open pool file: " + path);
  ClausePool pool;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const std::size_t end = line.find_last_not_of(" \t\r");
    AndClause clause = parse_clause(line.substr(begin, end - begin + 1));
    for (int j : clause.features) {
      if (static_cast<std::size_t>(j) >= ds.num_features()) {
        throw ParseError(path + ": line " + std::to_string(line_no) +
                         ": feature x" + std::to_string(j + 1) +
                         " exceeds dataset width " +
                         std::to_string(ds.num_features()));
      }
    }
    if (!pool.append(clause, ds)) {
      throw ParseError(path + ": line " + std::to_string(line_no) +
                       ": duplicate clause");
    }
  }
  return pool;
}

}  // namespace ireland
