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
// An ordered set of distinct AND clauses with cached coverage columns.
// The master problems select rules from this pool, and the clause
// generator grows it one clause at a time.

#ifndef IRELAND_CLAUSE_POOL_HPP_
#define IRELAND_CLAUSE_POOL_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ireland/bitvec.hpp"
#include "ireland/dataset.hpp"
#include "ireland/rules.hpp"

namespace ireland {

class ClausePool {
 public:
  ClausePool() = default;

  // Appends the clause and caches which samples of ds it covers.
  // Returns false (and leaves the pool unchanged) when an identical
  // clause is already present.
  bool append(const AndClause& clause, const BinaryDataset& ds);

  bool contains(const AndClause& clause) const;

  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }

  const AndClause& clause(std::size_t k) const { return clauses_.at(k); }

  // Coverage of clause k over the samples of the dataset it was appended
  // against; bit n set iff the clause fires on sample n.
  const BitVec& coverage(std::size_t k) const { return coverage_.at(k); }

  std::span<const AndClause> clauses() const { return clauses_; }

 private:
  std::vector<AndClause> clauses_;
  std::vector<BitVec> coverage_;
};

// One clause per line in `x1 AND x3` syntax; `#` comments and blank
// lines are ignored on load.  Loading validates feature ranges against
// the dataset and rejects duplicate clauses.
void save_pool(const ClausePool& pool, const std::string& path);
ClausePool load_pool(const std::string& path, const BinaryDataset& ds);

}  // namespace ireland

#endif  // IRELAND_CLAUSE_POOL_HPP_
