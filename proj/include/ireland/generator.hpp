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

#ifndef IRELAND_GENERATOR_HPP_
#define IRELAND_GENERATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ireland/dataset.hpp"
#include "ireland/rules.hpp"

namespace ireland {

// Raised when max_attempts consecutive draws violate the class-balance
// retention window; callers treat the parameter combination as dropped.
class RetentionError : public std::runtime_error {
 public:
  explicit RetentionError(const std::string& what) : std::runtime_error(what) {}
};

struct GeneratorConfig {
  std::size_t num_samples = 100;   // N
  std::size_t num_features = 10;   // J
  std::size_t num_clauses = 2;     // clauses in the hidden rule
  std::size_t max_clause_size = 2; // literals per hidden clause, upper bound
  double noise_rate = 0.0;         // fraction of labels flipped, in [0, 0.5)
  double density = 0.5;            // P(X_nj = 1), in (0, 1)
  std::uint64_t seed = 0;
  int max_attempts = 25;

  // Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

struct GeneratedDataset {
  BinaryDataset data;
  DnfRule hidden_rule;
  // Sample indices whose label was flipped, in increasing order.
  std::vector<std::size_t> flipped;
  int attempts_used = 0;
};

// Draws X i.i.d. Bernoulli(density), plants a hidden rule with exactly
// num_clauses distinct clauses of 1..max_clause_size distinct features each,
// labels y = rule(X), then flips exactly round(noise_rate * N) labels chosen
// uniformly without replacement. A draw is retained only when the final case
// fraction lies in [0.25, 0.75]; after max_attempts rejected draws a
// RetentionError is thrown. Deterministic for a fixed config.
GeneratedDataset generate_synthetic(const GeneratorConfig& cfg);

// Sidecar text file: `key=value` lines (generator config and flip count),
// a blank line, then the hidden rule in its text form.
void save_sidecar(const GeneratedDataset& gen, const GeneratorConfig& cfg,
                  const std::string& path);

struct SidecarInfo {
  GeneratorConfig config;
  std::size_t flips = 0;
  int attempts = 0;
  DnfRule hidden_rule;
};

// Inverse of save_sidecar; throws ParseError on malformed files.
SidecarInfo load_sidecar(const std::string& path);

}  // namespace ireland

#endif  // IRELAND_GENERATOR_HPP_
