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

#include "ireland/generator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace ireland {
namespace {

// Count of distinct non-empty clauses with at most `max_size` features,
// saturating well above any practical pool size.
double clause_space_size(std::size_t num_features, std::size_t max_size) {
  double total = 0.0;
  double binom = 1.0;
  for (std::size_t m = 1; m <= max_size; ++m) {
    binom *= static_cast<double>(num_features - m + 1) / static_cast<double>(m);
    total += binom;
    if (total > 1e18) return 1e18;
  }
  return total;
}

DnfRule draw_hidden_rule(const GeneratorConfig& cfg, std::mt19937_64& rng) {
  std::set<std::vector<int>> seen;
  std::vector<AndClause> clauses;
  std::vector<int> all_features(cfg.num_features);
  std::iota(all_features.begin(), all_features.end(), 0);
  std::uniform_int_distribution<std::size_t> size_dist(1, cfg.max_clause_size);
  while (clauses.size() < cfg.num_clauses) {
    const std::size_t size = size_dist(rng);
    // Partial Fisher-Yates draw of `size` distinct features.
    for (std::size_t i = 0; i < size; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, all_features.size() - 1);
      std::swap(all_features[i], all_features[pick(rng)]);
    }
    std::vector<int> features(all_features.begin(),
                              all_features.begin() + static_cast<long>(size));
    std::sort(features.begin(), features.end());
    if (seen.insert(features).second) {
      clauses.emplace_back(std::move(features));
    }
  }
  return DnfRule(std::move(clauses));
}

}  // namespace

void GeneratorConfig::validate() const {
  if (num_samples == 0) throw std::invalid_argument("num_samples must be positive");
  if (num_features == 0) throw std::invalid_argument("num_features must be positive");
  if (num_clauses == 0) throw std::invalid_argument("num_clauses must be positive");
  if (max_clause_size == 0 || max_clause_size > num_features) {
    throw std::invalid_argument("max_clause_size must be in [1, num_features]");
  }
  if (!(noise_rate >= 0.0 && noise_rate < 0.5)) {
    throw std::invalid_argument("noise_rate must lie in [0, 0.5)");
  }
  if (!(density > 0.0 && density < 1.0)) {
    throw std::invalid_argument("density must lie in (0, 1)");
  }
  if (max_attempts < 1) throw std::invalid_argument("max_attempts must be >= 1");
  if (static_cast<double>(num_clauses) >
      clause_space_size(num_features, max_clause_size)) {
    throw std::invalid_argument("num_clauses exceeds the distinct clause space");
  }
}

GeneratedDataset generate_synthetic(const GeneratorConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  const std::size_t n = cfg.num_samples;
  const std::size_t j = cfg.num_features;
  const auto flips = static_cast<std::size_t>(
      std::llround(cfg.noise_rate * static_cast<double>(n)));

  for (int attempt = 1; attempt <= cfg.max_attempts; ++attempt) {
    DnfRule rule = draw_hidden_rule(cfg, rng);

    std::vector<std::uint8_t> x(n * j);
    std::bernoulli_distribution bit(cfg.density);
    for (std::uint8_t& v : x) v = bit(rng) ? 1 : 0;

    std::vector<std::uint8_t> y(n);
    for (std::size_t row = 0; row < n; ++row) {
      const std::span<const std::uint8_t> r{x.data() + row * j, j};
      std::uint8_t fired = 0;
      for (const AndClause& c : rule.clauses) {
        if (clause_satisfies(c, r)) {
          fired = 1;
          break;
        }
      }
      y[row] = fired;
    }

    std::vector<std::size_t> flipped;
    if (flips > 0) {
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      for (std::size_t i = 0; i < flips; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(order[i], order[pick(rng)]);
      }
      flipped.assign(order.begin(), order.begin() + static_cast<long>(flips));
      std::sort(flipped.begin(), flipped.end());
      for (std::size_t idx : flipped) y[idx] = y[idx] ? 0 : 1;
    }

    const auto case_count = static_cast<double>(
        std::count(y.begin(), y.end(), std::uint8_t{1}));
    const double fraction = case_count / static_cast<double>(n);
    if (fraction < 0.25 || fraction > 0.75) continue;

    GeneratedDataset out{BinaryDataset(j, std::move(x), std::move(y)),
                         std::move(rule), std::move(flipped), attempt};
    return out;
  }
  throw RetentionError("no draw met the class-balance window after " +
                       std::to_string(cfg.max_attempts) + " attempts");
}

void save_sidecar(const GeneratedDataset& gen, const GeneratorConfig& cfg,
                  const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write sidecar file: " + path);
  out << "n=" << cfg.num_samples << "\n"
      << "j=" << cfg.num_features << "\n"
      << "k_true=" << cfg.num_clauses << "\n"
      << "m_true=" << cfg.max_clause_size << "\n"
      << "noise_rate=" << cfg.noise_rate << "\n"
      << "density=" << cfg.density << "\n"
      << "seed=" << cfg.seed << "\n"
      << "flips=" << gen.flipped.size() << "\n"
      << "attempts=" << gen.attempts_used << "\n"
      << "\n"
      << format_rule(gen.hidden_rule) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

SidecarInfo load_sidecar(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open sidecar file: " + path);
  SidecarInfo info;
  std::string line;
  bool saw_blank = false;
  std::string rule_text;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!saw_blank) {
      if (line.empty()) {
        saw_blank = true;
        continue;
      }
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos) {
        throw ParseError("sidecar line is not key=value: " + line);
      }
      const std::string key = line.substr(0, eq);
      const std::string value = line.substr(eq + 1);
      try {
        if (key == "n") {
          info.config.num_samples = std::stoul(value);
        } else if (key == "j") {
          info.config.num_features = std::stoul(value);
        } else if (key == "k_true") {
          info.config.num_clauses = std::stoul(value);
        } else if (key == "m_true") {
          info.config.max_clause_size = std::stoul(value);
        } else if (key == "noise_rate") {
          info.config.noise_rate = std::stod(value);
        } else if (key == "density") {
          info.config.density = std::stod(value);
        } else if (key == "seed") {
          info.config.seed = std::stoull(value);
        } else if (key == "flips") {
          info.flips = std::stoul(value);
        } else if (key == "attempts") {
          info.attempts = std::stoi(value);
        } else {
          throw ParseError("unknown sidecar key: " + key);
        }
      } catch (const std::invalid_argument&) {
        throw ParseError("bad sidecar value for " + key + ": " + value);
      } catch (const std::out_of_range&) {
        throw ParseError("bad sidecar value for " + key + ": " + value);
      }
    } else if (!line.empty()) {
      if (!rule_text.empty()) rule_text += "\n";
      rule_text += line;
    }
  }
  if (!saw_blank || rule_text.empty()) {
    throw ParseError("sidecar file is missing the rule section: " + path);
  }
  info.hidden_rule = parse_rule(rule_text);
  return info;
}

}  // namespace ireland
