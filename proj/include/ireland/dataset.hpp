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

#ifndef IRELAND_DATASET_HPP_
#define IRELAND_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ireland/bitvec.hpp"

namespace ireland {

// Error for malformed input files. Messages name the offending row/column.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Immutable N x J binary feature matrix with binary labels.
//
// Samples with label 1 are "cases", samples with label 0 are "controls".
// Per-feature column bit vectors (bit n = X[n][j]) are precomputed so that
// clause coverage reduces to word-parallel ANDs.
class BinaryDataset {
 public:
  // `rows` is row-major N x J. Every entry and every label must be 0 or 1;
  // N >= 1 and J >= 1. Throws std::invalid_argument otherwise.
  BinaryDataset(std::size_t num_features, std::vector<std::uint8_t> rows,
                std::vector<std::uint8_t> labels);

  std::size_t num_samples() const { return y_.size(); }
  std::size_t num_features() const { return num_features_; }

  bool x(std::size_t n, std::size_t j) const { return x_[n * num_features_ + j] != 0; }
  bool label(std::size_t n) const { return y_[n] != 0; }

  std::span<const std::uint8_t> row(std::size_t n) const {
    return {x_.data() + n * num_features_, num_features_};
  }
  std::span<const std::uint8_t> labels() const { return {y_.data(), y_.size()}; }

  std::size_t num_cases() const { return cases_.size(); }
  std::size_t num_controls() const { return controls_.size(); }

  // Sample indices with label 1 / 0, each in increasing order.
  const std::vector<std::size_t>& cases() const { return cases_; }
  const std::vector<std::size_t>& controls() const { return controls_; }

  // Column j as an N-bit vector; bit n is X[n][j].
  const BitVec& feature_column(std::size_t j) const { return columns_[j]; }

  bool operator==(const BinaryDataset& other) const {
    return num_features_ == other.num_features_ && x_ == other.x_ && y_ == other.y_;
  }

 private:
  std::size_t num_features_;
  std::vector<std::uint8_t> x_;
  std::vector<std::uint8_t> y_;
  std::vector<std::size_t> cases_;
  std::vector<std::size_t> controls_;
  std::vector<BitVec> columns_;
};

// Per-sample weights that equalize total case mass and total control mass:
// each control weighs |cases|/N, each case weighs |controls|/N.
struct SampleWeights {
  std::vector<double> w;
};

// Throws std::invalid_argument when the dataset has a single class; the
// weighting is undefined without both classes.
SampleWeights class_weights(const BinaryDataset& ds);

// CSV layout: mandatory header row, J feature columns of 0/1 cells, and a
// final column named `label`. UTF-8, comma-separated.
BinaryDataset load_csv(const std::string& path);
void save_csv(const BinaryDataset& ds, const std::string& path);

}  // namespace ireland

#endif  // IRELAND_DATASET_HPP_
