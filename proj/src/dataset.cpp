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

#include "ireland/dataset.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace ireland {
namespace {

std::string trim(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

}  // namespace

BinaryDataset::BinaryDataset(std::size_t num_features,
                             std::vector<std::uint8_t> rows,
                             std::vector<std::uint8_t> labels)
    : num_features_(num_features), x_(std::move(rows)), y_(std::move(labels)) {
  if (num_features_ == 0) throw std::invalid_argument("dataset needs at least one feature");
  if (y_.empty()) throw std::invalid_argument("dataset needs at least one sample");
  if (x_.size() != y_.size() * num_features_) {
    throw std::invalid_argument("feature matrix size does not match N x J");
  }
  for (std::uint8_t v : x_) {
    if (v > 1) throw std::invalid_argument("feature entries must be 0 or 1");
  }
  for (std::uint8_t v : y_) {
    if (v > 1) throw std::invalid_argument("labels must be 0 or 1");
  }
  const std::size_t n = y_.size();
  for (std::size_t i = 0; i < n; ++i) {
    (y_[i] ? cases_ : controls_).push_back(i);
  }
  columns_.assign(num_features_, BitVec(n));
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t* row = x_.data() + i * num_features_;
    for (std::size_t j = 0; j < num_features_; ++j) {
      if (row[j]) columns_[j].set(i);
    }
  }
}

SampleWeights class_weights(const BinaryDataset& ds) {
  if (ds.num_cases() == 0 || ds.num_controls() == 0) {
    throw std::invalid_argument("class weights need both cases and controls");
  }
  const double n = static_cast<double>(ds.num_samples());
  const double case_weight = static_cast<double>(ds.num_controls()) / n;
  const double control_weight = static_cast<double>(ds.num_cases()) / n;
  SampleWeights out;
  out.w.resize(ds.num_samples());
  for (std::size_t i = 0; i < ds.num_samples(); ++i) {
    out.w[i] = ds.label(i) ? case_weight : control_weight;
  }
  return out;
}

BinaryDataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty file");
  const std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 2 || header.back() != "label") {
    throw ParseError(path + ": header must end with a `label` column");
  }
  const std::size_t num_features = header.size() - 1;

  std::vector<std::uint8_t> rows;
  std::vector<std::uint8_t> labels;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw ParseError(path + ": line " + std::to_string(line_no) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(header.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c] != "0" && cells[c] != "1") {
        throw ParseError(path + ": line " + std::to_string(line_no) + ", column " +
                         std::to_string(c + 1) + ": expected 0 or 1, got `" +
                         cells[c] + "`");
      }
      const std::uint8_t bit = cells[c] == "1" ? 1 : 0;
      if (c + 1 == cells.size()) {
        labels.push_back(bit);
      } else {
        rows.push_back(bit);
      }
    }
  }
  if (labels.empty()) throw ParseError(path + ": no data rows");
  return BinaryDataset(num_features, std::move(rows), std::move(labels));
}

void save_csv(const BinaryDataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset file: " + path);
  for (std::size_t j = 0; j < ds.num_features(); ++j) out << "x" << (j + 1) << ",";
  out << "label\n";
  for (std::size_t n = 0; n < ds.num_samples(); ++n) {
    for (std::size_t j = 0; j < ds.num_features(); ++j) {
      out << (ds.x(n, j) ? '1' : '0') << ',';
    }
    out << (ds.label(n) ? '1' : '0') << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace ireland
