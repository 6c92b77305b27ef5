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

#ifndef IRELAND_BITVEC_HPP_
#define IRELAND_BITVEC_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ireland {

// Fixed-length bit vector backed by 64-bit words. Provides the bulk AND/OR
// and popcount operations that clause coverage computations rely on.
class BitVec {
 public:
  BitVec() = default;

  explicit BitVec(std::size_t size, bool value = false)
      : size_(size),
        words_((size + 63) / 64, value ? ~std::uint64_t{0} : std::uint64_t{0}) {
    clear_padding();
  }

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const {
    return (words_[i / 64] >> (i % 64)) & 1u;
  }

  void set(std::size_t i, bool value = true) {
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (value) {
      words_[i / 64] |= mask;
    } else {
      words_[i / 64] &= ~mask;
    }
  }

  // In-place intersection. Sizes must match.
  BitVec& operator&=(const BitVec& other) {
    check_same_size(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
    return *this;
  }

  // In-place union. Sizes must match.
  BitVec& operator|=(const BitVec& other) {
    check_same_size(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    return *this;
  }

  std::size_t count() const {
    std::size_t total = 0;
    for (std::uint64_t w : words_) total += std::popcount(w);
    return total;
  }

  // Number of set bits among the positions listed in `indices`.
  template <typename Container>
  std::size_t count_at(const Container& indices) const {
    std::size_t total = 0;
    for (auto i : indices) total += test(static_cast<std::size_t>(i)) ? 1 : 0;
    return total;
  }

  bool operator==(const BitVec& other) const = default;

 private:
  void check_same_size(const BitVec& other) const {
    if (size_ != other.size_) throw std::invalid_argument("BitVec size mismatch");
  }

  // Bits past size_ must stay zero so count() is exact.
  void clear_padding() {
    if (size_ % 64 != 0 && !words_.empty()) {
      words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

inline BitVec operator&(BitVec lhs, const BitVec& rhs) {
  lhs &= rhs;
  return lhs;
}

inline BitVec operator|(BitVec lhs, const BitVec& rhs) {
  lhs |= rhs;
  return lhs;
}

}  // namespace ireland

#endif  // IRELAND_BITVEC_HPP_
