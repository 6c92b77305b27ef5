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

#include "ireland/bitvec.hpp"

#include <cstddef>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"

namespace ireland {
namespace {

TEST_CASE("empty and zero-filled vectors") {
  BitVec empty;
  CHECK(empty.size() == 0);
  CHECK(empty.count() == 0);

  BitVec zeros(130);
  CHECK(zeros.size() == 130);
  CHECK(zeros.count() == 0);
  for (std::size_t i = 0; i < 130; ++i) CHECK_FALSE(zeros.test(i));
}

TEST_CASE("all-true constructor keeps padding bits clear") {
  // 70 bits span two words; the 58 padding bits in the second word must not
  // leak into count().
  BitVec ones(70, true);
  CHECK(ones.size() == 70);
  CHECK(ones.count() == 70);
  for (std::size_t i = 0; i < 70; ++i) CHECK(ones.test(i));

  BitVec word_exact(128, true);
  CHECK(word_exact.count() == 128);
}

TEST_CASE("set and clear individual bits") {
  BitVec v(100);
  v.set(0);
  v.set(63);
  v.set(64);
  v.set(99);
  CHECK(v.count() == 4);
  CHECK(v.test(0));
  CHECK(v.test(63));
  CHECK(v.test(64));
  CHECK(v.test(99));
  CHECK_FALSE(v.test(1));
  CHECK_FALSE(v.test(65));

  v.set(63, false);
  CHECK_FALSE(v.test(63));
  CHECK(v.count() == 3);
}

TEST_CASE("AND and OR match a per-bit reference on random inputs") {
  std::mt19937 rng(7u);
  for (std::size_t size : {1u, 63u, 64u, 65u, 200u}) {
    std::vector<bool> ra(size), rb(size);
    BitVec a(size), b(size);
    for (std::size_t i = 0; i < size; ++i) {
      ra[i] = (rng() & 1u) != 0;
      rb[i] = (rng() & 1u) != 0;
      a.set(i, ra[i]);
      b.set(i, rb[i]);
    }

    const BitVec and_result = a & b;
    const BitVec or_result = a | b;
    std::size_t expect_and = 0;
    std::size_t expect_or = 0;
    for (std::size_t i = 0; i < size; ++i) {
      const bool ea = ra[i] && rb[i];
      const bool eo = ra[i] || rb[i];
      CHECK(and_result.test(i) == ea);
      CHECK(or_result.test(i) == eo);
      expect_and += ea ? 1 : 0;
      expect_or += eo ? 1 : 0;
    }
    CHECK(and_result.count() == expect_and);
    CHECK(or_result.count() == expect_or);
  }
}

TEST_CASE("in-place operators modify the left operand only") {
  BitVec a(10);
  BitVec b(10);
  a.set(2);
  a.set(5);
  b.set(5);
  b.set(7);

  BitVec a_copy = a;
  a_copy &= b;
  CHECK(a_copy.count() == 1);
  CHECK(a_copy.test(5));
  CHECK(a.count() == 2);

  a_copy = a;
  a_copy |= b;
  CHECK(a_copy.count() == 3);
  CHECK(b.count() == 2);
}

TEST_CASE("count_at sums only the requested positions") {
  BitVec v(50);
  v.set(3);
  v.set(10);
  v.set(49);
  const std::vector<std::size_t> some = {3, 4, 10};
  CHECK(v.count_at(some) == 2);
  const std::vector<int> ints = {49};
  CHECK(v.count_at(ints) == 1);
  const std::vector<std::size_t> none = {};
  CHECK(v.count_at(none) == 0);
}

TEST_CASE("size mismatch throws") {
  BitVec a(10);
  BitVec b(11);
  CHECK_THROWS_AS(a &= b, std::invalid_argument);
  CHECK_THROWS_AS(a |= b, std::invalid_argument);
}

TEST_CASE("equality compares size and content") {
  BitVec a(65);
  BitVec b(65);
  CHECK(a == b);
  a.set(64);
  CHECK_FALSE(a == b);
  b.set(64);
  CHECK(a == b);
  CHECK_FALSE(a == BitVec(64));
}

}  // namespace
}  // namespace ireland
