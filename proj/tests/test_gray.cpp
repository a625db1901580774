// Copyright 2026 the cropkit authors
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

#include <doctest.h>

#include "cropkit/gray.hpp"

using namespace cropkit;

TEST_CASE("gray code words") {
  CHECK(grayCode(0, 0) == "");
  CHECK(grayCode(3, 4) == "110");
  CHECK(grayCode(4, 13) == "1011");
  CHECK_THROWS_AS(grayCode(3, 8), CropError);
  CHECK_THROWS_AS(grayCode(25, 0), CropError);
}

TEST_CASE("gray rank translates lexicographic to gray order") {
  CHECK(grayRank(0) == Permutation::identity(1));
  CHECK(grayRank(2) == Permutation(std::vector<std::uint32_t>{0, 1, 3, 2}));
  CHECK(grayRank(3) == Permutation(std::vector<std::uint32_t>{0, 1, 3, 2, 6, 7, 5, 4}));
  for (int n = 0; n <= 12; ++n) {
    Permutation r = grayRank(n);
    for (std::uint64_t i = 0; i < r.size(); ++i) {
      std::uint64_t value = std::stoull("0" + grayCode(n, i), nullptr, 2);
      CHECK(r(i) == value);
    }
  }
}

TEST_CASE("hamming distance between neighbours is one") {
  for (int n = 1; n <= 12; ++n) {
    for (std::uint64_t i = 0; i + 1 < (std::uint64_t(1) << n); ++i) {
      std::string a = grayCode(n, i), b = grayCode(n, i + 1);
      int dist = 0;
      for (int k = 0; k < n; ++k) dist += a[k] != b[k];
      REQUIRE(dist == 1);
    }
  }
}

TEST_CASE("gray transpositions") {
  CHECK(grayTransposition(1, 0) == gamma(1, 1));
  CHECK(grayTransposition(2, 1) == Permutation(std::vector<std::uint32_t>{0, 3, 2, 1}));
  CHECK(grayTransposition(2, 2) == Permutation(std::vector<std::uint32_t>{0, 1, 3, 2}));
  CHECK_THROWS_AS(grayTransposition(2, 3), CropError);
}

TEST_CASE("conjugation identity for gray transpositions") {
  // theta_{n,i} relabels the adjacent transposition through r_n: with
  // composition read as function application this is r o tau_i o r^-1
  for (int n = 1; n <= 8; ++n) {
    Permutation r = grayRank(n);
    Permutation rInv = inverse(r);
    std::uint64_t size = std::uint64_t(1) << n;
    for (std::uint64_t i = 0; i + 2 <= size; ++i) {
      Permutation mid = adjacentTransposition(size, i);
      CHECK(grayTransposition(n, i) == compose(r, compose(mid, rInv)));
    }
  }
}

TEST_CASE("inductive formula for gray transpositions") {
  // the formula expresses theta_{n,i} in terms of theta_{n-1}, so n >= 2
  for (int n = 2; n <= 8; ++n) {
    std::uint64_t half = std::uint64_t(1) << (n - 1);
    std::uint64_t size = std::uint64_t(1) << n;
    for (std::uint64_t i = 0; i + 2 <= size; ++i) {
      Permutation expected = grayTransposition(n, i);
      Permutation got = Permutation::identity(size);
      if (i < half - 1) {
        got = directSum(grayTransposition(n - 1, i), Permutation::identity(half));
      } else if (i == half - 1) {
        Permutation mid = directSum(
            Permutation::identity(half),
            directSum(gamma(1, 1), Permutation::identity(half - 2)));
        got = compose(tensorSym(half, 2), compose(mid, tensorSym(2, half)));
      } else {
        got = directSum(Permutation::identity(half), grayTransposition(n - 1, size - 2 - i));
      }
      CHECK(got == expected);
    }
  }
}

TEST_CASE("yang-baxter for gray transpositions") {
  for (int n = 1; n <= 8; ++n) {
    std::uint64_t size = std::uint64_t(1) << n;
    for (std::uint64_t i = 0; i + 3 <= size; ++i) {
      Permutation a = grayTransposition(n, i);
      Permutation b = grayTransposition(n, i + 1);
      Permutation ab = compose(a, b);
      CHECK(compose(ab, compose(ab, ab)) == Permutation::identity(size));
    }
  }
}

TEST_CASE("gray context") {
  GrayContext c = grayContext(4, 13);
  CHECK(c.prefix == "10");
  CHECK(c.flipIndex == 2);
  CHECK(c.suffix == "1");

  c = grayContext(1, 0);
  CHECK(c.prefix == "");
  CHECK(c.flipIndex == 0);
  CHECK(c.suffix == "");

  c = grayContext(2, 2);
  CHECK(c.prefix == "1");
  CHECK(c.flipIndex == 1);
  CHECK(c.suffix == "");

  for (int n = 1; n <= 8; ++n) {
    for (std::uint64_t i = 0; i + 2 <= (std::uint64_t(1) << n); ++i) {
      GrayContext ctx = grayContext(n, i);
      CHECK(static_cast<int>(ctx.prefix.size()) + 1 + static_cast<int>(ctx.suffix.size()) == n);
      std::string a = grayCode(n, i), b = grayCode(n, i + 1);
      CHECK(a.substr(0, ctx.flipIndex) == ctx.prefix);
      CHECK(b.substr(0, ctx.flipIndex) == ctx.prefix);
      CHECK(a.substr(ctx.flipIndex + 1) == ctx.suffix);
      CHECK(b.substr(ctx.flipIndex + 1) == ctx.suffix);
      CHECK(a[ctx.flipIndex] != b[ctx.flipIndex]);
    }
  }
}
