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

#include <numeric>
#include <random>

#include "cropkit/axioms.hpp"
#include "cropkit/perm.hpp"

using namespace cropkit;

namespace {

Permutation p(std::initializer_list<std::uint32_t> v) { return Permutation(std::vector<std::uint32_t>(v)); }

}  // namespace

TEST_CASE("compose and inverse") {
  CHECK(compose(p({1, 0}), p({1, 0})) == p({0, 1}));
  CHECK(inverse(p({0, 1, 3, 2, 6, 7, 5, 4})) == p({0, 1, 3, 2, 7, 6, 4, 5}));
  Permutation q = p({2, 0, 1, 3});
  CHECK(compose(Permutation::identity(4), q) == q);
  CHECK(compose(q, inverse(q)) == Permutation::identity(4));
  CHECK_THROWS_AS(compose(q, Permutation::identity(3)), CropError);
}

TEST_CASE("direct sum block action") {
  CHECK(directSum(Permutation::identity(2), p({1, 0})) == p({0, 1, 3, 2}));
  CHECK(directSum(p({1, 0}), Permutation::identity(2)) == p({1, 0, 2, 3}));
  CHECK(directSum(p({1, 0}), p({1, 0})) == p({1, 0, 3, 2}));
}

TEST_CASE("gamma") {
  CHECK(gamma(1, 1) == p({1, 0}));
  CHECK(gamma(2, 1) == p({1, 2, 0}));
  CHECK(gamma(0, 5) == Permutation::identity(5));
}

TEST_CASE("tensor and its symmetry") {
  CHECK(tensor(p({1, 0}), p({1, 0})) == p({3, 2, 1, 0}));
  CHECK(tensorSym(2, 2) == p({0, 2, 1, 3}));
  Permutation g = p({2, 0, 1});
  CHECK(tensor(Permutation::identity(2), g) == directSum(g, g));
  for (std::uint64_t m = 1; m <= 5; ++m)
    for (std::uint64_t n = 1; n <= 5; ++n)
      CHECK(compose(tensorSym(m, n), tensorSym(n, m)) == Permutation::identity(m * n));
}

TEST_CASE("adjacent factorization is a valid word") {
  CHECK(adjacentFactorization(Permutation::identity(4)).empty());
  CHECK(adjacentFactorization(p({1, 0})) == std::vector<std::uint32_t>{0});
  CHECK(adjacentFactorization(p({0, 2, 1, 3})) == std::vector<std::uint32_t>{1});

  // exhaustive multiply-back up to n = 6
  for (std::uint64_t n = 1; n <= 6; ++n) {
    std::vector<std::uint32_t> base(n);
    std::iota(base.begin(), base.end(), 0u);
    do {
      Permutation q{std::vector<std::uint32_t>(base)};
      std::vector<std::uint32_t> word = adjacentFactorization(q);
      CHECK(word.size() <= n * n);
      Permutation acc = Permutation::identity(n);
      // word i1..ik encodes q = tau_{i1} o ... o tau_{ik}
      for (auto it = word.begin(); it != word.end(); ++it)
        acc = compose(acc, adjacentTransposition(n, *it));
      CHECK(acc == q);
    } while (std::next_permutation(base.begin(), base.end()));
  }
}

TEST_CASE("left distributor") {
  CHECK(leftDistributor(1, 3, 4) == Permutation::identity(7));
  CHECK(leftDistributor(2, 1, 1) == p({0, 2, 1, 3}));
  CHECK(leftDistributor(3, 0, 2) == Permutation::identity(6));
}

TEST_CASE("kronecker-from-sums and bipermutative axioms") {
  SweepReport r = bipermutativeSweep(8, 200, 42);
  for (const auto& f : r.failures) MESSAGE(f);
  CHECK(r.ok());
  CHECK(r.cases == 200 * 5);
}
