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

#pragma once

#include <cstdint>
#include <vector>

#include "cropkit/error.hpp"

namespace cropkit {

// Finite permutation on {0,..,size-1}, the bipermutative algebra of Perm:
// composition, the two monoidal products (direct sum / tensor) and their
// symmetries, and adjacent-transposition factorization.
class Permutation {
 public:
  static constexpr std::uint64_t kMaxSize = std::uint64_t(1) << 24;

  explicit Permutation(std::vector<std::uint32_t> images);
  static Permutation identity(std::uint64_t n);

  std::uint64_t size() const { return img_.size(); }
  std::uint32_t operator()(std::uint64_t i) const { return img_[i]; }
  const std::vector<std::uint32_t>& images() const { return img_; }
  bool isIdentity() const;

  bool operator==(const Permutation& o) const { return img_ == o.img_; }
  bool operator!=(const Permutation& o) const { return img_ != o.img_; }

 private:
  std::vector<std::uint32_t> img_;
};

// (g o f)(i) = g(f(i)); sizes must agree.
Permutation compose(const Permutation& g, const Permutation& f);
Permutation inverse(const Permutation& f);

// Block action: i -> f(i) for i < |f|, else g(i-|f|)+|f|.
Permutation directSum(const Permutation& f, const Permutation& g);

// Symmetry for the direct sum: i -> n+i if i < m, else i-m.
Permutation gamma(std::uint64_t m, std::uint64_t n);

// Tensor: a|g|+b -> f(a)|g| + g(b).
Permutation tensor(const Permutation& f, const Permutation& g);

// Symmetry for the tensor: an+b -> bm+a, a in [m], b in [n].
Permutation tensorSym(std::uint64_t m, std::uint64_t n);

// tau_i = id_i (+) gamma_{1,1} (+) id on [n].
Permutation adjacentTransposition(std::uint64_t n, std::uint64_t i);

// Indices i1..ik with p = tau_{i1} o ... o tau_{ik}; canonical bubble-sort
// word, k <= size^2. Not minimal by design.
std::vector<std::uint32_t> adjacentFactorization(const Permutation& p);

// Natural left distributor m (x) (n (+) k) -> (m (x) n) (+) (m (x) k),
// the composite (s_{n,m} (+) s_{k,m}) o s_{m,n+k}.
Permutation leftDistributor(std::uint64_t m, std::uint64_t n, std::uint64_t k);

}  // namespace cropkit
