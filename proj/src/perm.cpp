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

#include "cropkit/perm.hpp"

#include <algorithm>
#include <numeric>

namespace cropkit {

Permutation::Permutation(std::vector<std::uint32_t> images) : img_(std::move(images)) {
  if (img_.size() > kMaxSize) fail(Err::CapacityError, "permutation size exceeds 2^24");
  std::vector<bool> seen(img_.size(), false);
  for (std::uint32_t v : img_) {
    if (v >= img_.size() || seen[v]) fail(Err::InvalidArgument, "images is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::uint64_t n) {
  if (n > kMaxSize) fail(Err::CapacityError, "permutation size exceeds 2^24");
  std::vector<std::uint32_t> v(n);
  std::iota(v.begin(), v.end(), 0u);
  return Permutation(std::move(v));
}

bool Permutation::isIdentity() const {
  for (std::uint64_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Permutation compose(const Permutation& g, const Permutation& f) {
  if (g.size() != f.size()) fail(Err::SizeMismatch, "compose: sizes differ");
  std::vector<std::uint32_t> v(f.size());
  for (std::uint64_t i = 0; i < f.size(); ++i) v[i] = g(f(i));
  return Permutation(std::move(v));
}

Permutation inverse(const Permutation& f) {
  std::vector<std::uint32_t> v(f.size());
  for (std::uint64_t i = 0; i < f.size(); ++i) v[f(i)] = static_cast<std::uint32_t>(i);
  return Permutation(std::move(v));
}

Permutation directSum(const Permutation& f, const Permutation& g) {
  std::vector<std::uint32_t> v(f.size() + g.size());
  for (std::uint64_t i = 0; i < f.size(); ++i) v[i] = f(i);
  for (std::uint64_t i = 0; i < g.size(); ++i)
    v[f.size() + i] = static_cast<std::uint32_t>(g(i) + f.size());
  return Permutation(std::move(v));
}

Permutation gamma(std::uint64_t m, std::uint64_t n) {
  std::vector<std::uint32_t> v(m + n);
  for (std::uint64_t i = 0; i < m; ++i) v[i] = static_cast<std::uint32_t>(n + i);
  for (std::uint64_t i = m; i < m + n; ++i) v[i] = static_cast<std::uint32_t>(i - m);
  return Permutation(std::move(v));
}

Permutation tensor(const Permutation& f, const Permutation& g) {
  std::uint64_t m = f.size(), n = g.size();
  if (m * n > Permutation::kMaxSize) fail(Err::CapacityError, "tensor size exceeds 2^24");
  std::vector<std::uint32_t> v(m * n);
  for (std::uint64_t a = 0; a < m; ++a)
    for (std::uint64_t b = 0; b < n; ++b)
      v[a * n + b] = static_cast<std::uint32_t>(std::uint64_t(f(a)) * n + g(b));
  return Permutation(std::move(v));
}

Permutation tensorSym(std::uint64_t m, std::uint64_t n) {
  if (m * n > Permutation::kMaxSize) fail(Err::CapacityError, "tensor size exceeds 2^24");
  std::vector<std::uint32_t> v(m * n);
  for (std::uint64_t a = 0; a < m; ++a)
    for (std::uint64_t b = 0; b < n; ++b) v[a * n + b] = static_cast<std::uint32_t>(b * m + a);
  return Permutation(std::move(v));
}

Permutation adjacentTransposition(std::uint64_t n, std::uint64_t i) {
  if (i + 2 > n) fail(Err::IndexOutOfRange, "adjacent transposition out of range");
  Permutation p = Permutation::identity(n);
  std::vector<std::uint32_t> v = p.images();
  std::swap(v[i], v[i + 1]);
  return Permutation(std::move(v));
}

std::vector<std::uint32_t> adjacentFactorization(const Permutation& p) {
  // Bubble-sort p to the identity. Each recorded swap post-composes a tau on
  // the right, so the recorded order is reversed to read the word as
  // p = tau_{i1} o ... o tau_{ik}.
  std::vector<std::uint32_t> work = p.images();
  std::vector<std::uint32_t> word;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::uint64_t j = 0; j + 1 < work.size(); ++j) {
      if (work[j] > work[j + 1]) {
        std::swap(work[j], work[j + 1]);
        word.push_back(static_cast<std::uint32_t>(j));
        moved = true;
      }
    }
  }
  std::reverse(word.begin(), word.end());
  return word;
}

Permutation leftDistributor(std::uint64_t m, std::uint64_t n, std::uint64_t k) {
  Permutation first = tensorSym(m, n + k);
  Permutation second = directSum(tensorSym(n, m), tensorSym(k, m));
  return compose(second, first);
}

}  // namespace cropkit
