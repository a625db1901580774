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
#include "cropkit/perm.hpp"

namespace cropkit {

// Dense square matrix over the two-element field, rows packed in 64-bit words.
class Gf2Matrix {
 public:
  explicit Gf2Matrix(std::uint64_t dim);

  std::uint64_t dim() const { return dim_; }
  bool get(std::uint64_t r, std::uint64_t c) const;
  void set(std::uint64_t r, std::uint64_t c, bool v);

  static Gf2Matrix identity(std::uint64_t dim);
  static Gf2Matrix fromPermutation(const Permutation& p);

  bool operator==(const Gf2Matrix& o) const { return dim_ == o.dim_ && rows_ == o.rows_; }
  bool operator!=(const Gf2Matrix& o) const { return !(*this == o); }

  bool isIdentity() const { return *this == identity(dim_); }
  bool isInvertible() const;

 private:
  std::uint64_t dim_;
  std::uint64_t words_;
  std::vector<std::uint64_t> rows_;  // row-major, words_ words per row
  friend Gf2Matrix mul(const Gf2Matrix&, const Gf2Matrix&);
};

Gf2Matrix mul(const Gf2Matrix& a, const Gf2Matrix& b);
Gf2Matrix blockDiag(const Gf2Matrix& a, const Gf2Matrix& b);
Gf2Matrix kron(const Gf2Matrix& a, const Gf2Matrix& b);

}  // namespace cropkit
