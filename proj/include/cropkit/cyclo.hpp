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

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "cropkit/error.hpp"
#include "cropkit/perm.hpp"

namespace cropkit {

// Element of Z[omega, 1/2] with omega^4 = -1 (omega = exp(i pi/4)):
// (c0 + c1 w + c2 w^2 + c3 w^3) / 2^log2den, kept in canonical form
// (log2den = 0 or some ci odd). Exactly houses the discrete gate set:
// 1/sqrt(2) = (w - w^3)/2 and i = w^2.
struct CycloEntry {
  std::array<std::int64_t, 4> c{0, 0, 0, 0};
  std::int32_t log2den = 0;

  static CycloEntry zero() { return {}; }
  static CycloEntry one() { return {{1, 0, 0, 0}, 0}; }
  static CycloEntry omegaPow(int k);  // w^k, any integer k
  static CycloEntry dyadic(std::int64_t num, std::int32_t log2den);

  void reduce();
  bool isZero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }

  CycloEntry conj() const;  // complex conjugate: w -> -w^3
  std::complex<double> toComplex() const;

  bool operator==(const CycloEntry& o) const { return c == o.c && log2den == o.log2den; }
  bool operator!=(const CycloEntry& o) const { return !(*this == o); }
};

CycloEntry add(const CycloEntry& a, const CycloEntry& b);
CycloEntry neg(const CycloEntry& a);
CycloEntry mul(const CycloEntry& a, const CycloEntry& b);

class CycloMatrix {
 public:
  explicit CycloMatrix(std::uint64_t dim);

  std::uint64_t dim() const { return dim_; }
  const CycloEntry& at(std::uint64_t r, std::uint64_t c) const { return e_[r * dim_ + c]; }
  CycloEntry& at(std::uint64_t r, std::uint64_t c) { return e_[r * dim_ + c]; }

  static CycloMatrix identity(std::uint64_t dim);
  static CycloMatrix fromPermutation(const Permutation& p);

  CycloMatrix conjTranspose() const;
  bool isIdentity() const;

  bool operator==(const CycloMatrix& o) const { return dim_ == o.dim_ && e_ == o.e_; }
  bool operator!=(const CycloMatrix& o) const { return !(*this == o); }

 private:
  std::uint64_t dim_;
  std::vector<CycloEntry> e_;
};

CycloMatrix mul(const CycloMatrix& a, const CycloMatrix& b);
CycloMatrix blockDiag(const CycloMatrix& a, const CycloMatrix& b);
CycloMatrix kron(const CycloMatrix& a, const CycloMatrix& b);

}  // namespace cropkit
