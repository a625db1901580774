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

#include "cropkit/cyclo.hpp"

#include <cmath>
#include <cstdlib>

namespace cropkit {

namespace {

constexpr std::int64_t kCoeffCap = std::int64_t(1) << 56;

void checkRange(const CycloEntry& e) {
  for (std::int64_t v : e.c) {
    if (v >= kCoeffCap || v <= -kCoeffCap)
      fail(Err::CapacityError, "cyclotomic coefficient overflow; reduce the circuit");
  }
}

}  // namespace

CycloEntry CycloEntry::omegaPow(int k) {
  int r = ((k % 8) + 8) % 8;
  CycloEntry e;
  if (r < 4)
    e.c[r] = 1;
  else
    e.c[r - 4] = -1;
  return e;
}

CycloEntry CycloEntry::dyadic(std::int64_t num, std::int32_t log2den) {
  CycloEntry e;
  e.c[0] = num;
  e.log2den = log2den;
  e.reduce();
  return e;
}

void CycloEntry::reduce() {
  if (isZero()) {
    log2den = 0;
    return;
  }
  while (log2den > 0 && (c[0] % 2 == 0) && (c[1] % 2 == 0) && (c[2] % 2 == 0) && (c[3] % 2 == 0)) {
    for (auto& v : c) v /= 2;
    --log2den;
  }
}

CycloEntry CycloEntry::conj() const {
  // conj(w) = w^-1 = -w^3, so (c0,c1,c2,c3) -> (c0,-c3,-c2,-c1).
  CycloEntry e;
  e.c = {c[0], -c[3], -c[2], -c[1]};
  e.log2den = log2den;
  return e;
}

std::complex<double> CycloEntry::toComplex() const {
  const double s = 1.0 / std::sqrt(2.0);
  static const std::complex<double> w[4] = {
      {1.0, 0.0}, {s, s}, {0.0, 1.0}, {-s, s}};
  std::complex<double> acc{0.0, 0.0};
  for (int k = 0; k < 4; ++k) acc += double(c[k]) * w[k];
  return acc / std::pow(2.0, log2den);
}

CycloEntry add(const CycloEntry& a, const CycloEntry& b) {
  CycloEntry out;
  std::int32_t den = std::max(a.log2den, b.log2den);
  std::int64_t sa = std::int64_t(1) << (den - a.log2den);
  std::int64_t sb = std::int64_t(1) << (den - b.log2den);
  for (int k = 0; k < 4; ++k) out.c[k] = a.c[k] * sa + b.c[k] * sb;
  out.log2den = den;
  out.reduce();
  checkRange(out);
  return out;
}

CycloEntry neg(const CycloEntry& a) {
  CycloEntry out = a;
  for (auto& v : out.c) v = -v;
  return out;
}

CycloEntry mul(const CycloEntry& a, const CycloEntry& b) {
  // Degree-4 convolution folded by w^4 = -1.
  std::int64_t acc[7] = {0, 0, 0, 0, 0, 0, 0};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) acc[i + j] += a.c[i] * b.c[j];
  CycloEntry out;
  for (int k = 0; k < 4; ++k) out.c[k] = acc[k] - (k + 4 <= 6 ? acc[k + 4] : 0);
  out.log2den = a.log2den + b.log2den;
  out.reduce();
  checkRange(out);
  return out;
}

CycloMatrix::CycloMatrix(std::uint64_t dim) : dim_(dim) {
  if (dim == 0) fail(Err::InvalidArgument, "cyclo: dimension must be positive");
  if (dim > 4096) fail(Err::CapacityError, "cyclo: dimension too large");
  e_.assign(dim_ * dim_, CycloEntry::zero());
}

CycloMatrix CycloMatrix::identity(std::uint64_t dim) {
  CycloMatrix m(dim);
  for (std::uint64_t i = 0; i < dim; ++i) m.at(i, i) = CycloEntry::one();
  return m;
}

CycloMatrix CycloMatrix::fromPermutation(const Permutation& p) {
  CycloMatrix m(p.size());
  for (std::uint64_t j = 0; j < p.size(); ++j) m.at(p(j), j) = CycloEntry::one();
  return m;
}

CycloMatrix CycloMatrix::conjTranspose() const {
  CycloMatrix out(dim_);
  for (std::uint64_t i = 0; i < dim_; ++i)
    for (std::uint64_t j = 0; j < dim_; ++j) out.at(j, i) = at(i, j).conj();
  return out;
}

bool CycloMatrix::isIdentity() const { return *this == identity(dim_); }

CycloMatrix mul(const CycloMatrix& a, const CycloMatrix& b) {
  if (a.dim() != b.dim()) fail(Err::SizeMismatch, "cyclo mul: dimensions differ");
  CycloMatrix out(a.dim());
  for (std::uint64_t i = 0; i < a.dim(); ++i)
    for (std::uint64_t k = 0; k < a.dim(); ++k) {
      if (a.at(i, k).isZero()) continue;
      for (std::uint64_t j = 0; j < a.dim(); ++j) {
        if (b.at(k, j).isZero()) continue;
        out.at(i, j) = add(out.at(i, j), mul(a.at(i, k), b.at(k, j)));
      }
    }
  return out;
}

CycloMatrix blockDiag(const CycloMatrix& a, const CycloMatrix& b) {
  CycloMatrix out(a.dim() + b.dim());
  for (std::uint64_t i = 0; i < a.dim(); ++i)
    for (std::uint64_t j = 0; j < a.dim(); ++j) out.at(i, j) = a.at(i, j);
  for (std::uint64_t i = 0; i < b.dim(); ++i)
    for (std::uint64_t j = 0; j < b.dim(); ++j) out.at(a.dim() + i, a.dim() + j) = b.at(i, j);
  return out;
}

CycloMatrix kron(const CycloMatrix& a, const CycloMatrix& b) {
  CycloMatrix out(a.dim() * b.dim());
  for (std::uint64_t i = 0; i < a.dim(); ++i)
    for (std::uint64_t j = 0; j < a.dim(); ++j) {
      if (a.at(i, j).isZero()) continue;
      for (std::uint64_t k = 0; k < b.dim(); ++k)
        for (std::uint64_t l = 0; l < b.dim(); ++l) {
          if (b.at(k, l).isZero()) continue;
          out.at(i * b.dim() + k, j * b.dim() + l) = mul(a.at(i, j), b.at(k, l));
        }
    }
  return out;
}

}  // namespace cropkit
