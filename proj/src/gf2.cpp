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

#include "cropkit/gf2.hpp"

namespace cropkit {

Gf2Matrix::Gf2Matrix(std::uint64_t dim) : dim_(dim), words_((dim + 63) / 64) {
  if (dim == 0) fail(Err::InvalidArgument, "gf2: dimension must be positive");
  if (dim > (std::uint64_t(1) << 20)) fail(Err::CapacityError, "gf2: dimension too large");
  rows_.assign(dim_ * words_, 0);
}

bool Gf2Matrix::get(std::uint64_t r, std::uint64_t c) const {
  return (rows_[r * words_ + c / 64] >> (c % 64)) & 1u;
}

void Gf2Matrix::set(std::uint64_t r, std::uint64_t c, bool v) {
  std::uint64_t& w = rows_[r * words_ + c / 64];
  std::uint64_t mask = std::uint64_t(1) << (c % 64);
  if (v)
    w |= mask;
  else
    w &= ~mask;
}

Gf2Matrix Gf2Matrix::identity(std::uint64_t dim) {
  Gf2Matrix m(dim);
  for (std::uint64_t i = 0; i < dim; ++i) m.set(i, i, true);
  return m;
}

Gf2Matrix Gf2Matrix::fromPermutation(const Permutation& p) {
  Gf2Matrix m(p.size());
  for (std::uint64_t j = 0; j < p.size(); ++j) m.set(p(j), j, true);
  return m;
}

bool Gf2Matrix::isInvertible() const {
  Gf2Matrix work = *this;
  for (std::uint64_t col = 0; col < dim_; ++col) {
    std::uint64_t pivot = dim_;
    for (std::uint64_t r = col; r < dim_; ++r) {
      if (work.get(r, col)) {
        pivot = r;
        break;
      }
    }
    if (pivot == dim_) return false;
    if (pivot != col) {
      for (std::uint64_t w = 0; w < words_; ++w)
        std::swap(work.rows_[pivot * words_ + w], work.rows_[col * words_ + w]);
    }
    for (std::uint64_t r = 0; r < dim_; ++r) {
      if (r != col && work.get(r, col)) {
        for (std::uint64_t w = 0; w < words_; ++w)
          work.rows_[r * words_ + w] ^= work.rows_[col * words_ + w];
      }
    }
  }
  return true;
}

Gf2Matrix mul(const Gf2Matrix& a, const Gf2Matrix& b) {
  if (a.dim() != b.dim()) fail(Err::SizeMismatch, "gf2 mul: dimensions differ");
  Gf2Matrix out(a.dim());
  for (std::uint64_t i = 0; i < a.dim(); ++i) {
    for (std::uint64_t k = 0; k < a.dim(); ++k) {
      if (a.get(i, k)) {
        for (std::uint64_t w = 0; w < out.words_; ++w)
          out.rows_[i * out.words_ + w] ^= b.rows_[k * b.words_ + w];
      }
    }
  }
  return out;
}

Gf2Matrix blockDiag(const Gf2Matrix& a, const Gf2Matrix& b) {
  Gf2Matrix out(a.dim() + b.dim());
  for (std::uint64_t i = 0; i < a.dim(); ++i)
    for (std::uint64_t j = 0; j < a.dim(); ++j)
      if (a.get(i, j)) out.set(i, j, true);
  for (std::uint64_t i = 0; i < b.dim(); ++i)
    for (std::uint64_t j = 0; j < b.dim(); ++j)
      if (b.get(i, j)) out.set(a.dim() + i, a.dim() + j, true);
  return out;
}

Gf2Matrix kron(const Gf2Matrix& a, const Gf2Matrix& b) {
  Gf2Matrix out(a.dim() * b.dim());
  for (std::uint64_t i = 0; i < a.dim(); ++i)
    for (std::uint64_t j = 0; j < a.dim(); ++j) {
      if (!a.get(i, j)) continue;
      for (std::uint64_t k = 0; k < b.dim(); ++k)
        for (std::uint64_t l = 0; l < b.dim(); ++l)
          if (b.get(k, l)) out.set(i * b.dim() + k, j * b.dim() + l, true);
    }
  return out;
}

}  // namespace cropkit
