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

#include "cropkit/gray.hpp"

namespace cropkit {

namespace {

void checkBits(int n) {
  if (n < 0 || n > kMaxGrayBits) fail(Err::CapacityError, "gray: n must be in [0, 24]");
}

}  // namespace

std::string grayCode(int n, std::uint64_t i) {
  checkBits(n);
  if (i >= (std::uint64_t(1) << n)) fail(Err::IndexOutOfRange, "grayCode: index out of range");
  std::string out;
  out.reserve(n);
  // h_0(0) = empty; h_n(i) = 0.h_{n-1}(i) for i < 2^{n-1}, else 1.h_{n-1}(2^n-1-i).
  for (int b = n; b > 0; --b) {
    std::uint64_t half = std::uint64_t(1) << (b - 1);
    if (i < half) {
      out.push_back('0');
    } else {
      out.push_back('1');
      i = (half << 1) - 1 - i;
    }
  }
  return out;
}

Permutation grayRank(int n) {
  checkBits(n);
  std::uint64_t size = std::uint64_t(1) << n;
  std::vector<std::uint32_t> v(size);
  for (std::uint64_t i = 0; i < size; ++i) {
    std::uint64_t value = 0, j = i;
    for (int b = n; b > 0; --b) {
      std::uint64_t half = std::uint64_t(1) << (b - 1);
      if (j >= half) {
        value |= half;
        j = (half << 1) - 1 - j;
      }
    }
    v[i] = static_cast<std::uint32_t>(value);
  }
  return Permutation(std::move(v));
}

Permutation grayTransposition(int n, std::uint64_t i) {
  checkBits(n);
  std::uint64_t size = std::uint64_t(1) << n;
  if (size < 2 || i > size - 2) fail(Err::IndexOutOfRange, "grayTransposition: index out of range");
  Permutation r = grayRank(n);
  std::vector<std::uint32_t> v = Permutation::identity(size).images();
  std::swap(v[r(i)], v[r(i + 1)]);
  return Permutation(std::move(v));
}

GrayContext grayContext(int n, std::uint64_t i) {
  checkBits(n);
  std::uint64_t size = std::uint64_t(1) << n;
  if (size < 2 || i > size - 2) fail(Err::IndexOutOfRange, "grayContext: index out of range");
  std::string a = grayCode(n, i);
  std::string b = grayCode(n, i + 1);
  int flip = -1;
  for (int k = 0; k < n; ++k) {
    if (a[k] != b[k]) {
      flip = k;
      break;
    }
  }
  GrayContext ctx;
  ctx.prefix = a.substr(0, flip);
  ctx.flipIndex = flip;
  ctx.suffix = a.substr(flip + 1);
  return ctx;
}

}  // namespace cropkit
