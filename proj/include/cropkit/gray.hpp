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
#include <string>

#include "cropkit/perm.hpp"

namespace cropkit {

// Bitstrings are MSB-first; flipIndex counts from the left starting at 0.
// Positions must fit machine words, so n is capped at 24.
constexpr int kMaxGrayBits = 24;

// The n-bit Gray word h_n(i), 0 <= i < 2^n.
std::string grayCode(int n, std::uint64_t i);

// r_n on [2^n]: r_n(i) is the integer value of h_n(i); translates between
// lexicographic order and Gray order.
Permutation grayRank(int n);

// theta_{n,i}: the transposition exchanging r_n(i) and r_n(i+1),
// 0 <= i <= 2^n - 2.
Permutation grayTransposition(int n, std::uint64_t i);

// Context of the single bit flip between h_n(i) and h_n(i+1): the common
// prefix w_n(i), the flipped position, and the common suffix w'_n(i).
struct GrayContext {
  std::string prefix;
  int flipIndex = 0;
  std::string suffix;
};

GrayContext grayContext(int n, std::uint64_t i);

}  // namespace cropkit
