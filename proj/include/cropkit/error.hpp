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

#include <stdexcept>
#include <string>
#include <vector>

namespace cropkit {

enum class Err {
  ArityMismatch,
  IndexOutOfRange,
  CapacityError,
  SizeMismatch,
  NotPowerOfTwo,
  UnknownGenerator,
  ParamsUnsupported,
  SyntaxError,
  NoMatch,
  BadPath,
  BadRule,
  SemanticMismatch,
  SingularMatrix,
  UnplaceableGenerator,
  BudgetExhausted,
  IoError,
  InvalidArgument,
};

const char* errName(Err e);

// All recoverable failures surface as CropError; `path` (when nonempty)
// addresses the offending subterm, 0 = left/top/body, 1 = right/bottom.
class CropError : public std::runtime_error {
 public:
  CropError(Err code, std::string msg, std::vector<int> path = {})
      : std::runtime_error(std::move(msg)), code_(code), path_(std::move(path)) {}

  Err code() const { return code_; }
  const std::vector<int>& path() const { return path_; }

 private:
  Err code_;
  std::vector<int> path_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg, std::vector<int> path = {}) {
  throw CropError(code, msg, std::move(path));
}

}  // namespace cropkit
