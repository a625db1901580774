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

#include "cropkit/error.hpp"

namespace cropkit {

const char* errName(Err e) {
  switch (e) {
    case Err::ArityMismatch:
      return "ArityMismatch";
    case Err::IndexOutOfRange:
      return "IndexOutOfRange";
    case Err::CapacityError:
      return "CapacityError";
    case Err::SizeMismatch:
      return "SizeMismatch";
    case Err::NotPowerOfTwo:
      return "NotPowerOfTwo";
    case Err::UnknownGenerator:
      return "UnknownGenerator";
    case Err::ParamsUnsupported:
      return "ParamsUnsupported";
    case Err::SyntaxError:
      return "SyntaxError";
    case Err::NoMatch:
      return "NoMatch";
    case Err::BadPath:
      return "BadPath";
    case Err::BadRule:
      return "BadRule";
    case Err::SemanticMismatch:
      return "SemanticMismatch";
    case Err::SingularMatrix:
      return "SingularMatrix";
    case Err::UnplaceableGenerator:
      return "UnplaceableGenerator";
    case Err::BudgetExhausted:
      return "BudgetExhausted";
    case Err::IoError:
      return "IoError";
    case Err::InvalidArgument:
      return "InvalidArgument";
  }
  return "UnknownError";
}

}  // namespace cropkit
