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
#include <vector>

#include "cropkit/rewrite.hpp"

namespace cropkit {

struct SweepReport {
  std::uint64_t cases = 0;
  std::uint64_t passed = 0;
  std::vector<std::string> failures;
  bool ok() const { return cases == passed; }
};

Permutation randomPermutation(std::mt19937_64& rng, std::uint64_t size);

// Soundness of the control equations (and the explicit structural rules):
// every rule instantiated `trials` times with random generator-built subterms
// of at most maxMetaWires wires, both sides evaluated on the backend.
SweepReport controlEquationSweep(const Registry& reg, const Signature& sig, BackendKind backend,
                                 int maxMetaWires, unsigned trials, std::uint64_t seed);

// Bipermutative axioms over permutations: the Kronecker-from-sums equations,
// right distributivity on morphisms, the gamma-tensor square, and the
// left-distributor coherence diagram; block sizes up to maxSize.
SweepReport bipermutativeSweep(std::uint64_t maxSize, unsigned trials, std::uint64_t seed);

}  // namespace cropkit
