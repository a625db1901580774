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

#include "cropkit/axioms.hpp"

#include "cropkit/dsl.hpp"

namespace cropkit {

Permutation randomPermutation(std::mt19937_64& rng, std::uint64_t size) {
  std::vector<std::uint32_t> v(size);
  for (std::uint64_t i = 0; i < size; ++i) v[i] = static_cast<std::uint32_t>(i);
  for (std::uint64_t i = size; i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
  return Permutation(std::move(v));
}

SweepReport controlEquationSweep(const Registry& reg, const Signature& sig, BackendKind backend,
                                 int maxMetaWires, unsigned trials, std::uint64_t seed) {
  SweepReport report;
  std::mt19937_64 rng(seed);
  Backend be(backend);
  const std::string backendName = cropkit::backendName(backend);
  static const char* ruleNames[] = {"a", "b",  "c",           "d",        "e",       "f",
                                    "g", "h",  "xx",          "interchange", "swap_nat",
                                    "swap_inv", "conj"};
  for (const char* name : ruleNames) {
    const Rule* rule = reg.find(name);
    if (!rule) continue;
    for (unsigned t = 0; t < trials; ++t) {
      ++report.cases;
      try {
        auto [lhs, rhs] = instantiateRule(*rule, sig, backendName, rng, maxMetaWires);
        Value vl = evalCtrl(lhs, be, sig);
        Value vr = evalCtrl(rhs, be, sig);
        if (be.equal(vl, vr)) {
          ++report.passed;
        } else {
          report.failures.push_back(std::string("rule ") + name + " on " + backendName + ": " +
                                    printCtrl(lhs) + "  !=  " + printCtrl(rhs));
        }
      } catch (const CropError& e) {
        report.failures.push_back(std::string("rule ") + name + " on " + backendName +
                                  " raised: " + e.what());
      }
    }
  }
  return report;
}

SweepReport bipermutativeSweep(std::uint64_t maxSize, unsigned trials, std::uint64_t seed) {
  SweepReport report;
  std::mt19937_64 rng(seed);
  auto size = [&] { return 1 + rng() % maxSize; };
  auto check = [&](bool ok, const std::string& what) {
    ++report.cases;
    if (ok)
      ++report.passed;
    else
      report.failures.push_back(what);
  };

  for (unsigned t = 0; t < trials; ++t) {
    // Kronecker from sums: f (x) g through copies and tensor symmetries.
    {
      std::uint64_t m = size(), n = size();
      Permutation f = randomPermutation(rng, m);
      Permutation g = randomPermutation(rng, n);
      Permutation fs = f;
      for (std::uint64_t k = 1; k < n; ++k) fs = directSum(fs, f);
      Permutation gs = g;
      for (std::uint64_t k = 1; k < m; ++k) gs = directSum(gs, g);
      Permutation lhs = tensor(f, g);
      Permutation rhs1 = compose(tensorSym(n, m), compose(fs, compose(tensorSym(m, n), gs)));
      Permutation rhs2 = compose(gs, compose(tensorSym(n, m), compose(fs, tensorSym(m, n))));
      check(lhs == rhs1, "kron-from-sums (first form)");
      check(lhs == rhs2, "kron-from-sums (second form)");
    }
    // Right distributivity on morphisms: (f + g) x h = (f x h) + (g x h).
    {
      Permutation f = randomPermutation(rng, size());
      Permutation g = randomPermutation(rng, size());
      Permutation h = randomPermutation(rng, size());
      check(tensor(directSum(f, g), h) == directSum(tensor(f, h), tensor(g, h)),
            "right distributivity");
    }
    // The gamma-tensor square: gamma_{m,n} x id_k = gamma_{mk,nk}.
    {
      std::uint64_t m = size(), n = size(), k = size();
      check(tensor(gamma(m, n), Permutation::identity(k)) == gamma(m * k, n * k),
            "gamma tensor square");
    }
    // Left-distributor coherence: (id + gamma + id) (delta_a + delta_b) = delta_{a+b}.
    {
      std::uint64_t a = size(), bsz = size(), c = size(), d = size();
      Permutation lhs = compose(
          directSum(Permutation::identity(a * c),
                    directSum(gamma(a * d, bsz * c), Permutation::identity(bsz * d))),
          directSum(leftDistributor(a, c, d), leftDistributor(bsz, c, d)));
      check(lhs == leftDistributor(a + bsz, c, d), "left-distributor coherence");
    }
  }
  return report;
}

}  // namespace cropkit
