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

#include "cropkit/gray.hpp"
#include "cropkit/semantics.hpp"
#include "cropkit/term.hpp"

namespace cropkit {

// Word in the Gray generators theta_{n,i} (transpositions) and zeta_{n,i}
// (J conjugates); zetaInv stands for zeta^2 = zeta^{-1}. The word denotes the
// matrix product letters[0] * letters[1] * ... (function order).
enum class GrayLetterKind { Theta, Zeta, ZetaInv };

struct GrayLetter {
  GrayLetterKind kind;
  std::uint64_t i = 0;
};

struct GrayWord {
  int n = 0;
  std::vector<GrayLetter> letters;
};

// Evaluates a controlled term over the NOT-only theory into a permutation.
Permutation alpha(const CtrlPtr& t, const Signature& sig = Signature::x());

// Synthesis: factors p (size 2^n) through Gray transpositions into a
// composition of multi-controlled NOTs with alpha(beta(p)) = p.
CtrlPtr beta(const Permutation& p);

// The multi-controlled NOT realizing theta_{n,i}.
CtrlPtr thetaTerm(int n, std::uint64_t i);

// Prop morphism A: controls become direct sums, Par becomes the tensor
// expansion, swaps become gamma words.
SumPtr aTranslate(const CtrlPtr& t, const Signature& sig);

// Prop morphism B: direct sums become controls after right-nested
// normalization of generator placement; permutation layers go through beta.
CtrlPtr bTranslate(const SumPtr& s, const Signature& sig);

// The Kronecker-from-sums constructor: a sum term whose semantics equals
// kron(eval f, eval h), built from copies of f and h and gamma words.
SumPtr expandTensor(const SumPtr& f, const SumPtr& h, const Signature& sig);

// A permutation as a sum term: a gamma word via adjacent factorization.
SumPtr permToSum(const Permutation& p);

// zeta_{n,i} = r_n^{-1} (id_i (+) J (+) id) r_n over GF(2).
Gf2Matrix zeta(int n, std::uint64_t i);

// Evaluation of {x, j} circuits in GL(Z2).
Gf2Matrix aJ(const CtrlPtr& t, const Signature& sig);

// Gray word to multi-controlled circuit; zeta maps to a controlled j or j^2
// depending on the lexicographic order of the flipped pair.
CtrlPtr bJ(const GrayWord& w, const Signature& sig);

// Multiply-back oracle for GrayWord.
Gf2Matrix grayWordMatrix(const GrayWord& w);

// Factors an invertible matrix over GF(2), dim 2^n, into a Gray word:
// Gaussian elimination into adjacent row operations, then conjugation by the
// theta word for r_n.
GrayWord factorGl2(const Gf2Matrix& m);

std::string grayWordToJson(const GrayWord& w);
GrayWord grayWordFromJsonText(const std::string& text);

}  // namespace cropkit
