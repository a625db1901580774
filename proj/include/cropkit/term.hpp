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
#include <memory>
#include <string>
#include <vector>

#include "cropkit/error.hpp"
#include "cropkit/signature.hpp"

namespace cropkit {

// Child addressing from the root: 0 = left/top/body, 1 = right/bottom.
using Path = std::vector<int>;

std::string pathToString(const Path& p);

// ---------------------------------------------------------------------------
// Controlled-circuit terms. All morphisms are endomorphisms; the top wire is
// the first (most significant) wire and f;g means "f then g".

enum class CtrlKind { Identity, Gen, NotGate, Swap, Seq, Par, Ctrl };

struct CtrlTerm;
using CtrlPtr = std::shared_ptr<const CtrlTerm>;

struct CtrlTerm {
  CtrlKind kind;
  int idWires = 0;            // Identity
  int swapTop = 0;            // Swap(m, n): m top wires...
  int swapBot = 0;            // ...over n bottom wires
  std::string name;           // Gen
  std::vector<double> params; // Gen
  int polarity = 1;           // Ctrl: 0 or 1
  CtrlPtr a, b;               // Seq/Par children; Ctrl body in a
};

CtrlPtr mkIdentity(int wires);
CtrlPtr mkGen(const std::string& name, std::vector<double> params = {});
CtrlPtr mkNot();
CtrlPtr mkSwap(int m, int n);
CtrlPtr mkSeq(CtrlPtr l, CtrlPtr r);
CtrlPtr mkPar(CtrlPtr top, CtrlPtr bottom);
CtrlPtr mkCtrl(int polarity, CtrlPtr body);
CtrlPtr mkSeq(const std::vector<CtrlPtr>& factors);  // empty -> nullptr

// Wire count; throws ArityMismatch at the offending Seq node (path reported)
// and UnknownGenerator for names missing from the signature.
int wires(const CtrlPtr& t, const Signature& sig);

// Structural equality (exact: names, params, shapes).
bool equalTerms(const CtrlPtr& a, const CtrlPtr& b);

CtrlPtr subtermAt(const CtrlPtr& t, const Path& p);

// C^w_{w'}(f): f controlled on |w| top wires and |w'| bottom wires
// (1 = positive, 0 = negative). Bottom controls are realized by nesting them
// under the top controls and conjugating with id_{|w|} + swap blocks.
CtrlPtr multiCtrl(const std::string& w, const std::string& wPrime, CtrlPtr f,
                  const Signature& sig);

// ---------------------------------------------------------------------------
// Direct-sum terms of the rigged crop.

enum class SumKind { IdentityD, GenTilde, Gamma, SeqS, DirectSum };

struct SumTerm;
using SumPtr = std::shared_ptr<const SumTerm>;

struct SumTerm {
  SumKind kind;
  std::uint64_t d = 0;        // IdentityD dim / Gamma m
  std::uint64_t d2 = 0;       // Gamma n
  std::string name;           // GenTilde
  std::vector<double> params; // GenTilde
  SumPtr a, b;                // SeqS/DirectSum children
};

SumPtr mkIdentityD(std::uint64_t dim);
SumPtr mkGenTilde(const std::string& name, std::vector<double> params = {});
SumPtr mkGamma(std::uint64_t m, std::uint64_t n);
SumPtr mkSeqS(SumPtr l, SumPtr r);
SumPtr mkDirectSum(SumPtr top, SumPtr bottom);

// Dimension; throws ArityMismatch on SeqS dimension clashes (path reported).
std::uint64_t dim(const SumPtr& s, const Signature& sig);

bool equalSums(const SumPtr& a, const SumPtr& b);
bool containsGen(const SumPtr& s);

}  // namespace cropkit
