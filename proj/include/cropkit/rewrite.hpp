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

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cropkit/semantics.hpp"
#include "cropkit/term.hpp"

namespace cropkit {

// --- normalized terms ---------------------------------------------------------
// Strict-prop laws the figures treat silently are normalized away:
// associativity and unitality of Seq/Par and fusion of adjacent identities.
// A term becomes a sequence of slices; a slice is a parallel list of atoms;
// a Group atom holds a multi-slice subterm that sits inside a Par context.

struct NTerm;
using NTermPtr = std::shared_ptr<const NTerm>;

struct NAtom {
  enum class K { Id, Not, Gen, Swap, Ctrl, Group };
  K k = K::Id;
  int idWires = 0;
  int swapTop = 0, swapBot = 0;
  std::string name;
  std::vector<double> params;
  int polarity = 1;
  NTermPtr sub;  // Ctrl body / Group content
  int wires = 0; // cached
};

using NSlice = std::vector<NAtom>;

struct NTerm {
  int wires = 0;
  std::vector<NSlice> slices;  // empty means identity
};

NTerm normalizeTerm(const CtrlPtr& t, const Signature& sig);
CtrlPtr denormalize(const NTerm& nt);

// Right-nested Seq of slices, each slice a right-nested Par of non-identity
// atoms padded by fused identities; idempotent.
CtrlPtr normalizeStructural(const CtrlPtr& t, const Signature& sig);

bool equalN(const NTerm& a, const NTerm& b);
std::string canonicalKey(const NTerm& nt);

// --- rules ----------------------------------------------------------------------

// Affine wire expression: sum of variables plus a constant.
struct WireExpr {
  std::vector<std::string> vars;
  int offset = 0;
  static WireExpr constant(int k) { return {{}, k}; }
  static WireExpr var(const std::string& v, int off = 0) { return {{v}, off}; }
};

struct ParamExpr {
  enum class K { Const, Var, Add, Sub, Mul, Div, Mod2pi };
  K k = K::Const;
  double c = 0;
  std::string var;
  std::vector<ParamExpr> kids;
};

struct PTerm;
using PTermPtr = std::shared_ptr<const PTerm>;

struct PAtom {
  enum class K { Id, Not, Gen, Swap, Ctrl, Meta, Nest };
  K k = K::Meta;
  WireExpr width;               // Id
  WireExpr swapTop, swapBot;    // Swap
  std::string name;             // Gen / Meta
  std::vector<ParamExpr> params;
  int genWires = 1;             // Gen: wire count per the owning signature
  int polarity = 1;             // Ctrl
  PTermPtr sub;                 // Ctrl body / Nest content
};

// A sequence element is either a slice pattern or a segment metavariable
// consuming one or more whole slices.
struct PElem {
  bool isSeqMeta = false;
  std::string metaName;
  std::vector<PAtom> atoms;
};

struct PTerm {
  std::vector<PElem> elems;
};

struct WireConstraint {
  std::string var;       // this wire variable...
  std::string metaName;  // ...must equal wires of this metavariable
};

// Deterministic parameter computation for rules like Euler whose right side
// introduces parameters as a total function of the left side's.
struct EulerCompute {
  std::vector<std::string> args;  // parameter variable names, in order
  std::vector<std::string> outs;
};

struct Rule {
  std::string name;
  std::string backend;  // backend the loader verifies on
  PTerm lhs, rhs;
  std::vector<WireConstraint> constraints;
  std::optional<EulerCompute> compute;
};

class Registry {
 public:
  void add(Rule r);
  const Rule* find(const std::string& name) const;
  const Rule& require(const std::string& name) const;
  std::vector<std::string> names() const;  // sorted

 private:
  std::map<std::string, Rule> rules_;
};

// The always-available rules: control equations (a)-(h), the involution
// relation xx, the explicit structural rules (interchange, swap naturality,
// swap cancellation) and the derived conjugation lemma.
Registry coreRegistry();

// Loads {"name","backend","lhs","rhs",...} rule entries (DSL with ?metas and
// @params) and verifies each rule semantically on its declared backend before
// admitting it; SemanticMismatch guards against mistranscription.
void loadRuleFile(Registry& reg, const std::string& path, const Signature& sig,
                  unsigned verifyTrials = 100, std::uint64_t seed = 1);
void loadRulesJsonText(Registry& reg, const std::string& text, const Signature& sig,
                       unsigned verifyTrials = 100, std::uint64_t seed = 1);

// Builds the registry for a signature: core rules plus the signature's rule
// file (data/rules/<name>.rules.json when present); every relation named by
// the signature must resolve.
Registry registryForSignature(const Signature& sig, const std::string& dataDir,
                              unsigned verifyTrials = 100);

// Random generator-built term over the signature, usable on the named
// backend; wires in [minWires, maxWires].
CtrlPtr randomTerm(std::mt19937_64& rng, const Signature& sig, const std::string& backendName,
                   int maxWires, int depth = 3, int minWires = 0);

// Verifies one rule on `trials` random instantiations; throws SemanticMismatch.
void verifyRule(const Rule& rule, const Signature& sig, unsigned trials, std::mt19937_64& rng);

// Instantiates both sides on random metavariable assignments (exposed for the
// soundness suites).
std::pair<CtrlPtr, CtrlPtr> instantiateRule(const Rule& rule, const Signature& sig,
                                            const std::string& backendName, std::mt19937_64& rng,
                                            int maxMetaWires = 2);

// --- rewriting -------------------------------------------------------------------

// Applies `rule` (left-to-right when leftToRight) at `path`; the subterm at
// the path must match the chosen side up to structural normalization, with
// leftover parallel padding allowed only when it is all identity wires.
CtrlPtr applyRule(const CtrlPtr& t, const Rule& rule, bool leftToRight, const Path& path,
                  const Signature& sig);

struct ProofStep {
  std::string rule;
  bool leftToRight = true;
  Path path;
};

struct ProofScript {
  CtrlPtr lhs, rhs;
  std::vector<ProofStep> steps;
};

struct CheckResult {
  bool accepted = false;
  std::size_t failingStep = 0;  // valid when !accepted and a step failed
  std::string message;
  std::vector<CtrlPtr> trace;  // lhs, after step 1, ..., final
};

CheckResult checkProof(const ProofScript& script, const Registry& reg, const Signature& sig);

ProofScript scriptFromJsonText(const std::string& text, const Signature& sig);
ProofScript scriptFromJsonFile(const std::string& path, const Signature& sig);
std::string scriptToJsonText(const ProofScript& script);

// --- bounded equivalence search ---------------------------------------------------

struct SearchResult {
  enum class Kind { Found, Counterexample, Exhausted };
  Kind kind = Kind::Exhausted;
  ProofScript script;     // Found
  std::string detail;     // counterexample backend/value or exhaustion reason
};

// Bidirectional iterative deepening over rule applications with canonical-form
// memoization; a semantic pre-filter rejects inequivalent pairs immediately.
// Deterministic: expansion order is lexicographic on (rule, direction, path).
SearchResult searchEquiv(const CtrlPtr& a, const CtrlPtr& b, const Registry& reg,
                         const Signature& sig, int maxDepth, double budgetSeconds);

// Euler angles: parameters in [0, 2pi) such that
// h;z(a1);h;z(a2);h = (phase(b0)+id1);z(b1);h;z(b2);h;z(b3) within 1e-9.
std::array<double, 4> eulerAngles(double a1, double a2);

// First backend (perm, gf2, cyclo, complex) able to evaluate the term.
std::optional<BackendKind> pickBackend(const CtrlPtr& t, const Signature& sig);

}  // namespace cropkit
