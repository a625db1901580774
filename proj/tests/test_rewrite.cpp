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

#include <doctest.h>

#include <random>

#include "cropkit/axioms.hpp"
#include "cropkit/dsl.hpp"
#include "cropkit/rewrite.hpp"

using namespace cropkit;

namespace {

const Signature& X = Signature::x();

std::string dataDir() { return CROPKIT_DATA_DIR; }

Signature loadSig(const std::string& name) {
  return Signature::fromJsonFile(dataDir() + "/signatures/" + name + ".sig");
}

Registry loadRegistry(const Signature& sig, unsigned trials = 8) {
  return registryForSignature(sig, dataDir(), trials);
}

CtrlPtr norm(const std::string& text, const Signature& sig) {
  return normalizeStructural(parseCtrl(text, sig), sig);
}

}  // namespace

TEST_CASE("structural normalization") {
  CHECK(equalTerms(norm("(id1 + id2)", X), mkIdentity(3)));
  CHECK(equalTerms(norm("c1[x] ; id2", X), mkCtrl(1, mkNot())));
  CtrlPtr a = norm("(x ; x) ; x", X);
  CtrlPtr b = norm("x ; (x ; x)", X);
  CHECK(equalTerms(a, b));
  CHECK(equalTerms(norm("swap 0 3", X), mkIdentity(3)));
}

TEST_CASE("normalization is idempotent and semantics-preserving") {
  std::mt19937_64 rng(51);
  Backend pe(BackendKind::Perm);
  for (int trial = 0; trial < 1000; ++trial) {
    CtrlPtr t = randomTerm(rng, X, "perm", 3, 4);
    CtrlPtr n1 = normalizeStructural(t, X);
    CtrlPtr n2 = normalizeStructural(n1, X);
    REQUIRE(equalTerms(n1, n2));
    REQUIRE(pe.equal(evalCtrl(t, pe, X), evalCtrl(n1, pe, X)));
  }
}

TEST_CASE("apply the spec's rule examples") {
  Registry reg = coreRegistry();

  // (e) at root on c0[f] ; c1[f] with f = x
  CtrlPtr t = parseCtrl("c0[x] ; c1[x]", X);
  CtrlPtr got = applyRule(t, reg.require("e"), true, {}, X);
  CHECK(equalTerms(got, norm("id1 + x", X)));

  // (d) at root on (x+id1) ; c0[x] ; (x+id1)
  t = parseCtrl("(x + id1) ; c0[x] ; (x + id1)", X);
  got = applyRule(t, reg.require("d"), true, {}, X);
  CHECK(equalTerms(got, mkCtrl(1, mkNot())));

  // (a) right-to-left merges sequential controls
  t = parseCtrl("c1[x] ; c1[x]", X);
  got = applyRule(t, reg.require("a"), false, {}, X);
  CHECK(equalTerms(got, norm("c1[x ; x]", X)));

  // NoMatch reports the residual subterm
  try {
    applyRule(parseCtrl("c1[x]", X), reg.require("e"), true, {}, X);
    FAIL("expected NoMatch");
  } catch (const CropError& e) {
    CHECK(e.code() == Err::NoMatch);
  }

  CHECK_THROWS_AS(applyRule(parseCtrl("x", X), reg.require("e"), true, {4}, X), CropError);
}

TEST_CASE("apply under identity padding") {
  Registry reg = coreRegistry();
  // (e) fires inside a slice padded with identity wires
  CtrlPtr t = parseCtrl("(c0[x] + id2) ; (c1[x] + id2)", X);
  CtrlPtr got = applyRule(t, reg.require("e"), true, {}, X);
  CHECK(equalTerms(got, norm("id1 + x + id2", X)));
}

TEST_CASE("rules applied then reversed return the original normal form") {
  Registry reg = coreRegistry();
  std::mt19937_64 rng(61);
  const std::vector<std::string> ruleNames = {"a", "b", "c", "d", "e", "f", "g", "h", "xx"};
  int hits = 0;
  for (int trial = 0; trial < 400; ++trial) {
    CtrlPtr t = randomTerm(rng, X, "perm", 3, 3);
    for (const auto& name : ruleNames) {
      const Rule& rule = reg.require(name);
      CtrlPtr forward;
      try {
        forward = applyRule(t, rule, true, {}, X);
      } catch (const CropError&) {
        continue;
      }
      ++hits;
      CtrlPtr back = applyRule(forward, rule, false, {}, X);
      CHECK(equalTerms(back, normalizeStructural(t, X)));
    }
  }
  CHECK(hits > 50);
}

TEST_CASE("registry loads and verifies the shipped theories") {
  for (const std::string name : {"x", "mobit", "v", "quantum", "pi"}) {
    Signature sig = loadSig(name);
    Registry reg = loadRegistry(sig);
    for (const auto& rel : sig.relations) CHECK(reg.find(rel) != nullptr);
  }
}

TEST_CASE("loader rejects a mistranscribed rule") {
  Signature sig = loadSig("mobit");
  Registry reg = coreRegistry();
  try {
    loadRulesJsonText(reg,
                      R"([{"name":"broken","backend":"gf2","lhs":"j ; j","rhs":"id1"}])", sig, 16);
    FAIL("expected SemanticMismatch");
  } catch (const CropError& e) {
    CHECK(e.code() == Err::SemanticMismatch);
  }
}

TEST_CASE("independence model: J -> id makes exactly eq-24 fail") {
  Signature indep = loadSig("mobit_indep");
  // control rules and the basic mobit relations verify under the override
  Registry reg = coreRegistry();
  std::mt19937_64 rng(71);
  for (const char* name : {"a", "b", "c", "d", "e", "f", "g", "h", "xx"})
    CHECK_NOTHROW(verifyRule(reg.require(name), indep, 32, rng));
  CHECK_NOTHROW(loadRulesJsonText(
      reg, R"([{"name":"j3","backend":"gf2","lhs":"j ; j ; j","rhs":"id1"},
               {"name":"jxj","backend":"gf2","lhs":"j ; x ; j","rhs":"x"}])",
      indep, 16));
  // ... but the non-structural mobit equation is rejected by the loader
  try {
    loadRuleFile(reg, dataDir() + "/rules/mobit.rules.json", indep, 16);
    FAIL("expected SemanticMismatch");
  } catch (const CropError& e) {
    CHECK(e.code() == Err::SemanticMismatch);
    CHECK(std::string(e.what()).find("mobit_yb_jj") != std::string::npos);
  }
}

TEST_CASE("shipped scripts replay") {
  struct Case {
    const char* script;
    const char* sig;
  };
  for (const Case c : {Case{"sw.json", "mobit"}, Case{"cl_example.json", "x"},
                       Case{"conj.json", "mobit"}, Case{"mobit_symm.json", "mobit"}}) {
    CAPTURE(c.script);
    Signature sig = loadSig(c.sig);
    Registry reg = loadRegistry(sig);
    ProofScript script = scriptFromJsonFile(dataDir() + "/scripts/" + std::string(c.script), sig);
    CheckResult res = checkProof(script, reg, sig);
    if (!res.accepted) MESSAGE(res.message);
    CHECK(res.accepted);
    CHECK(res.trace.size() == script.steps.size() + 1);
  }
}

TEST_CASE("accepted proofs never outrun semantics") {
  Signature sig = loadSig("mobit");
  Registry reg = loadRegistry(sig);
  Backend gf(BackendKind::Gf2);
  for (const char* name : {"sw.json", "conj.json", "mobit_symm.json"}) {
    ProofScript script = scriptFromJsonFile(dataDir() + "/scripts/" + std::string(name), sig);
    CheckResult res = checkProof(script, reg, sig);
    REQUIRE(res.accepted);
    Value end = evalCtrl(script.rhs, gf, sig);
    for (const auto& t : res.trace) CHECK(gf.equal(evalCtrl(t, gf, sig), end));
  }
}

TEST_CASE("a wrong path is rejected at that step") {
  Signature sig = loadSig("mobit");
  Registry reg = loadRegistry(sig);
  ProofScript script = scriptFromJsonFile(dataDir() + "/scripts/conj.json", sig);
  script.steps[1].path = {0};
  CheckResult res = checkProof(script, reg, sig);
  CHECK_FALSE(res.accepted);
  CHECK(res.failingStep == 1);
}

TEST_CASE("search finds the shipped derivations and validates them") {
  Signature x = loadSig("x");
  Registry regX = loadRegistry(x);
  ProofScript cl = scriptFromJsonFile(dataDir() + "/scripts/cl_example.json", x);
  SearchResult res = searchEquiv(cl.lhs, cl.rhs, regX, x, 4, 60.0);
  REQUIRE(res.kind == SearchResult::Kind::Found);
  CHECK(res.script.steps.size() <= 4);
  CHECK(checkProof(res.script, regX, x).accepted);
}

TEST_CASE("search returns a counterexample for inequivalent terms") {
  Registry reg = coreRegistry();
  SearchResult res =
      searchEquiv(parseCtrl("c1[x]", X), parseCtrl("id2", X), reg, X, 4, 10.0);
  CHECK(res.kind == SearchResult::Kind::Counterexample);
  CHECK(res.detail.find("perm") != std::string::npos);
}

TEST_CASE("search reports exhaustion distinctly") {
  Registry reg = coreRegistry();
  // equivalent pair that needs more depth than allowed
  CtrlPtr a = parseCtrl("c0[x] ; c1[x] ; c0[x] ; c1[x]", X);
  CtrlPtr b = parseCtrl("id1 + id1", X);
  SearchResult res = searchEquiv(a, b, reg, X, 1, 10.0);
  CHECK(res.kind == SearchResult::Kind::Exhausted);
}

TEST_CASE("euler extraction reproduces the unitary") {
  std::mt19937_64 rng(81);
  Signature q = loadSig("quantum");
  Backend cx(BackendKind::Cx);
  for (int trial = 0; trial < 200; ++trial) {
    double a1 = 2.0 * M_PI * double(rng() % 100000) / 100000.0;
    double a2 = 2.0 * M_PI * double(rng() % 100000) / 100000.0;
    auto b = eulerAngles(a1, a2);
    CtrlPtr lhs = mkSeq({mkGen("h"), mkGen("z", {a1}), mkGen("h"), mkGen("z", {a2}), mkGen("h")});
    CtrlPtr rhs = mkSeq({mkPar(mkGen("phase", {b[0]}), mkIdentity(1)), mkGen("z", {b[1]}),
                         mkGen("h"), mkGen("z", {b[2]}), mkGen("h"), mkGen("z", {b[3]})});
    CHECK(cx.equal(evalCtrl(lhs, cx, q), evalCtrl(rhs, cx, q)));
  }
  // degenerate branch: diagonal unitary
  auto b = eulerAngles(0.0, 0.0);
  CHECK(b[2] == doctest::Approx(0.0));
}

TEST_CASE("parameterized rules match exactly and compute sums") {
  Signature q = loadSig("quantum");
  Registry reg = loadRegistry(q);
  Backend cx(BackendKind::Cx);

  CtrlPtr t = parseCtrl("z(1.0) ; z(0.5)", q);
  CtrlPtr got = applyRule(t, reg.require("z_sum"), true, {}, q);
  CHECK(equalTerms(got, mkGen("z", {1.5})));

  // euler left-to-right rewrites the five-gate pattern
  CtrlPtr five = parseCtrl("h ; z(1.0) ; h ; z(0.25) ; h", q);
  CtrlPtr reduced = applyRule(five, reg.require("euler"), true, {}, q);
  CHECK(cx.equal(evalCtrl(five, cx, q), evalCtrl(reduced, cx, q)));

  // C1 of a phase is a Z rotation (the final quantum quotient)
  CtrlPtr cphase = parseCtrl("c1[phase(0.75)]", q);
  CtrlPtr z = applyRule(cphase, reg.require("cz_phase"), true, {}, q);
  CHECK(equalTerms(z, mkGen("z", {0.75})));
  CHECK(cx.equal(evalCtrl(cphase, cx, q), evalCtrl(z, cx, q)));
}

TEST_CASE("control equation sweeps pass on all four backends") {
  struct Case {
    const char* sig;
    BackendKind backend;
  };
  for (const Case c : {Case{"x", BackendKind::Perm}, Case{"mobit", BackendKind::Gf2},
                       Case{"pi", BackendKind::Cyclo}, Case{"quantum", BackendKind::Cx}}) {
    Signature sig = loadSig(c.sig);
    Registry reg = loadRegistry(sig);
    SweepReport r = controlEquationSweep(reg, sig, c.backend, 2, 20, 1234);
    for (const auto& f : r.failures) MESSAGE(f);
    CHECK(r.ok());
  }
}
