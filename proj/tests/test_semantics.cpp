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

#include "cropkit/dsl.hpp"
#include "cropkit/rewrite.hpp"
#include "cropkit/semantics.hpp"
#include "cropkit/translate.hpp"

using namespace cropkit;

namespace {

const Signature& X = Signature::x();

Signature mobitSig() {
  Signature m;
  m.name = "mobit";
  m.generators = {{"x", 1, 0}, {"j", 1, 0}};
  m.involution = "x";
  m.backendKeys = {{"x", {{"perm", "x"}, {"gf2", "x"}, {"cyclo", "x"}, {"complex", "x"}}},
                   {"j", {{"gf2", "j"}}}};
  m.validate();
  return m;
}

Signature piSig() {
  Signature s;
  s.name = "pi";
  s.generators = {{"x", 1, 0}, {"v", 1, 0}, {"s", 1, 0}, {"k", 1, 0}, {"omega", 0, 0}};
  s.involution = "x";
  s.backendKeys = {{"x", {{"perm", "x"}, {"gf2", "x"}, {"cyclo", "x"}, {"complex", "x"}}},
                   {"v", {{"cyclo", "v"}, {"complex", "v"}}},
                   {"s", {{"cyclo", "s"}, {"complex", "s"}}},
                   {"k", {{"cyclo", "k"}, {"complex", "k"}}},
                   {"omega", {{"cyclo", "omega"}, {"complex", "omega"}}}};
  s.validate();
  return s;
}

Signature quantumSig() {
  Signature s;
  s.name = "quantum";
  s.generators = {{"x", 1, 0}, {"h", 1, 0}, {"z", 1, 1}, {"phase", 0, 1}};
  s.involution = "x";
  s.backendKeys = {{"x", {{"perm", "x"}, {"cyclo", "x"}, {"complex", "x"}}},
                   {"h", {{"cyclo", "h"}, {"complex", "h"}}},
                   {"z", {{"complex", "z"}}},
                   {"phase", {{"complex", "phase"}}}};
  s.validate();
  return s;
}

Permutation evalPerm(const std::string& text, const Signature& sig = X) {
  return std::get<Permutation>(evalCtrl(parseCtrl(text, sig), Backend(BackendKind::Perm), sig));
}

}  // namespace

TEST_CASE("controls select diagonal blocks") {
  CHECK(evalPerm("c1[x]") == Permutation(std::vector<std::uint32_t>{0, 1, 3, 2}));
  CHECK(evalPerm("c0[x]") == Permutation(std::vector<std::uint32_t>{1, 0, 2, 3}));
  CHECK(evalPerm("id3") == Permutation::identity(8));
  CHECK(evalPerm("swap 1 1") == tensorSym(2, 2));
  CHECK(evalPerm("swap 1 2") == tensorSym(2, 4));
}

TEST_CASE("V squares to NOT on the complex and cyclotomic backends") {
  Signature pi = piSig();
  Backend cx(BackendKind::Cx);
  Value vv = evalCtrl(parseCtrl("v ; v", pi), cx, pi);
  Value x = evalCtrl(parseCtrl("x", pi), cx, pi);
  CHECK(cx.equal(vv, x));

  Backend cy(BackendKind::Cyclo);
  CHECK(cy.equal(evalCtrl(parseCtrl("v ; v", pi), cy, pi), evalCtrl(parseCtrl("x", pi), cy, pi)));
  CHECK(cy.equal(evalCtrl(parseCtrl("v ; v ; v ; v", pi), cy, pi), cy.identity(2)));
}

TEST_CASE("clifford+T exact identities") {
  Signature pi = piSig();
  Backend cy(BackendKind::Cyclo);
  // omega^8 = 1 (scalars are 1x1 matrices)
  Value w8 = evalCtrl(parseCtrl("omega ; omega ; omega ; omega ; omega ; omega ; omega ; omega", pi),
                      cy, pi);
  CHECK(cy.equal(w8, cy.identity(1)));
  // SVS = VSV
  CHECK(cy.equal(evalCtrl(parseCtrl("s ; v ; s", pi), cy, pi),
                 evalCtrl(parseCtrl("v ; s ; v", pi), cy, pi)));
  // S = C1(omega^2)
  CHECK(cy.equal(evalCtrl(parseCtrl("c1[omega ; omega]", pi), cy, pi),
                 evalCtrl(parseCtrl("s", pi), cy, pi)));
  // K = (1-i)/sqrt(2) H relates K and H exactly: K;K = (1-i)^2/2 H H = -i id
  Value kk = evalCtrl(parseCtrl("k ; k", pi), cy, pi);
  CycloMatrix expect(2);
  expect.at(0, 0) = CycloEntry{{0, 0, -1, 0}, 0};
  expect.at(1, 1) = CycloEntry{{0, 0, -1, 0}, 0};
  CHECK(cy.equal(kk, Value(expect)));
}

TEST_CASE("scalars are rejected on the permutation backend") {
  Signature pi = piSig();
  CHECK_THROWS_AS(evalCtrl(parseCtrl("omega", pi), Backend(BackendKind::Perm), pi), CropError);
}

TEST_CASE("params rejected on exact backends") {
  Signature q = quantumSig();
  try {
    evalCtrl(parseCtrl("z(1.0)", q), Backend(BackendKind::Cyclo), q);
    FAIL("expected ParamsUnsupported");
  } catch (const CropError& e) {
    CHECK(e.code() == Err::ParamsUnsupported);
  }
  try {
    evalCtrl(parseCtrl("j", X), Backend(BackendKind::Perm), X);
    FAIL("expected UnknownGenerator");
  } catch (const CropError& e) {
    CHECK(e.code() == Err::UnknownGenerator);
  }
}

TEST_CASE("mobit generators over GF(2)") {
  Signature m = mobitSig();
  Backend gf(BackendKind::Gf2);
  Gf2Matrix j = std::get<Gf2Matrix>(evalCtrl(parseCtrl("j", m), gf, m));
  CHECK(j.get(0, 0));
  CHECK(j.get(0, 1));
  CHECK(j.get(1, 0));
  CHECK_FALSE(j.get(1, 1));
  CHECK(std::get<Gf2Matrix>(evalCtrl(parseCtrl("j ; j ; j", m), gf, m)).isIdentity());
  CHECK(gf.equal(evalCtrl(parseCtrl("j ; x ; j", m), gf, m), evalCtrl(parseCtrl("x", m), gf, m)));
  // c1[j] = blockdiag(I2, J)
  Gf2Matrix cj = std::get<Gf2Matrix>(evalCtrl(parseCtrl("c1[j]", m), gf, m));
  CHECK(cj == blockDiag(Gf2Matrix::identity(2), j));
}

TEST_CASE("sum-term evaluation") {
  Signature m = mobitSig();
  Backend pe(BackendKind::Perm);
  CHECK(std::get<Permutation>(evalSum(parseSum("gamma 1 1", m), pe, m)) == gamma(1, 1));
  CHECK(std::get<Permutation>(evalSum(parseSum("id@2 (+) x~", m), pe, m)) ==
        Permutation(std::vector<std::uint32_t>{0, 1, 3, 2}));
  Backend gf(BackendKind::Gf2);
  Gf2Matrix j = std::get<Gf2Matrix>(evalSum(parseSum("j~", m), gf, m));
  CHECK(j.get(0, 1));
}

TEST_CASE("tensor-of-controls law") {
  std::mt19937_64 rng(7);
  Backend pe(BackendKind::Perm);
  for (int trial = 0; trial < 60; ++trial) {
    CtrlPtr f = randomTerm(rng, X, "perm", 2);
    CtrlPtr g = randomTerm(rng, X, "perm", 2);
    int m = wires(f, X), n = wires(g, X);
    CtrlPtr lhs = mkCtrl(1, mkPar(f, g));
    CtrlPtr mid = mkSeq(mkCtrl(1, mkPar(f, mkIdentity(n))), mkCtrl(1, mkPar(mkIdentity(m), g)));
    CtrlPtr rhs = mkSeq(mkPar(mkCtrl(1, f), mkIdentity(n)),
                        mkCtrl(1, mkPar(mkIdentity(m), g)));
    Value a = evalCtrl(lhs, pe, X);
    CHECK(pe.equal(a, evalCtrl(mid, pe, X)));
    CHECK(pe.equal(a, evalCtrl(rhs, pe, X)));
  }
}

TEST_CASE("conjugation law holds semantically on every backend") {
  std::mt19937_64 rng(11);
  struct Case {
    Signature sig;
    BackendKind backend;
  };
  std::vector<Case> cases = {{X, BackendKind::Perm},
                             {mobitSig(), BackendKind::Gf2},
                             {piSig(), BackendKind::Cyclo},
                             {quantumSig(), BackendKind::Cx}};
  for (const auto& c : cases) {
    Backend be(c.backend);
    for (int trial = 0; trial < 40; ++trial) {
      CtrlPtr f = randomTerm(rng, c.sig, backendName(c.backend), 2);
      int n = wires(f, c.sig);
      CtrlPtr g = randomTerm(rng, c.sig, backendName(c.backend), n, 3, n);
      CtrlPtr lhs = mkSeq(mkCtrl(1, mkSeq(f, g)), mkCtrl(0, g));
      CtrlPtr rhs = mkSeq(mkCtrl(1, f), mkPar(mkIdentity(1), g));
      CHECK(be.equal(evalCtrl(lhs, be, c.sig), evalCtrl(rhs, be, c.sig)));
    }
  }
}

TEST_CASE("evaluation commutes with the A translation") {
  std::mt19937_64 rng(13);
  Signature m = mobitSig();
  Backend gf(BackendKind::Gf2);
  Backend pe(BackendKind::Perm);
  for (int trial = 0; trial < 80; ++trial) {
    CtrlPtr t = randomTerm(rng, m, "gf2", 3);
    SumPtr s = aTranslate(t, m);
    CHECK(gf.equal(evalCtrl(t, gf, m), evalSum(s, gf, m)));
  }
  for (int trial = 0; trial < 80; ++trial) {
    CtrlPtr t = randomTerm(rng, X, "perm", 3);
    SumPtr s = aTranslate(t, X);
    CHECK(pe.equal(evalCtrl(t, pe, X), evalSum(s, pe, X)));
  }
}

TEST_CASE("evaluated circuits are unitary") {
  std::mt19937_64 rng(17);
  Signature q = quantumSig();
  for (int trial = 0; trial < 60; ++trial) {
    CtrlPtr t = randomTerm(rng, q, "complex", 3);
    CxMatrix u = std::get<CxMatrix>(evalCtrl(t, Backend(BackendKind::Cx), q));
    CHECK(unitarityDefect(u) <= 1e-9);
  }
  Signature pi = piSig();
  for (int trial = 0; trial < 60; ++trial) {
    CtrlPtr t = randomTerm(rng, pi, "cyclo", 3);
    CycloMatrix u = std::get<CycloMatrix>(evalCtrl(t, Backend(BackendKind::Cyclo), pi));
    CHECK(isUnitaryExact(u));
  }
}

TEST_CASE("cyclotomic entries stay canonical") {
  CycloEntry half = CycloEntry::dyadic(2, 2);  // reduces to 1/2
  CHECK(half.c[0] == 1);
  CHECK(half.log2den == 1);
  CycloEntry r = add(half, half);  // 1
  CHECK(r == CycloEntry::one());
  CycloEntry w = CycloEntry::omegaPow(1);
  CycloEntry w4 = mul(mul(w, w), mul(w, w));
  CycloEntry minusOne = neg(CycloEntry::one());
  CHECK(w4 == minusOne);
  CHECK(mul(w, w.conj()) == CycloEntry::one());
}
