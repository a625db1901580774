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
#include "cropkit/term.hpp"
#include "cropkit/translate.hpp"

using namespace cropkit;

namespace {

const Signature& X = Signature::x();

Signature quantumSig() {
  Signature s;
  s.name = "quantum";
  s.generators = {{"x", 1, 0}, {"h", 1, 0}, {"z", 1, 1}, {"phase", 0, 1}};
  s.involution = "x";
  s.backendKeys = {{"x", {{"perm", "x"}, {"complex", "x"}}},
                   {"h", {{"complex", "h"}}},
                   {"z", {{"complex", "z"}}},
                   {"phase", {{"complex", "phase"}}}};
  s.validate();
  return s;
}

}  // namespace

TEST_CASE("wire counts") {
  CHECK(wires(mkCtrl(1, mkNot()), X) == 2);
  CHECK(wires(mkPar(mkIdentity(2), mkSwap(1, 1)), X) == 4);
  try {
    wires(mkSeq(mkIdentity(1), mkIdentity(2)), X);
    FAIL("expected ArityMismatch");
  } catch (const CropError& e) {
    CHECK(e.code() == Err::ArityMismatch);
  }
}

TEST_CASE("arity error reports the offending path") {
  // the bad Seq sits under a control
  CtrlPtr bad = mkCtrl(1, mkSeq(mkNot(), mkIdentity(2)));
  try {
    wires(bad, X);
    FAIL("expected ArityMismatch");
  } catch (const CropError& e) {
    CHECK(e.code() == Err::ArityMismatch);
    CHECK(e.path() == Path{0});
  }
}

TEST_CASE("multi_ctrl shapes") {
  CtrlPtr f = mkNot();
  CHECK(equalTerms(multiCtrl("", "", f, X), f));
  CHECK(equalTerms(multiCtrl("1", "", mkNot(), X), mkCtrl(1, mkNot())));

  // the displayed definition of C^{10}_0(x): swap conjugation around c1[c0[c0[x]]]
  CtrlPtr t = multiCtrl("10", "0", mkNot(), X);
  CtrlPtr nested = mkCtrl(1, mkCtrl(0, mkCtrl(0, mkNot())));
  CtrlPtr conj = mkPar(mkIdentity(2), mkSwap(1, 1));
  CHECK(equalTerms(t, mkSeq(conj, mkSeq(nested, conj))));
  CHECK(wires(t, X) == 4);
}

TEST_CASE("multi_ctrl wire arithmetic") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    CtrlPtr f = randomTerm(rng, X, "perm", 2);
    int n = wires(f, X);
    std::string w, wp;
    for (std::uint64_t k = rng() % 3; k-- > 0;) w.push_back(rng() % 2 ? '1' : '0');
    for (std::uint64_t k = rng() % 3; k-- > 0;) wp.push_back(rng() % 2 ? '1' : '0');
    CHECK(wires(multiCtrl(w, wp, f, X), X) ==
          static_cast<int>(w.size() + wp.size()) + n);
  }
}

TEST_CASE("parse the spec examples") {
  CHECK(equalTerms(parseCtrl("c1[x]", X), mkCtrl(1, mkNot())));
  CHECK(equalTerms(parseCtrl("c1[x] ; c0[x]", X),
                   mkSeq(mkCtrl(1, mkNot()), mkCtrl(0, mkNot()))));
  Signature q = quantumSig();
  CtrlPtr t = parseCtrl("id1 + z(3.14)", q);
  CHECK(equalTerms(t, mkPar(mkIdentity(1), mkGen("z", {3.14}))));
  CHECK_THROWS_AS(parseCtrl("c1[", X), CropError);
  CHECK_THROWS_AS(parseCtrl("id1 ; ; x", X), CropError);
}

TEST_CASE("ctrl sugar builds the multi-controlled form") {
  CtrlPtr sugar = parseCtrl("ctrl[10_0](x)", X);
  CHECK(equalTerms(sugar, multiCtrl("10", "0", mkNot(), X)));
  CHECK(equalTerms(parseCtrl("ctrl[_](x)", X), mkNot()));
}

TEST_CASE("print then parse is the identity") {
  std::mt19937_64 rng(99);
  Signature q = quantumSig();
  for (int trial = 0; trial < 200; ++trial) {
    CtrlPtr t = randomTerm(rng, q, "complex", 3);
    std::string text = printCtrl(t);
    CtrlPtr back = parseCtrl(text, q);
    CHECK(equalTerms(back, t));
    CHECK(wires(back, q) == wires(t, q));
  }
}

TEST_CASE("sum term parsing and dims") {
  Signature m;
  m.name = "mobit";
  m.generators = {{"x", 1, 0}, {"j", 1, 0}};
  m.involution = "x";
  m.backendKeys = {{"x", {{"gf2", "x"}}}, {"j", {{"gf2", "j"}}}};
  m.validate();

  SumPtr g = parseSum("gamma 1 1", m);
  CHECK(g->kind == SumKind::Gamma);
  CHECK(dim(g, m) == 2);

  SumPtr s = parseSum("id@2 (+) x~", m);
  CHECK(s->kind == SumKind::DirectSum);
  CHECK(dim(s, m) == 4);

  SumPtr seq = parseSum("x~ ; x~", m);
  CHECK(dim(seq, m) == 2);

  CHECK(equalSums(parseSum(printSum(s), m), s));
  CHECK_THROWS_AS(dim(parseSum("x~ ; id@4", m), m), CropError);
}

TEST_CASE("subterm addressing") {
  CtrlPtr t = parseCtrl("c1[x] ; (id1 + x)", X);
  CHECK(equalTerms(subtermAt(t, {0}), mkCtrl(1, mkNot())));
  CHECK(equalTerms(subtermAt(t, {0, 0}), mkNot()));
  CHECK_THROWS_AS(subtermAt(t, {0, 0, 0}), CropError);
}

TEST_CASE("signature invariants") {
  Signature bad;
  bad.name = "bad";
  bad.generators = {{"x", 2, 0}};
  bad.involution = "x";
  CHECK_THROWS_AS(bad.validate(), CropError);

  Signature dup;
  dup.name = "dup";
  dup.generators = {{"x", 1, 0}, {"x", 1, 0}};
  dup.involution = "x";
  CHECK_THROWS_AS(dup.validate(), CropError);
}
