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

#include <numeric>
#include <random>

#include "cropkit/axioms.hpp"
#include "cropkit/dsl.hpp"
#include "cropkit/rewrite.hpp"
#include "cropkit/translate.hpp"

using namespace cropkit;

namespace {

const Signature& X = Signature::x();

Signature mobitSig() {
  Signature m;
  m.name = "mobit";
  m.generators = {{"x", 1, 0}, {"j", 1, 0}};
  m.involution = "x";
  m.backendKeys = {{"x", {{"perm", "x"}, {"gf2", "x"}}}, {"j", {{"gf2", "j"}}}};
  m.validate();
  return m;
}

}  // namespace

TEST_CASE("alpha on basic circuits") {
  CHECK(alpha(parseCtrl("x", X)) == gamma(1, 1));
  CHECK(alpha(parseCtrl("c1[x]", X)) == Permutation(std::vector<std::uint32_t>{0, 1, 3, 2}));
  // the section-3 example: C^{10}_1(x) permutes 1011 and 1001
  Permutation p = alpha(multiCtrl("10", "1", mkNot(), X));
  std::vector<std::uint32_t> expect(16);
  std::iota(expect.begin(), expect.end(), 0u);
  std::swap(expect[11], expect[9]);
  CHECK(p == Permutation(std::move(expect)));
}

TEST_CASE("beta emits the expected words") {
  CHECK(equalTerms(beta(Permutation(std::vector<std::uint32_t>{0, 1, 3, 2})),
                   mkCtrl(1, mkNot())));
  CHECK(equalTerms(beta(Permutation::identity(8)), mkIdentity(3)));
  // s_{2,2} factors as theta_{2,1} theta_{2,2} theta_{2,1}
  CtrlPtr t = beta(tensorSym(2, 2));
  CtrlPtr theta21 = thetaTerm(2, 1);
  CtrlPtr theta22 = thetaTerm(2, 2);
  CHECK(equalTerms(t, mkSeq(theta21, mkSeq(theta22, theta21))));
  CHECK(alpha(t) == tensorSym(2, 2));
  CHECK_THROWS_AS(beta(Permutation::identity(3)), CropError);
}

TEST_CASE("alpha(beta(p)) is the identity on [2^n]") {
  for (int n = 0; n <= 2; ++n) {
    std::uint64_t size = std::uint64_t(1) << n;
    std::vector<std::uint32_t> base(size);
    std::iota(base.begin(), base.end(), 0u);
    do {
      Permutation p{std::vector<std::uint32_t>(base)};
      CHECK(alpha(beta(p)) == p);
    } while (std::next_permutation(base.begin(), base.end()));
  }
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Permutation p = randomPermutation(rng, 8);
    CHECK(alpha(beta(p)) == p);
  }
}

TEST_CASE("a-translation table lines") {
  Signature m = mobitSig();
  CHECK(equalSums(aTranslate(parseCtrl("x", m), m), mkGamma(1, 1)));
  CHECK(equalSums(aTranslate(parseCtrl("id2", m), m), mkIdentityD(4)));
  CHECK(equalSums(aTranslate(parseCtrl("c1[j]", m), m),
                  mkDirectSum(mkIdentityD(2), mkGenTilde("j"))));
  CHECK(equalSums(aTranslate(parseCtrl("c0[j]", m), m),
                  mkDirectSum(mkGenTilde("j"), mkIdentityD(2))));
}

TEST_CASE("expand_tensor matches the kronecker oracle") {
  Signature m = mobitSig();
  Backend pe(BackendKind::Perm);
  SumPtr xt = mkGenTilde("x");
  SumPtr expanded = expandTensor(xt, mkIdentityD(2), m);
  CHECK(std::get<Permutation>(evalSum(expanded, pe, m)) == tensor(gamma(1, 1), Permutation::identity(2)));

  CHECK(equalSums(expandTensor(mkIdentityD(1), xt, m), xt));

  SumPtr both = expandTensor(xt, xt, m);
  CHECK(std::get<Permutation>(evalSum(both, pe, m)) ==
        Permutation(std::vector<std::uint32_t>{3, 2, 1, 0}));

  std::mt19937_64 rng(23);
  Backend gf(BackendKind::Gf2);
  for (int trial = 0; trial < 30; ++trial) {
    CtrlPtr f = randomTerm(rng, m, "gf2", 2);
    CtrlPtr g = randomTerm(rng, m, "gf2", 2);
    SumPtr sf = aTranslate(f, m), sg = aTranslate(g, m);
    Value expect = gf.kronV(evalSum(sf, gf, m), evalSum(sg, gf, m));
    CHECK(gf.equal(evalSum(expandTensor(sf, sg, m), gf, m), expect));
  }
}

TEST_CASE("b-translation table lines and roundtrips") {
  Signature m = mobitSig();
  Backend gf(BackendKind::Gf2);
  Backend pe(BackendKind::Perm);

  CHECK(equalTerms(bTranslate(mkDirectSum(mkIdentityD(2), mkGenTilde("j")), m),
                   mkCtrl(1, mkGen("j"))));
  CHECK(equalTerms(bTranslate(mkDirectSum(mkGenTilde("j"), mkIdentityD(2)), m),
                   mkCtrl(0, mkGen("j"))));

  // gamma_{2,2} through beta has permutation semantics [2,3,0,1]
  CtrlPtr g22 = bTranslate(parseSum("gamma 2 2", m), m);
  CHECK(std::get<Permutation>(evalCtrl(g22, pe, m)) ==
        Permutation(std::vector<std::uint32_t>{2, 3, 0, 1}));

  // DirectSum(f, f) with equal blocks becomes id1 + B(f)
  SumPtr f = parseSum("j~ ; x~", m);
  CtrlPtr dup = bTranslate(mkDirectSum(f, f), m);
  CHECK(dup->kind == CtrlKind::Par);
  CHECK(dup->a->kind == CtrlKind::Identity);

  CHECK_THROWS_AS(bTranslate(parseSum("gamma 2 1", m), m), CropError);

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    CtrlPtr t = randomTerm(rng, m, "gf2", 3);
    SumPtr s = aTranslate(t, m);
    CtrlPtr back = bTranslate(s, m);
    CHECK(gf.equal(evalCtrl(t, gf, m), evalCtrl(back, gf, m)));
  }
  for (int trial = 0; trial < 60; ++trial) {
    CtrlPtr t = randomTerm(rng, X, "perm", 3);
    CtrlPtr back = bTranslate(aTranslate(t, X), X);
    CHECK(pe.equal(evalCtrl(t, pe, X), evalCtrl(back, pe, X)));
  }
}

TEST_CASE("b-translation places generators under offset identities") {
  Signature m = mobitSig();
  Backend gf(BackendKind::Gf2);
  // id3 (+) j~ (+) id3 has dimension 8 and needs the sigma conjugation
  SumPtr s = mkDirectSum(mkIdentityD(3), mkDirectSum(mkGenTilde("j"), mkIdentityD(3)));
  CtrlPtr t = bTranslate(s, m);
  CHECK(gf.equal(evalCtrl(t, gf, m), evalSum(s, gf, m)));
}

TEST_CASE("zeta definition and inductive formula") {
  Gf2Matrix j(2);
  j.set(0, 0, true);
  j.set(0, 1, true);
  j.set(1, 0, true);
  CHECK(zeta(1, 0) == j);

  // zeta^3 = id under conjugation invariance
  for (int n = 1; n <= 5; ++n) {
    for (std::uint64_t i = 0; i + 2 <= (std::uint64_t(1) << n); ++i) {
      Gf2Matrix z = zeta(n, i);
      CHECK(mul(z, mul(z, z)).isIdentity());
    }
  }

  // inductive formulation against the direct conjugation definition (n >= 2)
  for (int n = 2; n <= 6; ++n) {
    std::uint64_t half = std::uint64_t(1) << (n - 1);
    std::uint64_t size = std::uint64_t(1) << n;
    for (std::uint64_t i = 0; i + 2 <= size; ++i) {
      Gf2Matrix expected = zeta(n, i);
      Gf2Matrix got(1);
      if (i < half - 1) {
        got = blockDiag(zeta(n - 1, i), Gf2Matrix::identity(half));
      } else if (i == half - 1) {
        Gf2Matrix mid = blockDiag(Gf2Matrix::identity(half), j);
        if (half >= 2) mid = blockDiag(mid, Gf2Matrix::identity(half - 2));
        got = mul(Gf2Matrix::fromPermutation(tensorSym(half, 2)),
                  mul(mid, Gf2Matrix::fromPermutation(tensorSym(2, half))));
      } else {
        std::uint64_t k = size - 2 - i;
        Gf2Matrix th = Gf2Matrix::fromPermutation(grayTransposition(n - 1, k));
        got = blockDiag(Gf2Matrix::identity(half), mul(th, mul(zeta(n - 1, k), th)));
      }
      CHECK(got == expected);
    }
  }
}

TEST_CASE("b_j maps letters to controlled gates") {
  Signature m = mobitSig();
  Backend gf(BackendKind::Gf2);

  GrayWord w{2, {{GrayLetterKind::Theta, 2}}};
  CHECK(equalTerms(bJ(w, m), multiCtrl("1", "", mkNot(), m)));

  // zeta_{1,0}: ascending flip so plain j
  GrayWord z10{1, {{GrayLetterKind::Zeta, 0}}};
  CHECK(equalTerms(bJ(z10, m), mkGen("j")));

  // zeta_{2,2}: 11 > 10 lexicographically so j^2
  GrayWord z22{2, {{GrayLetterKind::Zeta, 2}}};
  CHECK(equalTerms(bJ(z22, m), multiCtrl("1", "", mkSeq(mkGen("j"), mkGen("j")), m)));

  // a_j(b_j(w)) equals the word's matrix product
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    GrayWord w3{3, {}};
    std::uint64_t letters = 1 + rng() % 6;
    for (std::uint64_t k = 0; k < letters; ++k) {
      GrayLetterKind kind = static_cast<GrayLetterKind>(rng() % 3);
      w3.letters.push_back({kind, rng() % 7});
    }
    CHECK(aJ(bJ(w3, m), m) == grayWordMatrix(w3));
  }
}

TEST_CASE("factor_gl2 roundtrips") {
  CHECK(factorGl2(Gf2Matrix::identity(4)).letters.empty());

  Gf2Matrix x(2);
  x.set(0, 1, true);
  x.set(1, 0, true);
  GrayWord wx = factorGl2(x);
  CHECK(wx.letters.size() == 1);
  CHECK(wx.letters[0].kind == GrayLetterKind::Theta);
  CHECK(wx.letters[0].i == 0);

  std::mt19937_64 rng(41);
  Signature m = mobitSig();
  for (int trial = 0; trial < 40; ++trial) {
    Gf2Matrix a(4);
    do {
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) a.set(r, c, rng() & 1);
    } while (!a.isInvertible());
    GrayWord w = factorGl2(a);
    CHECK(grayWordMatrix(w) == a);
    CHECK(aJ(bJ(w, m), m) == a);
  }
  CHECK_THROWS_AS(factorGl2(Gf2Matrix(4)), CropError);
}

TEST_CASE("beta well-definedness witnesses") {
  // images of theta satisfy involution, Yang-Baxter, and far commutation
  for (int n = 1; n <= 4; ++n) {
    std::uint64_t size = std::uint64_t(1) << n;
    std::vector<Permutation> thetas;
    for (std::uint64_t i = 0; i + 2 <= size; ++i)
      thetas.push_back(alpha(thetaTerm(n, i)));
    for (size_t i = 0; i < thetas.size(); ++i) {
      CHECK(compose(thetas[i], thetas[i]) == Permutation::identity(size));
      if (i + 1 < thetas.size()) {
        Permutation ab = compose(thetas[i], thetas[i + 1]);
        CHECK(compose(ab, compose(ab, ab)) == Permutation::identity(size));
      }
      for (size_t jj = i + 2; jj < thetas.size(); ++jj)
        CHECK(compose(thetas[i], thetas[jj]) == compose(thetas[jj], thetas[i]));
    }
  }
}

TEST_CASE("gray word json roundtrip") {
  GrayWord w{3, {{GrayLetterKind::Theta, 1}, {GrayLetterKind::Zeta, 4}, {GrayLetterKind::ZetaInv, 0}}};
  GrayWord back = grayWordFromJsonText(grayWordToJson(w));
  CHECK(back.n == w.n);
  REQUIRE(back.letters.size() == w.letters.size());
  for (size_t i = 0; i < w.letters.size(); ++i) {
    CHECK(back.letters[i].kind == w.letters[i].kind);
    CHECK(back.letters[i].i == w.letters[i].i);
  }
}
