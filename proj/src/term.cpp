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

#include "cropkit/term.hpp"

#include <sstream>

namespace cropkit {

std::string pathToString(const Path& p) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ']';
  return os.str();
}

CtrlPtr mkIdentity(int wires) {
  if (wires < 0) fail(Err::InvalidArgument, "identity: negative wire count");
  auto t = std::make_shared<CtrlTerm>();
  t->kind = CtrlKind::Identity;
  t->idWires = wires;
  return t;
}

CtrlPtr mkGen(const std::string& name, std::vector<double> params) {
  if (name == "x" && params.empty()) return mkNot();
  auto t = std::make_shared<CtrlTerm>();
  t->kind = CtrlKind::Gen;
  t->name = name;
  t->params = std::move(params);
  return t;
}

CtrlPtr mkNot() {
  auto t = std::make_shared<CtrlTerm>();
  t->kind = CtrlKind::NotGate;
  return t;
}

CtrlPtr mkSwap(int m, int n) {
  if (m < 0 || n < 0) fail(Err::InvalidArgument, "swap: negative block size");
  auto t = std::make_shared<CtrlTerm>();
  t->kind = CtrlKind::Swap;
  t->swapTop = m;
  t->swapBot = n;
  return t;
}

CtrlPtr mkSeq(CtrlPtr l, CtrlPtr r) {
  auto t = std::make_shared<CtrlTerm>();
  t->kind = CtrlKind::Seq;
  t->a = std::move(l);
  t->b = std::move(r);
  return t;
}

CtrlPtr mkPar(CtrlPtr top, CtrlPtr bottom) {
  auto t = std::make_shared<CtrlTerm>();
  t->kind = CtrlKind::Par;
  t->a = std::move(top);
  t->b = std::move(bottom);
  return t;
}

CtrlPtr mkCtrl(int polarity, CtrlPtr body) {
  if (polarity != 0 && polarity != 1) fail(Err::InvalidArgument, "control polarity must be 0 or 1");
  auto t = std::make_shared<CtrlTerm>();
  t->kind = CtrlKind::Ctrl;
  t->polarity = polarity;
  t->a = std::move(body);
  return t;
}

CtrlPtr mkSeq(const std::vector<CtrlPtr>& factors) {
  if (factors.empty()) return nullptr;
  CtrlPtr acc = factors.back();
  for (size_t i = factors.size() - 1; i-- > 0;) acc = mkSeq(factors[i], acc);
  return acc;
}

namespace {

int wiresImpl(const CtrlPtr& t, const Signature& sig, Path& here) {
  switch (t->kind) {
    case CtrlKind::Identity:
      return t->idWires;
    case CtrlKind::NotGate:
      return 1;
    case CtrlKind::Gen: {
      const GenDecl* d = sig.find(t->name);
      if (!d)
        fail(Err::UnknownGenerator, "unknown generator '" + t->name + "' in signature " + sig.name,
             here);
      if (static_cast<int>(t->params.size()) != d->realParams)
        fail(Err::ArityMismatch,
             "generator '" + t->name + "' takes " + std::to_string(d->realParams) + " parameter(s)",
             here);
      return d->wires;
    }
    case CtrlKind::Swap:
      return t->swapTop + t->swapBot;
    case CtrlKind::Seq: {
      here.push_back(0);
      int l = wiresImpl(t->a, sig, here);
      here.back() = 1;
      int r = wiresImpl(t->b, sig, here);
      here.pop_back();
      if (l != r)
        fail(Err::ArityMismatch,
             "sequential composition of " + std::to_string(l) + " and " + std::to_string(r) +
                 " wires",
             here);
      return l;
    }
    case CtrlKind::Par: {
      here.push_back(0);
      int l = wiresImpl(t->a, sig, here);
      here.back() = 1;
      int r = wiresImpl(t->b, sig, here);
      here.pop_back();
      return l + r;
    }
    case CtrlKind::Ctrl: {
      here.push_back(0);
      int body = wiresImpl(t->a, sig, here);
      here.pop_back();
      return body + 1;
    }
  }
  fail(Err::InvalidArgument, "corrupt term");
}

}  // namespace

int wires(const CtrlPtr& t, const Signature& sig) {
  Path here;
  return wiresImpl(t, sig, here);
}

bool equalTerms(const CtrlPtr& a, const CtrlPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case CtrlKind::Identity:
      return a->idWires == b->idWires;
    case CtrlKind::NotGate:
      return true;
    case CtrlKind::Gen:
      return a->name == b->name && a->params == b->params;
    case CtrlKind::Swap:
      return a->swapTop == b->swapTop && a->swapBot == b->swapBot;
    case CtrlKind::Seq:
    case CtrlKind::Par:
      return equalTerms(a->a, b->a) && equalTerms(a->b, b->b);
    case CtrlKind::Ctrl:
      return a->polarity == b->polarity && equalTerms(a->a, b->a);
  }
  return false;
}

CtrlPtr subtermAt(const CtrlPtr& t, const Path& p) {
  CtrlPtr cur = t;
  for (size_t i = 0; i < p.size(); ++i) {
    switch (cur->kind) {
      case CtrlKind::Seq:
      case CtrlKind::Par:
        if (p[i] == 0)
          cur = cur->a;
        else if (p[i] == 1)
          cur = cur->b;
        else
          fail(Err::BadPath, "path step out of range", Path(p.begin(), p.begin() + i + 1));
        break;
      case CtrlKind::Ctrl:
        if (p[i] != 0) fail(Err::BadPath, "control has a single child", Path(p.begin(), p.begin() + i + 1));
        cur = cur->a;
        break;
      default:
        fail(Err::BadPath, "path descends into a leaf", Path(p.begin(), p.begin() + i + 1));
    }
  }
  return cur;
}

CtrlPtr multiCtrl(const std::string& w, const std::string& wPrime, CtrlPtr f,
                  const Signature& sig) {
  int n = wires(f, sig);
  for (char c : w)
    if (c != '0' && c != '1') fail(Err::InvalidArgument, "control word must be binary");
  for (char c : wPrime)
    if (c != '0' && c != '1') fail(Err::InvalidArgument, "control word must be binary");

  // Bottom controls first (they sit directly above f inside the nest)...
  CtrlPtr nested = std::move(f);
  for (auto it = wPrime.rbegin(); it != wPrime.rend(); ++it)
    nested = mkCtrl(*it == '1' ? 1 : 0, nested);
  // ...then the top controls, outermost first.
  for (auto it = w.rbegin(); it != w.rend(); ++it) nested = mkCtrl(*it == '1' ? 1 : 0, nested);

  int l = static_cast<int>(wPrime.size());
  int k = static_cast<int>(w.size());
  if (l == 0 || n == 0) return nested;

  // Conjugate so the w' block ends up below the target block.
  CtrlPtr pre = mkSwap(n, l);
  CtrlPtr post = mkSwap(l, n);
  if (k > 0) {
    pre = mkPar(mkIdentity(k), pre);
    post = mkPar(mkIdentity(k), post);
  }
  return mkSeq(pre, mkSeq(nested, post));
}

// --- SumTerm -----------------------------------------------------------------

SumPtr mkIdentityD(std::uint64_t d) {
  if (d == 0) fail(Err::InvalidArgument, "identity dimension must be positive");
  auto s = std::make_shared<SumTerm>();
  s->kind = SumKind::IdentityD;
  s->d = d;
  return s;
}

SumPtr mkGenTilde(const std::string& name, std::vector<double> params) {
  auto s = std::make_shared<SumTerm>();
  s->kind = SumKind::GenTilde;
  s->name = name;
  s->params = std::move(params);
  return s;
}

SumPtr mkGamma(std::uint64_t m, std::uint64_t n) {
  auto s = std::make_shared<SumTerm>();
  s->kind = SumKind::Gamma;
  s->d = m;
  s->d2 = n;
  return s;
}

SumPtr mkSeqS(SumPtr l, SumPtr r) {
  auto s = std::make_shared<SumTerm>();
  s->kind = SumKind::SeqS;
  s->a = std::move(l);
  s->b = std::move(r);
  return s;
}

SumPtr mkDirectSum(SumPtr top, SumPtr bottom) {
  auto s = std::make_shared<SumTerm>();
  s->kind = SumKind::DirectSum;
  s->a = std::move(top);
  s->b = std::move(bottom);
  return s;
}

namespace {

std::uint64_t dimImpl(const SumPtr& s, const Signature& sig, Path& here) {
  switch (s->kind) {
    case SumKind::IdentityD:
      return s->d;
    case SumKind::Gamma:
      return s->d + s->d2;
    case SumKind::GenTilde: {
      const GenDecl* d = sig.find(s->name);
      if (!d)
        fail(Err::UnknownGenerator, "unknown generator '" + s->name + "' in signature " + sig.name,
             here);
      if (static_cast<int>(s->params.size()) != d->realParams)
        fail(Err::ArityMismatch, "generator '" + s->name + "' parameter count mismatch", here);
      return std::uint64_t(1) << d->wires;
    }
    case SumKind::SeqS: {
      here.push_back(0);
      std::uint64_t l = dimImpl(s->a, sig, here);
      here.back() = 1;
      std::uint64_t r = dimImpl(s->b, sig, here);
      here.pop_back();
      if (l != r)
        fail(Err::ArityMismatch,
             "sequential composition of dims " + std::to_string(l) + " and " + std::to_string(r),
             here);
      return l;
    }
    case SumKind::DirectSum: {
      here.push_back(0);
      std::uint64_t l = dimImpl(s->a, sig, here);
      here.back() = 1;
      std::uint64_t r = dimImpl(s->b, sig, here);
      here.pop_back();
      return l + r;
    }
  }
  fail(Err::InvalidArgument, "corrupt sum term");
}

}  // namespace

std::uint64_t dim(const SumPtr& s, const Signature& sig) {
  Path here;
  return dimImpl(s, sig, here);
}

bool equalSums(const SumPtr& a, const SumPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case SumKind::IdentityD:
      return a->d == b->d;
    case SumKind::Gamma:
      return a->d == b->d && a->d2 == b->d2;
    case SumKind::GenTilde:
      return a->name == b->name && a->params == b->params;
    case SumKind::SeqS:
    case SumKind::DirectSum:
      return equalSums(a->a, b->a) && equalSums(a->b, b->b);
  }
  return false;
}

bool containsGen(const SumPtr& s) {
  switch (s->kind) {
    case SumKind::GenTilde:
      return true;
    case SumKind::SeqS:
    case SumKind::DirectSum:
      return containsGen(s->a) || containsGen(s->b);
    default:
      return false;
  }
}

}  // namespace cropkit
