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

#include "cropkit/rewrite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "cropkit/dsl.hpp"

namespace cropkit {

// =============================== normalization ===============================

namespace {

int sliceWires(const NSlice& s) {
  int w = 0;
  for (const auto& a : s) w += a.wires;
  return w;
}

bool isIdAtom(const NAtom& a) { return a.k == NAtom::K::Id; }

bool isIdentitySlice(const NSlice& s) {
  for (const auto& a : s)
    if (!isIdAtom(a)) return false;
  return true;
}

NAtom idAtom(int w) {
  NAtom a;
  a.k = NAtom::K::Id;
  a.idWires = w;
  a.wires = w;
  return a;
}

void pushAtom(NSlice& slice, NAtom atom) {
  if (isIdAtom(atom)) {
    if (atom.idWires == 0) return;
    if (!slice.empty() && isIdAtom(slice.back())) {
      slice.back().idWires += atom.idWires;
      slice.back().wires += atom.idWires;
      return;
    }
  }
  slice.push_back(std::move(atom));
}

// Inserts a normalized term at a parallel position: identity becomes padding,
// single slices splice, multi-slice terms nest as a group.
void pushTermAsAtoms(NSlice& slice, const NTerm& t) {
  if (t.slices.empty()) {
    pushAtom(slice, idAtom(t.wires));
    return;
  }
  if (t.slices.size() == 1) {
    for (const auto& a : t.slices[0]) pushAtom(slice, a);
    return;
  }
  NAtom g;
  g.k = NAtom::K::Group;
  g.sub = std::make_shared<NTerm>(t);
  g.wires = t.wires;
  slice.push_back(std::move(g));
}

void finishSlice(std::vector<NSlice>& out, NSlice slice) {
  if (slice.size() == 1 && slice[0].k == NAtom::K::Group) {
    for (const auto& s : slice[0].sub->slices) out.push_back(s);
    return;
  }
  if (isIdentitySlice(slice)) return;
  out.push_back(std::move(slice));
}

}  // namespace

NTerm normalizeTerm(const CtrlPtr& t, const Signature& sig) {
  switch (t->kind) {
    case CtrlKind::Identity:
      return NTerm{t->idWires, {}};
    case CtrlKind::NotGate: {
      NAtom a;
      a.k = NAtom::K::Not;
      a.wires = 1;
      return NTerm{1, {{a}}};
    }
    case CtrlKind::Gen: {
      const GenDecl& d = sig.require(t->name);
      if (static_cast<int>(t->params.size()) != d.realParams)
        fail(Err::ArityMismatch, "generator '" + t->name + "' parameter count mismatch");
      NAtom a;
      a.k = NAtom::K::Gen;
      a.name = t->name;
      a.params = t->params;
      a.wires = d.wires;
      return NTerm{a.wires, {{a}}};
    }
    case CtrlKind::Swap: {
      if (t->swapTop == 0 || t->swapBot == 0) return NTerm{t->swapTop + t->swapBot, {}};
      NAtom a;
      a.k = NAtom::K::Swap;
      a.swapTop = t->swapTop;
      a.swapBot = t->swapBot;
      a.wires = t->swapTop + t->swapBot;
      return NTerm{a.wires, {{a}}};
    }
    case CtrlKind::Ctrl: {
      NAtom a;
      a.k = NAtom::K::Ctrl;
      a.polarity = t->polarity;
      a.sub = std::make_shared<NTerm>(normalizeTerm(t->a, sig));
      a.wires = a.sub->wires + 1;
      return NTerm{a.wires, {{a}}};
    }
    case CtrlKind::Seq: {
      NTerm l = normalizeTerm(t->a, sig);
      NTerm r = normalizeTerm(t->b, sig);
      if (l.wires != r.wires)
        fail(Err::ArityMismatch, "sequential composition of " + std::to_string(l.wires) + " and " +
                                     std::to_string(r.wires) + " wires");
      NTerm out{l.wires, {}};
      for (auto& s : l.slices) finishSlice(out.slices, std::move(s));
      for (auto& s : r.slices) finishSlice(out.slices, std::move(s));
      return out;
    }
    case CtrlKind::Par: {
      NTerm a = normalizeTerm(t->a, sig);
      NTerm b = normalizeTerm(t->b, sig);
      NSlice slice;
      pushTermAsAtoms(slice, a);
      pushTermAsAtoms(slice, b);
      NTerm out{a.wires + b.wires, {}};
      finishSlice(out.slices, std::move(slice));
      return out;
    }
  }
  fail(Err::InvalidArgument, "corrupt term");
}

namespace {

CtrlPtr atomToTerm(const NAtom& a);

CtrlPtr sliceToTerm(const NSlice& s) {
  CtrlPtr acc = atomToTerm(s.back());
  for (size_t i = s.size() - 1; i-- > 0;) acc = mkPar(atomToTerm(s[i]), acc);
  return acc;
}

CtrlPtr atomToTerm(const NAtom& a) {
  switch (a.k) {
    case NAtom::K::Id:
      return mkIdentity(a.idWires);
    case NAtom::K::Not:
      return mkNot();
    case NAtom::K::Gen:
      return mkGen(a.name, a.params);
    case NAtom::K::Swap:
      return mkSwap(a.swapTop, a.swapBot);
    case NAtom::K::Ctrl:
      return mkCtrl(a.polarity, denormalize(*a.sub));
    case NAtom::K::Group:
      return denormalize(*a.sub);
  }
  fail(Err::InvalidArgument, "corrupt atom");
}

}  // namespace

CtrlPtr denormalize(const NTerm& nt) {
  if (nt.slices.empty()) return mkIdentity(nt.wires);
  CtrlPtr acc = sliceToTerm(nt.slices.back());
  for (size_t i = nt.slices.size() - 1; i-- > 0;) acc = mkSeq(sliceToTerm(nt.slices[i]), acc);
  return acc;
}

CtrlPtr normalizeStructural(const CtrlPtr& t, const Signature& sig) {
  return denormalize(normalizeTerm(t, sig));
}

namespace {

bool equalAtoms(const NAtom& a, const NAtom& b) {
  if (a.k != b.k || a.wires != b.wires) return false;
  switch (a.k) {
    case NAtom::K::Id:
      return a.idWires == b.idWires;
    case NAtom::K::Not:
      return true;
    case NAtom::K::Gen:
      return a.name == b.name && a.params == b.params;
    case NAtom::K::Swap:
      return a.swapTop == b.swapTop && a.swapBot == b.swapBot;
    case NAtom::K::Ctrl:
      return a.polarity == b.polarity && equalN(*a.sub, *b.sub);
    case NAtom::K::Group:
      return equalN(*a.sub, *b.sub);
  }
  return false;
}

}  // namespace

bool equalN(const NTerm& a, const NTerm& b) {
  if (a.wires != b.wires || a.slices.size() != b.slices.size()) return false;
  for (size_t i = 0; i < a.slices.size(); ++i) {
    if (a.slices[i].size() != b.slices[i].size()) return false;
    for (size_t j = 0; j < a.slices[i].size(); ++j)
      if (!equalAtoms(a.slices[i][j], b.slices[i][j])) return false;
  }
  return true;
}

std::string canonicalKey(const NTerm& nt) {
  return std::to_string(nt.wires) + "|" + printCtrl(denormalize(nt));
}

// ================================ matching ====================================

namespace {

struct Bindings {
  std::map<std::string, NTerm> terms;
  std::map<std::string, int> widths;
  std::map<std::string, double> params;
};

NTerm canonicalSegment(std::vector<NAtom> atoms) {
  if (atoms.size() == 1 && atoms[0].k == NAtom::K::Group) return *atoms[0].sub;
  int w = 0;
  bool allId = true;
  for (const auto& a : atoms) {
    w += a.wires;
    allId = allId && isIdAtom(a);
  }
  if (allId) return NTerm{w, {}};
  NSlice merged;
  for (auto& a : atoms) pushAtom(merged, std::move(a));
  return NTerm{w, {merged}};
}

bool bindTerm(Bindings& b, const std::string& name, NTerm value) {
  auto it = b.terms.find(name);
  if (it != b.terms.end()) return equalN(it->second, value);
  b.terms.emplace(name, std::move(value));
  return true;
}

bool bindWidth(Bindings& b, const std::string& var, int value) {
  if (value < 0) return false;
  auto it = b.widths.find(var);
  if (it != b.widths.end()) return it->second == value;
  b.widths.emplace(var, value);
  return true;
}

bool bindParam(Bindings& b, const std::string& var, double value) {
  auto it = b.params.find(var);
  if (it != b.params.end()) return it->second == value;
  b.params.emplace(var, value);
  return true;
}

std::optional<int> evalWireExpr(const WireExpr& e, const Bindings& b) {
  int v = e.offset;
  for (const auto& var : e.vars) {
    auto it = b.widths.find(var);
    if (it == b.widths.end()) return std::nullopt;
    v += it->second;
  }
  return v;
}

double evalParamExpr(const ParamExpr& e, const Bindings& b) {
  switch (e.k) {
    case ParamExpr::K::Const:
      return e.c;
    case ParamExpr::K::Var: {
      auto it = b.params.find(e.var);
      if (it == b.params.end()) fail(Err::BadRule, "unbound parameter variable @" + e.var);
      return it->second;
    }
    case ParamExpr::K::Add:
      return evalParamExpr(e.kids[0], b) + evalParamExpr(e.kids[1], b);
    case ParamExpr::K::Sub:
      return evalParamExpr(e.kids[0], b) - evalParamExpr(e.kids[1], b);
    case ParamExpr::K::Mul:
      return evalParamExpr(e.kids[0], b) * evalParamExpr(e.kids[1], b);
    case ParamExpr::K::Div:
      return evalParamExpr(e.kids[0], b) / evalParamExpr(e.kids[1], b);
    case ParamExpr::K::Mod2pi: {
      double v = std::fmod(evalParamExpr(e.kids[0], b), 2.0 * M_PI);
      if (v < 0) v += 2.0 * M_PI;
      return v;
    }
  }
  fail(Err::BadRule, "corrupt parameter expression");
}

int patternWiresOf(const PTerm& p, const Bindings& b);

int patternAtomWires(const PAtom& p, const Bindings& b) {
  switch (p.k) {
    case PAtom::K::Id: {
      auto v = evalWireExpr(p.width, b);
      if (!v) fail(Err::BadRule, "unresolved identity width");
      return *v;
    }
    case PAtom::K::Not:
      return 1;
    case PAtom::K::Gen:
      return p.genWires;
    case PAtom::K::Swap: {
      auto m = evalWireExpr(p.swapTop, b);
      auto n = evalWireExpr(p.swapBot, b);
      if (!m || !n) fail(Err::BadRule, "unresolved swap width");
      return *m + *n;
    }
    case PAtom::K::Ctrl:
      return 1 + patternWiresOf(*p.sub, b);
    case PAtom::K::Meta: {
      auto it = b.terms.find(p.name);
      if (it == b.terms.end()) fail(Err::BadRule, "unbound metavariable ?" + p.name);
      return it->second.wires;
    }
    case PAtom::K::Nest:
      return patternWiresOf(*p.sub, b);
  }
  fail(Err::BadRule, "corrupt pattern atom");
}

int patternWiresOf(const PTerm& p, const Bindings& b) {
  if (p.elems.empty()) fail(Err::BadRule, "empty pattern");
  const PElem& e = p.elems.front();
  if (e.isSeqMeta) {
    auto it = b.terms.find(e.metaName);
    if (it == b.terms.end()) fail(Err::BadRule, "unbound metavariable ?" + e.metaName);
    return it->second.wires;
  }
  int w = 0;
  for (const auto& a : e.atoms) w += patternAtomWires(a, b);
  return w;
}

bool matchTermExact(const PTerm& pat, const NTerm& term, Bindings& b);

// Matches pattern atoms against slice atoms from (ai, idUsed); backtracking,
// first success wins. cont receives the end position.
bool matchAtoms(const std::vector<PAtom>& pats, size_t pi, const NSlice& atoms, size_t ai,
                int idUsed, Bindings& b,
                const std::function<bool(size_t, int, Bindings&)>& cont) {
  if (pi == pats.size()) return cont(ai, idUsed, b);
  const PAtom& p = pats[pi];
  switch (p.k) {
    case PAtom::K::Meta: {
      if (idUsed != 0) return false;
      for (size_t len = 1; ai + len <= atoms.size(); ++len) {
        Bindings saved = b;
        std::vector<NAtom> seg(atoms.begin() + ai, atoms.begin() + ai + len);
        if (bindTerm(b, p.name, canonicalSegment(std::move(seg))) &&
            matchAtoms(pats, pi + 1, atoms, ai + len, 0, b, cont))
          return true;
        b = std::move(saved);
      }
      return false;
    }
    case PAtom::K::Id: {
      int remaining = 0;
      if (ai < atoms.size() && isIdAtom(atoms[ai])) remaining = atoms[ai].idWires - idUsed;
      auto tryWidth = [&](int v) -> bool {
        Bindings saved = b;
        bool ok;
        if (p.width.vars.size() == 1 && !b.widths.count(p.width.vars[0]))
          ok = bindWidth(b, p.width.vars[0], v - p.width.offset);
        else if (auto known = evalWireExpr(p.width, b))
          ok = (*known == v);
        else
          ok = false;
        if (ok) {
          size_t nai = ai;
          int nidUsed = idUsed;
          if (v > 0) {
            if (v == remaining) {
              nai = ai + 1;
              nidUsed = 0;
            } else {
              nidUsed = idUsed + v;
            }
          }
          if (matchAtoms(pats, pi + 1, atoms, nai, nidUsed, b, cont)) return true;
        }
        b = std::move(saved);
        return false;
      };
      if (auto known = evalWireExpr(p.width, b)) {
        int v = *known;
        if (v < 0) return false;
        if (v == 0) return tryWidth(0);
        return v <= remaining && tryWidth(v);
      }
      for (int v = remaining; v >= 1; --v)
        if (tryWidth(v)) return true;
      return tryWidth(0);
    }
    case PAtom::K::Not: {
      if (idUsed != 0 || ai >= atoms.size() || atoms[ai].k != NAtom::K::Not) return false;
      return matchAtoms(pats, pi + 1, atoms, ai + 1, 0, b, cont);
    }
    case PAtom::K::Gen: {
      if (idUsed != 0 || ai >= atoms.size() || atoms[ai].k != NAtom::K::Gen) return false;
      const NAtom& a = atoms[ai];
      if (a.name != p.name || a.params.size() != p.params.size()) return false;
      Bindings saved = b;
      bool ok = true;
      for (size_t i = 0; ok && i < p.params.size(); ++i) {
        const ParamExpr& pe = p.params[i];
        if (pe.k == ParamExpr::K::Const)
          ok = (pe.c == a.params[i]);
        else if (pe.k == ParamExpr::K::Var)
          ok = bindParam(b, pe.var, a.params[i]);
        else
          ok = false;  // computed parameters cannot be matched against
      }
      if (ok && matchAtoms(pats, pi + 1, atoms, ai + 1, 0, b, cont)) return true;
      b = std::move(saved);
      return false;
    }
    case PAtom::K::Swap: {
      if (idUsed != 0 || ai >= atoms.size() || atoms[ai].k != NAtom::K::Swap) return false;
      Bindings saved = b;
      auto matchWe = [&](const WireExpr& e, int value) {
        if (e.vars.size() == 1 && e.offset == 0 && !b.widths.count(e.vars[0]))
          return bindWidth(b, e.vars[0], value);
        auto known = evalWireExpr(e, b);
        return known && *known == value;
      };
      if (matchWe(p.swapTop, atoms[ai].swapTop) && matchWe(p.swapBot, atoms[ai].swapBot) &&
          matchAtoms(pats, pi + 1, atoms, ai + 1, 0, b, cont))
        return true;
      b = std::move(saved);
      return false;
    }
    case PAtom::K::Ctrl: {
      if (idUsed != 0 || ai >= atoms.size() || atoms[ai].k != NAtom::K::Ctrl) return false;
      if (atoms[ai].polarity != p.polarity) return false;
      Bindings saved = b;
      if (matchTermExact(*p.sub, *atoms[ai].sub, b) &&
          matchAtoms(pats, pi + 1, atoms, ai + 1, 0, b, cont))
        return true;
      b = std::move(saved);
      return false;
    }
    case PAtom::K::Nest: {
      if (idUsed != 0 || ai >= atoms.size() || atoms[ai].k != NAtom::K::Group) return false;
      Bindings saved = b;
      if (matchTermExact(*p.sub, *atoms[ai].sub, b) &&
          matchAtoms(pats, pi + 1, atoms, ai + 1, 0, b, cont))
        return true;
      b = std::move(saved);
      return false;
    }
  }
  return false;
}

bool sliceIsAllIdPattern(const PElem& e) {
  if (e.isSeqMeta) return false;
  for (const auto& a : e.atoms)
    if (a.k != PAtom::K::Id) return false;
  return true;
}

bool matchElemsExact(const std::vector<PElem>& elems, size_t ei, const NTerm& term, size_t si,
                     Bindings& b) {
  if (ei == elems.size()) return si == term.slices.size();
  const PElem& e = elems[ei];
  if (term.slices.empty()) {
    // identity body: only a pure-identity slice pattern can match
    if (elems.size() != 1 || !sliceIsAllIdPattern(e)) return false;
    NSlice virt;
    if (term.wires > 0) virt.push_back(idAtom(term.wires));
    return matchAtoms(e.atoms, 0, virt, 0, 0, b, [&](size_t ai, int idUsed, Bindings&) {
      return ai == virt.size() && idUsed == 0;
    });
  }
  if (e.isSeqMeta) {
    for (size_t len = 1; si + len <= term.slices.size(); ++len) {
      Bindings saved = b;
      NTerm bound{term.wires,
                  std::vector<NSlice>(term.slices.begin() + si, term.slices.begin() + si + len)};
      if (bindTerm(b, e.metaName, std::move(bound)) &&
          matchElemsExact(elems, ei + 1, term, si + len, b))
        return true;
      b = std::move(saved);
    }
    return false;
  }
  if (si >= term.slices.size()) return false;
  const NSlice& slice = term.slices[si];
  Bindings saved = b;
  if (matchAtoms(e.atoms, 0, slice, 0, 0, b, [&](size_t ai, int idUsed, Bindings& bb) {
        if (ai != slice.size() || idUsed != 0) return false;
        return matchElemsExact(elems, ei + 1, term, si + 1, bb);
      }))
    return true;
  b = std::move(saved);
  return false;
}

bool matchTermExact(const PTerm& pat, const NTerm& term, Bindings& b) {
  return matchElemsExact(pat.elems, 0, term, 0, b);
}

// Prefix match over whole slices; every matched slice may carry identity-only
// leftover padding of one uniform width (rewriting under tensor-with-identity).
bool matchElemsPrefix(const std::vector<PElem>& elems, size_t ei,
                      const std::vector<NSlice>& slices, size_t si, int wires, Bindings& b,
                      int& leftover, const std::function<bool(size_t, Bindings&, int)>& cont) {
  if (ei == elems.size()) return cont(si, b, leftover < 0 ? 0 : leftover);
  const PElem& e = elems[ei];
  if (e.isSeqMeta) {
    if (leftover > 0) return false;
    for (size_t len = 1; si + len <= slices.size(); ++len) {
      Bindings saved = b;
      int savedLeftover = leftover;
      leftover = 0;
      NTerm bound{wires, std::vector<NSlice>(slices.begin() + si, slices.begin() + si + len)};
      if (bindTerm(b, e.metaName, std::move(bound)) &&
          matchElemsPrefix(elems, ei + 1, slices, si + len, wires, b, leftover, cont))
        return true;
      b = std::move(saved);
      leftover = savedLeftover;
    }
    return false;
  }
  if (si >= slices.size()) return false;
  const NSlice& slice = slices[si];
  Bindings saved = b;
  int savedLeftover = leftover;
  if (matchAtoms(e.atoms, 0, slice, 0, 0, b, [&](size_t ai, int idUsed, Bindings& bb) {
        int pad = 0;
        size_t k = ai;
        if (idUsed > 0) {
          if (k >= slice.size() || !isIdAtom(slice[k])) return false;
          pad += slice[k].idWires - idUsed;
          ++k;
        }
        for (; k < slice.size(); ++k) {
          if (!isIdAtom(slice[k])) return false;
          pad += slice[k].idWires;
        }
        if (leftover < 0)
          leftover = pad;
        else if (leftover != pad)
          return false;
        return matchElemsPrefix(elems, ei + 1, slices, si + 1, wires, bb, leftover, cont);
      }))
    return true;
  b = std::move(saved);
  leftover = savedLeftover;
  return false;
}

// ============================== rhs construction ==============================

void buildAtoms(const std::vector<PAtom>& pats, const Bindings& b, NSlice& out);

NTerm buildTerm(const PTerm& pat, const Bindings& b, int expectedWires) {
  NTerm out{expectedWires, {}};
  for (const auto& e : pat.elems) {
    if (e.isSeqMeta) {
      auto it = b.terms.find(e.metaName);
      if (it == b.terms.end()) fail(Err::BadRule, "unbound metavariable ?" + e.metaName);
      if (it->second.wires != expectedWires)
        fail(Err::BadRule, "metavariable ?" + e.metaName + " has the wrong wire count");
      for (const auto& s : it->second.slices) out.slices.push_back(s);
      continue;
    }
    NSlice slice;
    buildAtoms(e.atoms, b, slice);
    if (sliceWires(slice) != expectedWires)
      fail(Err::BadRule, "rule side wire count mismatch while instantiating");
    finishSlice(out.slices, std::move(slice));
  }
  return out;
}

void buildAtoms(const std::vector<PAtom>& pats, const Bindings& b, NSlice& out) {
  for (const auto& p : pats) {
    switch (p.k) {
      case PAtom::K::Id: {
        auto v = evalWireExpr(p.width, b);
        if (!v || *v < 0) fail(Err::BadRule, "unresolved identity width in rule");
        pushAtom(out, idAtom(*v));
        break;
      }
      case PAtom::K::Not: {
        NAtom a;
        a.k = NAtom::K::Not;
        a.wires = 1;
        pushAtom(out, std::move(a));
        break;
      }
      case PAtom::K::Gen: {
        NAtom a;
        a.k = NAtom::K::Gen;
        a.name = p.name;
        for (const auto& pe : p.params) a.params.push_back(evalParamExpr(pe, b));
        a.wires = p.genWires;
        pushAtom(out, std::move(a));
        break;
      }
      case PAtom::K::Swap: {
        auto m = evalWireExpr(p.swapTop, b);
        auto n = evalWireExpr(p.swapBot, b);
        if (!m || !n) fail(Err::BadRule, "unresolved swap block in rule");
        if (*m == 0 || *n == 0) {
          pushAtom(out, idAtom(*m + *n));
          break;
        }
        NAtom a;
        a.k = NAtom::K::Swap;
        a.swapTop = *m;
        a.swapBot = *n;
        a.wires = *m + *n;
        pushAtom(out, std::move(a));
        break;
      }
      case PAtom::K::Ctrl: {
        int bodyWires = patternWiresOf(*p.sub, b);
        NAtom a;
        a.k = NAtom::K::Ctrl;
        a.polarity = p.polarity;
        a.sub = std::make_shared<NTerm>(buildTerm(*p.sub, b, bodyWires));
        a.wires = bodyWires + 1;
        pushAtom(out, std::move(a));
        break;
      }
      case PAtom::K::Meta: {
        auto it = b.terms.find(p.name);
        if (it == b.terms.end()) fail(Err::BadRule, "unbound metavariable ?" + p.name);
        pushTermAsAtoms(out, it->second);
        break;
      }
      case PAtom::K::Nest: {
        int w = patternWiresOf(*p.sub, b);
        pushTermAsAtoms(out, buildTerm(*p.sub, b, w));
        break;
      }
    }
  }
}

bool applyConstraints(const Rule& rule, Bindings& b) {
  for (const auto& c : rule.constraints) {
    auto it = b.terms.find(c.metaName);
    if (it == b.terms.end()) return false;
    if (!bindWidth(b, c.var, it->second.wires)) return false;
  }
  return true;
}

void runCompute(const Rule& rule, Bindings& b) {
  if (!rule.compute) return;
  const EulerCompute& c = *rule.compute;
  if (c.args.size() != 2 || c.outs.size() != 4)
    fail(Err::BadRule, "compute: euler takes two arguments and yields four outputs");
  auto arg = [&](const std::string& name) {
    auto it = b.params.find(name);
    if (it == b.params.end()) fail(Err::BadRule, "compute argument @" + name + " unbound");
    return it->second;
  };
  std::array<double, 4> outs = eulerAngles(arg(c.args[0]), arg(c.args[1]));
  for (size_t i = 0; i < 4; ++i) b.params[c.outs[i]] = outs[i];
}

// ============================== rule application ===============================

struct Rewriter {
  const Rule& rule;
  bool ltr;
  const Signature& sig;

  const PTerm& fromSide() const { return ltr ? rule.lhs : rule.rhs; }
  const PTerm& toSide() const { return ltr ? rule.rhs : rule.lhs; }

  [[noreturn]] void noMatch(const NTerm& around) const {
    fail(Err::NoMatch, "rule '" + rule.name + "' (" + (ltr ? "LR" : "RL") +
                           ") does not match at the addressed subterm: " +
                           printCtrl(denormalize(around)));
  }

  // Region application at a sequence position: pattern consumes whole slices
  // with uniform identity leftover.
  NTerm applySeqRegion(const NTerm& owner, size_t sliceFrom) const {
    std::vector<NSlice> region(owner.slices.begin() + sliceFrom, owner.slices.end());
    const PTerm& pat = fromSide();
    NTerm result{owner.wires, {}};
    bool done = false;
    Bindings b;
    int leftover = -1;
    NTerm regionTerm{owner.wires, region};
    // A side that is nothing but identity wires matches the invisible
    // identity in front of the region, so rules like xx or (b) can be applied
    // right-to-left to insert circuitry.
    auto tryIdentityInsertion = [&]() -> std::optional<NTerm> {
      if (pat.elems.size() != 1 || !sliceIsAllIdPattern(pat.elems[0])) return std::nullopt;
      NSlice virt;
      if (owner.wires > 0) virt.push_back(idAtom(owner.wires));
      Bindings bb;
      NTerm built{owner.wires, {}};
      bool matched =
          matchAtoms(pat.elems[0].atoms, 0, virt, 0, 0, bb,
                     [&](size_t ai, int idUsed, Bindings& inner) {
                       if (ai != virt.size() || idUsed != 0) return false;
                       Bindings local = inner;
                       if (!applyConstraints(rule, local)) return false;
                       runCompute(rule, local);
                       built = buildTerm(toSide(), local, owner.wires);
                       return true;
                     });
      if (!matched) return std::nullopt;
      std::vector<NSlice> rebuilt(owner.slices.begin(), owner.slices.begin() + sliceFrom);
      for (auto& s : built.slices) finishSlice(rebuilt, std::move(s));
      for (size_t k = sliceFrom; k < owner.slices.size(); ++k) rebuilt.push_back(owner.slices[k]);
      return NTerm{owner.wires, std::move(rebuilt)};
    };
    if (region.empty()) {
      if (auto inserted = tryIdentityInsertion()) return *inserted;
      noMatch(regionTerm);
    }
    bool ok = matchElemsPrefix(
        pat.elems, 0, region, 0, owner.wires, b, leftover,
        [&](size_t consumed, Bindings& bb, int pad) {
          Bindings local = bb;
          if (!applyConstraints(rule, local)) return false;
          runCompute(rule, local);
          int coreWires = owner.wires - pad;
          NTerm rhs = buildTerm(toSide(), local, coreWires);
          std::vector<NSlice> rebuilt(owner.slices.begin(), owner.slices.begin() + sliceFrom);
          if (rhs.slices.empty() && pad == 0) {
            // identity replacement: nothing to insert
          } else {
            for (auto s : rhs.slices) {
              pushAtom(s, idAtom(pad));
              finishSlice(rebuilt, std::move(s));
            }
          }
          for (size_t k = sliceFrom + consumed; k < owner.slices.size(); ++k)
            rebuilt.push_back(owner.slices[k]);
          result = NTerm{owner.wires, std::move(rebuilt)};
          done = true;
          return true;
        });
    if (!ok || !done) {
      if (auto inserted = tryIdentityInsertion()) return *inserted;
      noMatch(regionTerm);
    }
    return result;
  }

  // Region application at a parallel position: single-slice pattern consumes
  // an atom prefix; siblings stay in place.
  NTerm applyParRegion(const NTerm& owner, size_t sliceIdx, size_t atomFrom) const {
    const PTerm& pat = fromSide();
    if (pat.elems.size() != 1 || pat.elems[0].isSeqMeta) {
      NTerm around{sliceWires(owner.slices[sliceIdx]), {owner.slices[sliceIdx]}};
      noMatch(around);
    }
    const NSlice& slice = owner.slices[sliceIdx];
    NTerm result{owner.wires, {}};
    bool done = false;
    Bindings b;
    bool ok = matchAtoms(
        pat.elems[0].atoms, 0, slice, atomFrom, 0, b,
        [&](size_t endAi, int endIdUsed, Bindings& bb) {
          Bindings local = bb;
          if (!applyConstraints(rule, local)) return false;
          runCompute(rule, local);
          int coreWires = 0;
          for (size_t k = atomFrom; k < endAi; ++k) coreWires += slice[k].wires;
          coreWires += endIdUsed;
          NTerm rhs = buildTerm(toSide(), local, coreWires);
          NSlice rebuilt(slice.begin(), slice.begin() + atomFrom);
          pushTermAsAtoms(rebuilt, rhs);
          if (endIdUsed > 0) pushAtom(rebuilt, idAtom(slice[endAi].idWires - endIdUsed));
          for (size_t k = endAi + (endIdUsed > 0 ? 1 : 0); k < slice.size(); ++k)
            pushAtom(rebuilt, slice[k]);
          std::vector<NSlice> slices(owner.slices.begin(), owner.slices.begin() + sliceIdx);
          finishSlice(slices, std::move(rebuilt));
          for (size_t k = sliceIdx + 1; k < owner.slices.size(); ++k)
            slices.push_back(owner.slices[k]);
          result = NTerm{owner.wires, std::move(slices)};
          done = true;
          return true;
        });
    if (!ok || !done) {
      NTerm around{sliceWires(slice), {slice}};
      noMatch(around);
    }
    return result;
  }

  NTerm rewriteTerm(const NTerm& nt, const Path& path, size_t pi) const {
    if (pi == path.size()) return applySeqRegion(nt, 0);
    size_t k = nt.slices.size();
    if (k == 0) fail(Err::BadPath, "path descends into an identity", path);
    if (k == 1) return rewriteIntoSlice(nt, 0, path, pi);
    int step = path[pi];
    if (step == 0) return rewriteIntoSlice(nt, 0, path, pi + 1);
    if (step != 1) fail(Err::BadPath, "path step out of range", path);
    // tail of the sequence
    NTerm tail{nt.wires, std::vector<NSlice>(nt.slices.begin() + 1, nt.slices.end())};
    NTerm res = rewriteTerm(tail, path, pi + 1);
    std::vector<NSlice> slices;
    slices.push_back(nt.slices[0]);
    for (auto& s : res.slices) slices.push_back(s);
    return NTerm{nt.wires, std::move(slices)};
  }

  NTerm rewriteIntoSlice(const NTerm& nt, size_t sliceIdx, const Path& path, size_t pi) const {
    size_t atomIdx = 0;
    const NSlice& slice = nt.slices[sliceIdx];
    size_t cursor = pi;
    while (true) {
      if (cursor == path.size()) return applyParRegion(nt, sliceIdx, atomIdx);
      if (atomIdx + 1 == slice.size())
        return rewriteIntoAtom(nt, sliceIdx, atomIdx, path, cursor);
      int step = path[cursor];
      if (step == 0) return rewriteIntoAtom(nt, sliceIdx, atomIdx, path, cursor + 1);
      if (step != 1) fail(Err::BadPath, "path step out of range", path);
      ++atomIdx;
      ++cursor;
    }
  }

  NTerm rewriteIntoAtom(const NTerm& nt, size_t sliceIdx, size_t atomIdx, const Path& path,
                        size_t pi) const {
    const NAtom& a = nt.slices[sliceIdx][atomIdx];
    auto rebuildWithSub = [&](NTerm newSub) {
      NAtom na = a;
      na.sub = std::make_shared<NTerm>(std::move(newSub));
      if (a.k == NAtom::K::Ctrl)
        na.wires = na.sub->wires + 1;
      else
        na.wires = na.sub->wires;
      std::vector<NSlice> slices = nt.slices;
      NSlice rebuilt(slices[sliceIdx].begin(), slices[sliceIdx].begin() + atomIdx);
      if (na.k == NAtom::K::Group)
        pushTermAsAtoms(rebuilt, *na.sub);
      else
        pushAtom(rebuilt, std::move(na));
      for (size_t k = atomIdx + 1; k < slices[sliceIdx].size(); ++k)
        pushAtom(rebuilt, slices[sliceIdx][k]);
      std::vector<NSlice> out(slices.begin(), slices.begin() + sliceIdx);
      finishSlice(out, std::move(rebuilt));
      for (size_t k = sliceIdx + 1; k < slices.size(); ++k) out.push_back(slices[k]);
      return NTerm{nt.wires, std::move(out)};
    };
    if (pi == path.size()) {
      // a group is addressed as the region inside it
      if (a.k == NAtom::K::Group) return rebuildWithSub(rewriteTerm(*a.sub, path, pi));
      return applyParRegion(nt, sliceIdx, atomIdx);
    }
    if (a.k == NAtom::K::Ctrl) {
      if (path[pi] != 0) fail(Err::BadPath, "control has a single child", path);
      return rebuildWithSub(rewriteTerm(*a.sub, path, pi + 1));
    }
    if (a.k == NAtom::K::Group) return rebuildWithSub(rewriteTerm(*a.sub, path, pi));
    fail(Err::BadPath, "path descends into a leaf", path);
  }
};

}  // namespace

CtrlPtr applyRule(const CtrlPtr& t, const Rule& rule, bool leftToRight, const Path& path,
                  const Signature& sig) {
  NTerm nt = normalizeTerm(t, sig);
  Rewriter rw{rule, leftToRight, sig};
  NTerm out = rw.rewriteTerm(nt, path, 0);
  return normalizeStructural(denormalize(out), sig);
}

// ================================ core rules ===================================

namespace {

PTermPtr pterm(std::vector<PElem> elems) {
  auto p = std::make_shared<PTerm>();
  p->elems = std::move(elems);
  return p;
}

PElem pslice(std::vector<PAtom> atoms) {
  PElem e;
  e.atoms = std::move(atoms);
  return e;
}

PElem pseqMeta(const std::string& name) {
  PElem e;
  e.isSeqMeta = true;
  e.metaName = name;
  return e;
}

PTermPtr metaTerm(const std::string& name) { return pterm({pseqMeta(name)}); }

PAtom pMeta(const std::string& name) {
  PAtom a;
  a.k = PAtom::K::Meta;
  a.name = name;
  return a;
}

PAtom pId(WireExpr w) {
  PAtom a;
  a.k = PAtom::K::Id;
  a.width = std::move(w);
  return a;
}

PAtom pNot() {
  PAtom a;
  a.k = PAtom::K::Not;
  return a;
}

PAtom pSwap(WireExpr m, WireExpr n) {
  PAtom a;
  a.k = PAtom::K::Swap;
  a.swapTop = std::move(m);
  a.swapBot = std::move(n);
  return a;
}

PAtom pCtrl(int pol, PTermPtr sub) {
  PAtom a;
  a.k = PAtom::K::Ctrl;
  a.polarity = pol;
  a.sub = std::move(sub);
  return a;
}

PAtom pNest(PTermPtr sub) {
  PAtom a;
  a.k = PAtom::K::Nest;
  a.sub = std::move(sub);
  return a;
}

PTerm deref(const PTermPtr& p) { return *p; }

Rule mkCoreRule(std::string name, std::string backend, PTermPtr lhs, PTermPtr rhs,
                std::vector<WireConstraint> cs = {}) {
  Rule r;
  r.name = std::move(name);
  r.backend = std::move(backend);
  r.lhs = deref(lhs);
  r.rhs = deref(rhs);
  r.constraints = std::move(cs);
  return r;
}

}  // namespace

Registry coreRegistry() {
  Registry reg;
  const WireExpr N = WireExpr::var("n");
  const WireExpr M = WireExpr::var("m");
  const WireExpr one = WireExpr::constant(1);

  // (a) composition: c1[?f ; ?g] = c1[?f] ; c1[?g]
  reg.add(mkCoreRule("a", "perm",
                     pterm({pslice({pCtrl(1, pterm({pseqMeta("f"), pseqMeta("g")}))})}),
                     pterm({pslice({pCtrl(1, metaTerm("f"))}), pslice({pCtrl(1, metaTerm("g"))})})));
  // (b) identity: c1[id n] = id n+1
  reg.add(mkCoreRule("b", "perm", pterm({pslice({pCtrl(1, pterm({pslice({pId(N)})}))})}),
                     pterm({pslice({pId(WireExpr{{"n"}, 1})})})));
  // (c) strength: c1[?f + id m] = c1[?f] + id m
  reg.add(mkCoreRule("c", "perm",
                     pterm({pslice({pCtrl(1, pterm({pslice({pMeta("f"), pId(M)})}))})}),
                     pterm({pslice({pCtrl(1, metaTerm("f")), pId(M)})})));
  // (d) colour change: (x + id n) ; c0[?f] ; (x + id n) = c1[?f]
  reg.add(mkCoreRule("d", "perm",
                     pterm({pslice({pNot(), pId(N)}), pslice({pCtrl(0, metaTerm("f"))}),
                            pslice({pNot(), pId(N)})}),
                     pterm({pslice({pCtrl(1, metaTerm("f"))})}), {{"n", "f"}}));
  // (e) complementarity: c0[?f] ; c1[?f] = id1 + ?f
  reg.add(mkCoreRule("e", "perm",
                     pterm({pslice({pCtrl(0, metaTerm("f"))}), pslice({pCtrl(1, metaTerm("f"))})}),
                     pterm({pslice({pId(one), pMeta("f")})})));
  // (f) commutativity: c1[?f2] ; c0[?f1] = c0[?f1] ; c1[?f2]
  reg.add(mkCoreRule("f", "perm",
                     pterm({pslice({pCtrl(1, metaTerm("f2"))}), pslice({pCtrl(0, metaTerm("f1"))})}),
                     pterm({pslice({pCtrl(0, metaTerm("f1"))}), pslice({pCtrl(1, metaTerm("f2"))})})));
  // (g) swap: c1[x] ; swap ; c1[x] ; swap ; c1[x] = swap
  {
    auto cx = [] { return pslice({pCtrl(1, pterm({pslice({pNot()})}))}); };
    auto sw = [&] { return pslice({pSwap(one, one)}); };
    reg.add(mkCoreRule("g", "perm", pterm({cx(), sw(), cx(), sw(), cx()}), pterm({sw()})));
  }
  // (h) swap coherence: (swap + id n) ; c1[c1[?f]] = c1[c1[?f]] ; (swap + id n)
  {
    auto cc = [] { return pslice({pCtrl(1, pterm({pslice({pCtrl(1, metaTerm("f"))})}))}); };
    reg.add(mkCoreRule("h", "perm", pterm({pslice({pSwap(one, one), pId(N)}), cc()}),
                       pterm({cc(), pslice({pSwap(one, one), pId(N)})}), {{"n", "f"}}));
  }
  // xx: the distinguished involution squares to the identity
  reg.add(mkCoreRule("xx", "perm", pterm({pslice({pNot()}), pslice({pNot()})}),
                     pterm({pslice({pId(one)})})));
  // interchange: (?f + ?g) ; (?f2 + ?g2) = (?f ; ?f2) + (?g ; ?g2)
  reg.add(mkCoreRule(
      "interchange", "perm",
      pterm({pslice({pMeta("f"), pMeta("g")}), pslice({pMeta("f2"), pMeta("g2")})}),
      pterm({pslice({pNest(pterm({pseqMeta("f"), pseqMeta("f2")})),
                     pNest(pterm({pseqMeta("g"), pseqMeta("g2")}))})}),
      {{"w1", "f"}, {"w1", "f2"}, {"w2", "g"}, {"w2", "g2"}}));
  // swap naturality: (?f + ?g) ; swap m n = swap m n ; (?g + ?f)
  reg.add(mkCoreRule("swap_nat", "perm",
                     pterm({pslice({pMeta("f"), pMeta("g")}),
                            pslice({pSwap(WireExpr::var("m"), WireExpr::var("n"))})}),
                     pterm({pslice({pSwap(WireExpr::var("m"), WireExpr::var("n"))}),
                            pslice({pMeta("g"), pMeta("f")})}),
                     {{"m", "f"}, {"n", "g"}}));
  // swap cancellation: swap m n ; swap n m = id m+n
  reg.add(mkCoreRule("swap_inv", "perm",
                     pterm({pslice({pSwap(WireExpr::var("m"), WireExpr::var("n"))}),
                            pslice({pSwap(WireExpr::var("n"), WireExpr::var("m"))})}),
                     pterm({pslice({pId(WireExpr{{"m", "n"}, 0})})})));
  // conj (derived): c1[?f ; ?g] ; c0[?g] = c1[?f] ; (id1 + ?g)
  reg.add(mkCoreRule("conj", "perm",
                     pterm({pslice({pCtrl(1, pterm({pseqMeta("f"), pseqMeta("g")}))}),
                            pslice({pCtrl(0, metaTerm("g"))})}),
                     pterm({pslice({pCtrl(1, metaTerm("f"))}), pslice({pId(one), pMeta("g")})})));
  return reg;
}

void Registry::add(Rule r) { rules_[r.name] = std::move(r); }

const Rule* Registry::find(const std::string& name) const {
  auto it = rules_.find(name);
  return it == rules_.end() ? nullptr : &it->second;
}

const Rule& Registry::require(const std::string& name) const {
  const Rule* r = find(name);
  if (!r) fail(Err::BadRule, "rule '" + name + "' is not in the registry");
  return *r;
}

std::vector<std::string> Registry::names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : rules_) out.push_back(k);
  return out;
}

// ============================ random instantiation =============================

CtrlPtr randomTerm(std::mt19937_64& rng, const Signature& sig, const std::string& backendName,
                   int maxWires, int depth, int minWires) {
  std::vector<const GenDecl*> pool;
  for (const auto& g : sig.generators) {
    if (!sig.builtinKey(g.name, backendName)) continue;
    if (backendName == "perm" && g.wires == 0) continue;
    if (g.realParams > 0 && backendName != "complex") continue;
    pool.push_back(&g);
  }
  auto pick = [&](std::uint64_t n) { return n == 0 ? 0 : rng() % n; };
  std::function<CtrlPtr(int, int)> gen = [&](int w, int d) -> CtrlPtr {
    auto leaf = [&]() -> CtrlPtr {
      std::vector<CtrlPtr> opts;
      opts.push_back(mkIdentity(w));
      if (w == 1) opts.push_back(mkNot());
      for (const GenDecl* g : pool) {
        if (g->wires == w) {
          std::vector<double> params;
          for (int i = 0; i < g->realParams; ++i)
            params.push_back(2.0 * M_PI * double(rng() % 10000) / 10000.0);
          opts.push_back(mkGen(g->name, std::move(params)));
        }
      }
      if (w >= 2) {
        int m = 1 + static_cast<int>(pick(w - 1));
        opts.push_back(mkSwap(m, w - m));
      }
      return opts[pick(opts.size())];
    };
    if (d == 0) return leaf();
    switch (pick(5)) {
      case 0:
        return leaf();
      case 1:
        if (w >= 1) return mkCtrl(static_cast<int>(pick(2)), gen(w - 1, d - 1));
        return leaf();
      case 2: {
        if (w < 1) return leaf();
        int a = static_cast<int>(pick(w + 1));
        return mkPar(gen(a, d - 1), gen(w - a, d - 1));
      }
      default:
        return mkSeq(gen(w, d - 1), gen(w, d - 1));
    }
  };
  int w = minWires + static_cast<int>(pick(maxWires - minWires + 1));
  return gen(w, depth);
}

namespace {

void collectPatternVars(const PTerm& p, std::vector<std::string>& metas,
                        std::vector<std::string>& widthVars, std::vector<std::string>& paramVars) {
  auto addUnique = [](std::vector<std::string>& v, const std::string& s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
  };
  std::function<void(const PTerm&)> walkTerm = [&](const PTerm& t) {
    for (const auto& e : t.elems) {
      if (e.isSeqMeta) {
        addUnique(metas, e.metaName);
        continue;
      }
      for (const auto& a : e.atoms) {
        switch (a.k) {
          case PAtom::K::Meta:
            addUnique(metas, a.name);
            break;
          case PAtom::K::Id:
            for (const auto& v : a.width.vars) addUnique(widthVars, v);
            break;
          case PAtom::K::Swap:
            for (const auto& v : a.swapTop.vars) addUnique(widthVars, v);
            for (const auto& v : a.swapBot.vars) addUnique(widthVars, v);
            break;
          case PAtom::K::Gen:
            for (const auto& pe : a.params) {
              std::function<void(const ParamExpr&)> walkPe = [&](const ParamExpr& q) {
                if (q.k == ParamExpr::K::Var) addUnique(paramVars, q.var);
                for (const auto& kid : q.kids) walkPe(kid);
              };
              walkPe(pe);
            }
            break;
          case PAtom::K::Ctrl:
          case PAtom::K::Nest:
            walkTerm(*a.sub);
            break;
          default:
            break;
        }
      }
    }
  };
  walkTerm(p);
}

}  // namespace

namespace {

// Metavariables composed in sequence share their wire count; group them.
void collectSeqMetaGroups(const PTerm& p, std::vector<std::vector<std::string>>& groups) {
  std::vector<std::string> here;
  for (const auto& e : p.elems) {
    if (e.isSeqMeta) {
      here.push_back(e.metaName);
      continue;
    }
    for (const auto& a : e.atoms)
      if ((a.k == PAtom::K::Ctrl || a.k == PAtom::K::Nest) && a.sub)
        collectSeqMetaGroups(*a.sub, groups);
  }
  if (here.size() > 1) groups.push_back(std::move(here));
}

}  // namespace

std::pair<CtrlPtr, CtrlPtr> instantiateRule(const Rule& rule, const Signature& sig,
                                            const std::string& backendName, std::mt19937_64& rng,
                                            int maxMetaWires) {
  std::vector<std::string> metas, widthVars, paramVars;
  collectPatternVars(rule.lhs, metas, widthVars, paramVars);
  const unsigned span = static_cast<unsigned>(maxMetaWires) + 1;

  Bindings b;
  // metas constrained to share a width variable get the same wire count
  std::map<std::string, int> metaWires;
  for (const auto& c : rule.constraints) {
    if (!b.widths.count(c.var)) b.widths[c.var] = static_cast<int>(rng() % span);
    metaWires[c.metaName] = b.widths[c.var];
  }
  std::vector<std::vector<std::string>> groups;
  collectSeqMetaGroups(rule.lhs, groups);
  for (const auto& group : groups) {
    int w = -1;
    for (const auto& m : group)
      if (metaWires.count(m)) w = metaWires[m];
    if (w < 0) w = static_cast<int>(rng() % span);
    for (const auto& m : group) metaWires[m] = w;
  }
  for (const auto& m : metas)
    if (!metaWires.count(m)) metaWires[m] = static_cast<int>(rng() % span);
  for (const auto& [name, w] : metaWires)
    b.terms[name] = normalizeTerm(randomTerm(rng, sig, backendName, w, 2, w), sig);
  for (const auto& v : widthVars)
    if (!b.widths.count(v)) b.widths[v] = static_cast<int>(rng() % span);
  for (const auto& v : paramVars)
    if (!b.params.count(v)) b.params[v] = 2.0 * M_PI * double(rng() % 10000) / 10000.0;
  runCompute(rule, b);

  int w = patternWiresOf(rule.lhs, b);
  CtrlPtr lhs = denormalize(buildTerm(rule.lhs, b, w));
  CtrlPtr rhs = denormalize(buildTerm(rule.rhs, b, w));
  return {lhs, rhs};
}

void verifyRule(const Rule& rule, const Signature& sig, unsigned trials, std::mt19937_64& rng) {
  std::vector<std::string> metas, widthVars, paramVars;
  collectPatternVars(rule.lhs, metas, widthVars, paramVars);
  if (metas.empty() && widthVars.empty() && paramVars.empty()) trials = 1;
  Backend backend(backendFromName(rule.backend));
  for (unsigned t = 0; t < trials; ++t) {
    auto [lhs, rhs] = instantiateRule(rule, sig, rule.backend, rng);
    Value vl = evalCtrl(lhs, backend, sig);
    Value vr = evalCtrl(rhs, backend, sig);
    if (!backend.equal(vl, vr))
      fail(Err::SemanticMismatch,
           "rule '" + rule.name + "' fails semantic verification on backend " + rule.backend +
               ": " + printCtrl(lhs) + "  !=  " + printCtrl(rhs));
  }
}

// =============================== rule file loading ==============================

namespace {

ParamExpr parseParamExpr(Lexer& lex);

ParamExpr parseParamFactor(Lexer& lex) {
  const Token& t = lex.peek();
  ParamExpr e;
  if (t.kind == Tok::Punct && t.text == "(") {
    lex.next();
    e = parseParamExpr(lex);
    lex.expectPunct(")");
    return e;
  }
  if (t.kind == Tok::Punct && t.text == "-") {
    lex.next();
    ParamExpr inner = parseParamFactor(lex);
    ParamExpr zero;
    zero.k = ParamExpr::K::Const;
    zero.c = 0;
    e.k = ParamExpr::K::Sub;
    e.kids = {zero, inner};
    return e;
  }
  if (t.kind == Tok::Int || t.kind == Tok::Real) {
    e.k = ParamExpr::K::Const;
    e.c = lex.next().num;
    return e;
  }
  if (t.kind == Tok::Name && t.text == "pi") {
    lex.next();
    e.k = ParamExpr::K::Const;
    e.c = M_PI;
    return e;
  }
  if (t.kind == Tok::Name && t.text == "mod2pi") {
    lex.next();
    lex.expectPunct("(");
    ParamExpr inner = parseParamExpr(lex);
    lex.expectPunct(")");
    e.k = ParamExpr::K::Mod2pi;
    e.kids = {inner};
    return e;
  }
  if (t.kind == Tok::Name && !t.text.empty() && t.text[0] == '@') {
    e.k = ParamExpr::K::Var;
    e.var = lex.next().text.substr(1);
    return e;
  }
  lex.error("expected a parameter expression");
}

ParamExpr parseParamProduct(Lexer& lex) {
  ParamExpr e = parseParamFactor(lex);
  for (;;) {
    if (lex.eatPunct("*")) {
      ParamExpr r = parseParamFactor(lex);
      ParamExpr out;
      out.k = ParamExpr::K::Mul;
      out.kids = {e, r};
      e = out;
    } else if (lex.eatPunct("/")) {
      ParamExpr r = parseParamFactor(lex);
      ParamExpr out;
      out.k = ParamExpr::K::Div;
      out.kids = {e, r};
      e = out;
    } else {
      break;
    }
  }
  return e;
}

ParamExpr parseParamExpr(Lexer& lex) {
  ParamExpr e = parseParamProduct(lex);
  for (;;) {
    if (lex.eatPunct("+")) {
      ParamExpr r = parseParamProduct(lex);
      ParamExpr out;
      out.k = ParamExpr::K::Add;
      out.kids = {e, r};
      e = out;
    } else if (lex.eatPunct("-")) {
      ParamExpr r = parseParamProduct(lex);
      ParamExpr out;
      out.k = ParamExpr::K::Sub;
      out.kids = {e, r};
      e = out;
    } else {
      break;
    }
  }
  return e;
}

// Pattern DSL: the circuit grammar extended with ?metavariables and @parameter
// expressions. Produces a normalized PTerm.
class PatternParser {
 public:
  PatternParser(const std::string& text, const Signature& sig) : lex_(text, true), sig_(sig) {}

  PTerm parse() {
    PTerm t = term();
    if (lex_.peek().kind != Tok::End) lex_.error("trailing input in rule pattern");
    return t;
  }

 private:
  PTerm term() {
    PTerm out;
    appendPar(out, par());
    while (lex_.eatPunct(";")) appendPar(out, par());
    return out;
  }

  // a parallel layer: either a lone ?meta (a sequence segment) or a slice
  struct ParLayer {
    bool bareMeta = false;
    std::string metaName;
    std::vector<PAtom> atoms;
  };

  void appendPar(PTerm& out, ParLayer layer) {
    PElem e;
    if (layer.bareMeta) {
      e.isSeqMeta = true;
      e.metaName = layer.metaName;
    } else {
      e.atoms = std::move(layer.atoms);
    }
    out.elems.push_back(std::move(e));
  }

  ParLayer par() {
    std::vector<PAtom> atoms = atom();
    if (atoms.size() == 1 && atoms[0].k == PAtom::K::Meta &&
        !(lex_.peek().kind == Tok::Punct && lex_.peek().text == "+")) {
      ParLayer l;
      l.bareMeta = true;
      l.metaName = atoms[0].name;
      return l;
    }
    while (lex_.eatPunct("+")) {
      for (auto& a : atom()) atoms.push_back(std::move(a));
    }
    ParLayer l;
    l.atoms = std::move(atoms);
    return l;
  }

  std::vector<PAtom> atom() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Punct && t.text == "(") {
      lex_.next();
      PTerm inner = term();
      lex_.expectPunct(")");
      if (inner.elems.size() == 1 && !inner.elems[0].isSeqMeta)
        return inner.elems[0].atoms;
      if (inner.elems.size() == 1 && inner.elems[0].isSeqMeta) {
        PAtom a;
        a.k = PAtom::K::Meta;
        a.name = inner.elems[0].metaName;
        return {a};
      }
      PAtom a;
      a.k = PAtom::K::Nest;
      a.sub = std::make_shared<PTerm>(std::move(inner));
      return {a};
    }
    if (t.kind != Tok::Name) lex_.error("expected a pattern atom");
    Token name = lex_.next();
    const std::string& s = name.text;
    if (!s.empty() && s[0] == '?') {
      PAtom a;
      a.k = PAtom::K::Meta;
      a.name = s.substr(1);
      if (a.name.empty()) lex_.error("empty metavariable name");
      return {a};
    }
    if (s == "x") return {pNot()};
    if (s == "swap") {
      if (lex_.peek().kind != Tok::Int) lex_.error("swap expects two integers");
      int m = static_cast<int>(lex_.next().intval);
      if (lex_.peek().kind != Tok::Int) lex_.error("swap expects two integers");
      int n = static_cast<int>(lex_.next().intval);
      return {pSwap(WireExpr::constant(m), WireExpr::constant(n))};
    }
    if (s.size() > 2 && s.rfind("id", 0) == 0 &&
        s.find_first_not_of("0123456789", 2) == std::string::npos)
      return {pId(WireExpr::constant(std::stoi(s.substr(2))))};
    if (s == "id") {
      if (lex_.peek().kind != Tok::Int) lex_.error("id expects an integer");
      return {pId(WireExpr::constant(static_cast<int>(lex_.next().intval)))};
    }
    if (s == "c1" || s == "c0") {
      lex_.expectPunct("[");
      PTerm body = term();
      lex_.expectPunct("]");
      PAtom a;
      a.k = PAtom::K::Ctrl;
      a.polarity = (s == "c1") ? 1 : 0;
      a.sub = std::make_shared<PTerm>(std::move(body));
      return {a};
    }
    // generator with optional parameter expressions
    PAtom a;
    a.k = PAtom::K::Gen;
    a.name = s;
    const GenDecl& d = sig_.require(s);
    a.genWires = d.wires;
    if (lex_.peek().kind == Tok::Punct && lex_.peek().text == "(") {
      lex_.next();
      a.params.push_back(parseParamExpr(lex_));
      while (lex_.eatPunct(",")) a.params.push_back(parseParamExpr(lex_));
      lex_.expectPunct(")");
    }
    if (static_cast<int>(a.params.size()) != d.realParams)
      lex_.error("generator '" + s + "' parameter count mismatch");
    return {a};
  }

  Lexer lex_;
  const Signature& sig_;
};

}  // namespace

void loadRulesJsonText(Registry& reg, const std::string& text, const Signature& sig,
                       unsigned verifyTrials, std::uint64_t seed) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(Err::SyntaxError, std::string("rule file: bad JSON: ") + e.what());
  }
  std::mt19937_64 rng(seed);
  for (const auto& item : j) {
    Rule r;
    r.name = item.at("name").get<std::string>();
    r.backend = item.at("backend").get<std::string>();
    r.lhs = PatternParser(item.at("lhs").get<std::string>(), sig).parse();
    r.rhs = PatternParser(item.at("rhs").get<std::string>(), sig).parse();
    if (item.contains("compute")) {
      EulerCompute c;
      if (item["compute"].at("fn").get<std::string>() != "euler")
        fail(Err::BadRule, "rule '" + r.name + "': unknown compute function");
      for (const auto& a : item["compute"].at("args")) c.args.push_back(a.get<std::string>());
      for (const auto& o : item["compute"].at("outs")) c.outs.push_back(o.get<std::string>());
      r.compute = c;
    }
    verifyRule(r, sig, verifyTrials, rng);
    reg.add(std::move(r));
  }
}

void loadRuleFile(Registry& reg, const std::string& path, const Signature& sig,
                  unsigned verifyTrials, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) fail(Err::IoError, "cannot open rule file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  loadRulesJsonText(reg, buf.str(), sig, verifyTrials, seed);
}

Registry registryForSignature(const Signature& sig, const std::string& dataDir,
                              unsigned verifyTrials) {
  Registry reg = coreRegistry();
  std::mt19937_64 rng(7);
  for (const auto& name : reg.names()) {
    verifyRule(reg.require(name), sig, verifyTrials, rng);
  }
  std::string rulesFile = sig.rulesFile.empty() ? sig.name + ".rules.json" : sig.rulesFile;
  std::filesystem::path p = std::filesystem::path(dataDir) / "rules" / rulesFile;
  if (std::filesystem::exists(p)) loadRuleFile(reg, p.string(), sig, verifyTrials);
  for (const auto& rel : sig.relations) {
    if (!reg.find(rel))
      fail(Err::BadRule, "signature " + sig.name + ": relation '" + rel +
                             "' does not resolve in the rewrite registry");
  }
  return reg;
}

// ================================ proof scripts ================================

CheckResult checkProof(const ProofScript& script, const Registry& reg, const Signature& sig) {
  CheckResult out;
  CtrlPtr cur = normalizeStructural(script.lhs, sig);
  out.trace.push_back(cur);
  for (size_t i = 0; i < script.steps.size(); ++i) {
    const ProofStep& s = script.steps[i];
    const Rule* rule = reg.find(s.rule);
    if (!rule) {
      out.failingStep = i;
      out.message = "step " + std::to_string(i) + ": rule '" + s.rule + "' not in registry";
      return out;
    }
    try {
      cur = applyRule(cur, *rule, s.leftToRight, s.path, sig);
    } catch (const CropError& e) {
      out.failingStep = i;
      out.message = "step " + std::to_string(i) + " (" + s.rule + " " +
                    (s.leftToRight ? "LR" : "RL") + " at " + pathToString(s.path) +
                    "): " + e.what();
      return out;
    }
    out.trace.push_back(cur);
  }
  CtrlPtr want = normalizeStructural(script.rhs, sig);
  if (!equalTerms(cur, want)) {
    out.failingStep = script.steps.size();
    out.message = "replay ended at " + printCtrl(cur) + " but the script claims " + printCtrl(want);
    return out;
  }
  out.accepted = true;
  return out;
}

ProofScript scriptFromJsonText(const std::string& text, const Signature& sig) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(Err::SyntaxError, std::string("proof script: bad JSON: ") + e.what());
  }
  ProofScript s;
  s.lhs = parseCtrl(j.at("lhs").get<std::string>(), sig);
  s.rhs = parseCtrl(j.at("rhs").get<std::string>(), sig);
  for (const auto& st : j.at("steps")) {
    ProofStep step;
    step.rule = st.at("rule").get<std::string>();
    std::string dir = st.value("dir", "LR");
    if (dir != "LR" && dir != "RL") fail(Err::SyntaxError, "proof step dir must be LR or RL");
    step.leftToRight = dir == "LR";
    for (const auto& p : st.value("path", nlohmann::json::array()))
      step.path.push_back(p.get<int>());
    s.steps.push_back(std::move(step));
  }
  return s;
}

ProofScript scriptFromJsonFile(const std::string& path, const Signature& sig) {
  std::ifstream in(path);
  if (!in) fail(Err::IoError, "cannot open proof script " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scriptFromJsonText(buf.str(), sig);
}

std::string scriptToJsonText(const ProofScript& script) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : script.steps) {
    steps.push_back(
        {{"rule", s.rule}, {"dir", s.leftToRight ? "LR" : "RL"}, {"path", s.path}});
  }
  nlohmann::json j = {
      {"lhs", printCtrl(script.lhs)}, {"rhs", printCtrl(script.rhs)}, {"steps", steps}};
  return j.dump(2);
}

// =============================== equivalence search ==============================

namespace {

void enumeratePathsSlice(const NSlice& slice, const Path& slicePath, std::vector<Path>& out);

void enumeratePathsTerm(const NTerm& nt, const Path& prefix, std::vector<Path>& out) {
  out.push_back(prefix);
  size_t k = nt.slices.size();
  if (k == 0) return;
  if (k == 1) {
    enumeratePathsSlice(nt.slices[0], prefix, out);
    return;
  }
  Path p = prefix;
  for (size_t i = 0; i < k; ++i) {
    if (i > 0) {
      p.push_back(1);
      out.push_back(p);
    }
    Path sp = p;
    if (i + 1 < k) sp.push_back(0);
    enumeratePathsSlice(nt.slices[i], sp, out);
  }
}

void enumeratePathsAtom(const NAtom& a, const Path& atomPath, std::vector<Path>& out) {
  if (a.k == NAtom::K::Ctrl) {
    Path p = atomPath;
    p.push_back(0);
    enumeratePathsTerm(*a.sub, p, out);
  } else if (a.k == NAtom::K::Group) {
    enumeratePathsTerm(*a.sub, atomPath, out);
  }
}

void enumeratePathsSlice(const NSlice& slice, const Path& slicePath, std::vector<Path>& out) {
  size_t m = slice.size();
  if (m == 1) {
    enumeratePathsAtom(slice[0], slicePath, out);
    return;
  }
  Path p = slicePath;
  out.push_back(p);  // par region at atom 0
  for (size_t j = 0; j < m; ++j) {
    if (j > 0) {
      p.push_back(1);
      out.push_back(p);
    }
    Path ap = p;
    if (j + 1 < m) ap.push_back(0);
    enumeratePathsAtom(slice[j], ap, out);
  }
}

struct SearchEntry {
  std::string parent;
  ProofStep step;
  NTerm term;
  int depth = 0;
};

using SearchMap = std::map<std::string, SearchEntry>;

std::vector<std::pair<ProofStep, NTerm>> allApplications(const NTerm& nt, const Registry& reg,
                                                         const Signature& sig) {
  std::vector<Path> paths;
  enumeratePathsTerm(nt, {}, paths);
  std::sort(paths.begin(), paths.end());
  paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
  std::vector<std::pair<ProofStep, NTerm>> out;
  CtrlPtr asTerm = denormalize(nt);
  for (const auto& ruleName : reg.names()) {
    const Rule& rule = reg.require(ruleName);
    for (int dir = 0; dir < 2; ++dir) {
      bool ltr = dir == 0;
      for (const auto& p : paths) {
        try {
          CtrlPtr next = applyRule(asTerm, rule, ltr, p, sig);
          out.push_back({ProofStep{ruleName, ltr, p}, normalizeTerm(next, sig)});
        } catch (const CropError&) {
          // no match here
        }
      }
    }
  }
  return out;
}

ProofStep flipStep(const ProofStep& s) { return ProofStep{s.rule, !s.leftToRight, s.path}; }

}  // namespace

std::optional<BackendKind> pickBackend(const CtrlPtr& t, const Signature& sig) {
  for (BackendKind k :
       {BackendKind::Perm, BackendKind::Gf2, BackendKind::Cyclo, BackendKind::Cx}) {
    try {
      evalCtrl(t, Backend(k), sig);
      return k;
    } catch (const CropError&) {
      continue;
    }
  }
  return std::nullopt;
}

SearchResult searchEquiv(const CtrlPtr& a, const CtrlPtr& b, const Registry& reg,
                         const Signature& sig, int maxDepth, double budgetSeconds) {
  if (wires(a, sig) != wires(b, sig))
    fail(Err::InvalidArgument, "search: terms have different wire counts");

  // semantic pre-filter
  std::optional<BackendKind> bk = pickBackend(a, sig);
  if (bk) {
    try {
      Backend backend(*bk);
      Value va = evalCtrl(a, backend, sig);
      Value vb = evalCtrl(b, backend, sig);
      if (!backend.equal(va, vb)) {
        SearchResult r;
        r.kind = SearchResult::Kind::Counterexample;
        r.detail = std::string("the ") + backendName(*bk) + " backend distinguishes the terms";
        return r;
      }
    } catch (const CropError&) {
      // fall through without the filter
    }
  }

  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(budgetSeconds));
  auto expired = [&] { return std::chrono::steady_clock::now() > deadline; };

  NTerm na = normalizeTerm(a, sig);
  NTerm nb = normalizeTerm(b, sig);
  std::string keyA = canonicalKey(na), keyB = canonicalKey(nb);

  SearchMap fwd, bwd;
  fwd[keyA] = SearchEntry{"", {}, na, 0};
  bwd[keyB] = SearchEntry{"", {}, nb, 0};

  auto reconstruct = [&](const std::string& meet) -> std::optional<ProofScript> {
    ProofScript script;
    script.lhs = a;
    script.rhs = b;
    // forward chain: a -> meet
    std::vector<ProofStep> fsteps;
    for (std::string k = meet; !fwd.at(k).parent.empty(); k = fwd.at(k).parent)
      fsteps.push_back(fwd.at(k).step);
    std::reverse(fsteps.begin(), fsteps.end());
    script.steps = fsteps;
    // backward chain: meet -> b by inverting the recorded b-side steps
    std::vector<std::pair<std::string, ProofStep>> bchain;  // (resultKeyOnBSide, step)
    for (std::string k = meet; !bwd.at(k).parent.empty(); k = bwd.at(k).parent)
      bchain.push_back({bwd.at(k).parent, bwd.at(k).step});
    NTerm cur = bwd.at(meet).term;
    for (const auto& [targetKey, step] : bchain) {
      ProofStep flipped = flipStep(step);
      bool ok = false;
      try {
        CtrlPtr next = applyRule(denormalize(cur), reg.require(flipped.rule), flipped.leftToRight,
                                 flipped.path, sig);
        NTerm nn = normalizeTerm(next, sig);
        if (canonicalKey(nn) == targetKey) {
          script.steps.push_back(flipped);
          cur = nn;
          ok = true;
        }
      } catch (const CropError&) {
      }
      if (!ok) {
        // the naive inverse missed; look for any application reaching the target
        for (const auto& [st, nn] : allApplications(cur, reg, sig)) {
          if (canonicalKey(nn) == targetKey) {
            script.steps.push_back(st);
            cur = nn;
            ok = true;
            break;
          }
        }
      }
      if (!ok) return std::nullopt;
    }
    return script;
  };

  if (keyA == keyB) {
    SearchResult r;
    r.kind = SearchResult::Kind::Found;
    r.script = ProofScript{a, b, {}};
    return r;
  }

  std::vector<std::string> frontierF = {keyA}, frontierB = {keyB};
  int depthF = 0, depthB = 0;
  while (depthF + depthB < maxDepth && (!frontierF.empty() || !frontierB.empty())) {
    bool expandFwd;
    if (frontierF.empty())
      expandFwd = false;
    else if (frontierB.empty())
      expandFwd = true;
    else
      expandFwd = frontierF.size() <= frontierB.size();
    SearchMap& mine = expandFwd ? fwd : bwd;
    SearchMap& other = expandFwd ? bwd : fwd;
    std::vector<std::string>& frontier = expandFwd ? frontierF : frontierB;
    std::vector<std::string> next;
    for (const auto& key : frontier) {
      if (expired()) {
        SearchResult r;
        r.kind = SearchResult::Kind::Exhausted;
        r.detail = "time budget exhausted";
        return r;
      }
      const NTerm cur = mine.at(key).term;
      int depth = mine.at(key).depth;
      for (auto& [step, nn] : allApplications(cur, reg, sig)) {
        std::string nk = canonicalKey(nn);
        if (mine.count(nk)) continue;
        mine[nk] = SearchEntry{key, step, nn, depth + 1};
        next.push_back(nk);
        if (other.count(nk)) {
          if (auto script = reconstruct(nk)) {
            SearchResult r;
            r.kind = SearchResult::Kind::Found;
            r.script = *script;
            return r;
          }
        }
      }
    }
    frontier = std::move(next);
    (expandFwd ? depthF : depthB) += 1;
  }
  SearchResult r;
  r.kind = SearchResult::Kind::Exhausted;
  r.detail = "depth budget exhausted";
  return r;
}

// ================================== Euler ========================================

std::array<double, 4> eulerAngles(double a1, double a2) {
  using C = std::complex<double>;
  const C i{0.0, 1.0};
  auto mul2 = [](const std::array<C, 4>& x, const std::array<C, 4>& y) {
    return std::array<C, 4>{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
  };
  const double r = 1.0 / std::sqrt(2.0);
  std::array<C, 4> H{r, r, r, -r};
  auto Z = [&](double t) { return std::array<C, 4>{1.0, 0.0, 0.0, std::exp(i * t)}; };
  // diagram h ; z(a1) ; h ; z(a2) ; h read in function order
  std::array<C, 4> M = mul2(H, mul2(Z(a2), mul2(H, mul2(Z(a1), H))));

  auto norm2pi = [](double v) {
    v = std::fmod(v, 2.0 * M_PI);
    if (v < 0) v += 2.0 * M_PI;
    return v;
  };
  double c = std::abs(M[0]);
  double s = std::abs(M[1]);
  double b0, b1, b2, b3;
  if (s < 1e-12) {
    // diagonal: middle angle zero, outer angles merged
    b2 = 0.0;
    double phi = std::arg(M[0]);
    b1 = std::arg(M[3]) - phi;
    b3 = 0.0;
    b0 = phi;
  } else if (c < 1e-12) {
    b2 = M_PI;
    b1 = 0.0;
    double phi = std::arg(M[1]) + M_PI / 2.0;
    b3 = std::arg(M[2]) - phi + M_PI / 2.0;
    b0 = phi - M_PI / 2.0;
  } else {
    b2 = 2.0 * std::atan2(s, c);
    double phi = std::arg(M[0]);
    b1 = std::arg(M[1]) - phi + M_PI / 2.0;
    b3 = std::arg(M[2]) - phi + M_PI / 2.0;
    b0 = phi - b2 / 2.0;
  }
  return {norm2pi(b0), norm2pi(b1), norm2pi(b2), norm2pi(b3)};
}

}  // namespace cropkit
