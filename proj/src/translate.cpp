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

#include "cropkit/translate.hpp"

#include <json.hpp>

namespace cropkit {

namespace {

bool isPowerOfTwo(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

int log2Exact(std::uint64_t v) {
  int n = 0;
  while ((std::uint64_t(1) << n) < v) ++n;
  return n;
}

}  // namespace

Permutation alpha(const CtrlPtr& t, const Signature& sig) {
  return std::get<Permutation>(evalCtrl(t, Backend(BackendKind::Perm), sig));
}

CtrlPtr thetaTerm(int n, std::uint64_t i) {
  GrayContext ctx = grayContext(n, i);
  return multiCtrl(ctx.prefix, ctx.suffix, mkNot(), Signature::x());
}

CtrlPtr beta(const Permutation& p) {
  if (!isPowerOfTwo(p.size())) fail(Err::NotPowerOfTwo, "beta: permutation size is not a power of two");
  int n = log2Exact(p.size());
  if (p.isIdentity() || n == 0) return mkIdentity(n);
  Permutation r = grayRank(n);
  // theta_{n,i} relabels tau_i through r, so p = prod theta_{i_j} iff
  // r^-1 p r = prod tau_{i_j}
  Permutation q = compose(inverse(r), compose(p, r));
  std::vector<std::uint32_t> word = adjacentFactorization(q);
  // p = theta_{i1} o ... o theta_{ik} in function order; diagram order reverses.
  std::vector<CtrlPtr> factors;
  factors.reserve(word.size());
  for (auto it = word.rbegin(); it != word.rend(); ++it) factors.push_back(thetaTerm(n, *it));
  return mkSeq(factors);
}

SumPtr permToSum(const Permutation& p) {
  std::uint64_t size = p.size();
  if (p.isIdentity()) return mkIdentityD(size);
  std::vector<std::uint32_t> word = adjacentFactorization(p);
  std::vector<SumPtr> layers;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    std::uint64_t i = *it;
    SumPtr mid = mkGamma(1, 1);
    if (size - 2 - i > 0) mid = mkDirectSum(mid, mkIdentityD(size - 2 - i));
    if (i > 0) mid = mkDirectSum(mkIdentityD(i), mid);
    layers.push_back(mid);
  }
  SumPtr acc = layers.back();
  for (size_t k = layers.size() - 1; k-- > 0;) acc = mkSeqS(layers[k], acc);
  return acc;
}

SumPtr expandTensor(const SumPtr& f, const SumPtr& h, const Signature& sig) {
  std::uint64_t df = dim(f, sig);
  std::uint64_t dh = dim(h, sig);
  if (df == 1) return h;
  if (dh == 1) return f;
  auto copies = [](const SumPtr& t, std::uint64_t count) {
    SumPtr acc = t;
    for (std::uint64_t k = 1; k < count; ++k) acc = mkDirectSum(acc, t);
    return acc;
  };
  // Diagram order: copies of h, s_{df,dh} as a gamma word, copies of f,
  // s_{dh,df} back.
  SumPtr first = copies(h, df);
  SumPtr s1 = permToSum(tensorSym(df, dh));
  SumPtr mid = copies(f, dh);
  SumPtr s2 = permToSum(tensorSym(dh, df));
  return mkSeqS(first, mkSeqS(s1, mkSeqS(mid, s2)));
}

SumPtr aTranslate(const CtrlPtr& t, const Signature& sig) {
  switch (t->kind) {
    case CtrlKind::Identity:
      return mkIdentityD(std::uint64_t(1) << t->idWires);
    case CtrlKind::NotGate:
      return mkGamma(1, 1);
    case CtrlKind::Gen:
      return mkGenTilde(t->name, t->params);
    case CtrlKind::Swap:
      return permToSum(tensorSym(std::uint64_t(1) << t->swapTop, std::uint64_t(1) << t->swapBot));
    case CtrlKind::Seq:
      return mkSeqS(aTranslate(t->a, sig), aTranslate(t->b, sig));
    case CtrlKind::Par: {
      if (t->a->kind == CtrlKind::Identity) {
        // id_m + f expands to 2^m diagonal copies of A(f)
        std::uint64_t copies = std::uint64_t(1) << t->a->idWires;
        SumPtr body = aTranslate(t->b, sig);
        SumPtr acc = body;
        for (std::uint64_t k = 1; k < copies; ++k) acc = mkDirectSum(acc, body);
        return acc;
      }
      return expandTensor(aTranslate(t->a, sig), aTranslate(t->b, sig), sig);
    }
    case CtrlKind::Ctrl: {
      SumPtr body = aTranslate(t->a, sig);
      std::uint64_t d = dim(body, sig);
      return t->polarity == 1 ? mkDirectSum(mkIdentityD(d), body)
                              : mkDirectSum(body, mkIdentityD(d));
    }
  }
  fail(Err::InvalidArgument, "corrupt term");
}

// --- bTranslate ---------------------------------------------------------------

namespace {

struct GenSlice {
  std::uint64_t above = 0;  // identity dimension above the generator block
  std::string name;
  std::vector<double> params;
  int genWires = 0;
  std::uint64_t below = 0;  // identity dimension below
};

struct SumSlice {
  bool isGen = false;
  SumPtr perm;  // when !isGen: a generator-free layer at full dimension
  GenSlice gen;
};

void flattenSum(const SumPtr& s, const Signature& sig, std::vector<SumSlice>& out) {
  switch (s->kind) {
    case SumKind::IdentityD:
      return;
    case SumKind::Gamma: {
      SumSlice sl;
      sl.perm = s;
      out.push_back(sl);
      return;
    }
    case SumKind::GenTilde: {
      SumSlice sl;
      sl.isGen = true;
      sl.gen.name = s->name;
      sl.gen.params = s->params;
      sl.gen.genWires = sig.require(s->name).wires;
      out.push_back(sl);
      return;
    }
    case SumKind::SeqS:
      flattenSum(s->a, sig, out);
      flattenSum(s->b, sig, out);
      return;
    case SumKind::DirectSum: {
      std::uint64_t da = dim(s->a, sig);
      std::uint64_t db = dim(s->b, sig);
      std::vector<SumSlice> left, right;
      flattenSum(s->a, sig, left);
      flattenSum(s->b, sig, right);
      for (auto& sl : left) {
        if (sl.isGen)
          sl.gen.below += db;
        else
          sl.perm = mkDirectSum(sl.perm, mkIdentityD(db));
        out.push_back(sl);
      }
      for (auto& sl : right) {
        if (sl.isGen)
          sl.gen.above += da;
        else
          sl.perm = mkDirectSum(mkIdentityD(da), sl.perm);
        out.push_back(sl);
      }
      return;
    }
  }
}

Permutation evalPermSum(const SumPtr& s, const Signature& sig) {
  return std::get<Permutation>(evalSum(s, Backend(BackendKind::Perm), sig));
}

CtrlPtr bTranslateRec(const SumPtr& s, const Signature& sig);

CtrlPtr slicePipeline(const SumPtr& s, int m, const Signature& sig) {
  std::vector<SumSlice> slices;
  flattenSum(s, sig, slices);
  std::vector<CtrlPtr> factors;
  std::uint64_t total = std::uint64_t(1) << m;
  for (const auto& sl : slices) {
    if (!sl.isGen) {
      Permutation p = evalPermSum(sl.perm, sig);
      if (p.isIdentity()) continue;
      factors.push_back(beta(p));
      continue;
    }
    std::uint64_t gdim = std::uint64_t(1) << sl.gen.genWires;
    if (sl.gen.above + gdim + sl.gen.below != total || total < gdim)
      fail(Err::UnplaceableGenerator,
           "generator '" + sl.gen.name + "' cannot be placed in a 2^" + std::to_string(m) +
               " context");
    // id_a (+) g (+) id_b = sigma^{-1} o (id_{a+b} (+) g) o sigma with
    // sigma = id_a (+) gamma_{gdim, b}; the inner block is a control tower.
    CtrlPtr core = mkGen(sl.gen.name, sl.gen.params);
    for (int k = sl.gen.genWires; k < m; ++k) core = mkCtrl(1, core);
    if (sl.gen.below == 0) {
      factors.push_back(core);
    } else {
      Permutation sigma =
          directSum(Permutation::identity(sl.gen.above), gamma(gdim, sl.gen.below));
      factors.push_back(beta(sigma));
      factors.push_back(core);
      factors.push_back(beta(inverse(sigma)));
    }
  }
  if (factors.empty()) return mkIdentity(m);
  return mkSeq(factors);
}

CtrlPtr bTranslateRec(const SumPtr& s, const Signature& sig) {
  std::uint64_t d = dim(s, sig);
  if (!isPowerOfTwo(d)) fail(Err::NotPowerOfTwo, "bTranslate: dimension is not a power of two");
  int m = log2Exact(d);
  if (!containsGen(s)) {
    Permutation p = evalPermSum(s, sig);
    return beta(p);
  }
  switch (s->kind) {
    case SumKind::SeqS:
      return mkSeq(bTranslateRec(s->a, sig), bTranslateRec(s->b, sig));
    case SumKind::GenTilde:
      return mkGen(s->name, s->params);
    case SumKind::DirectSum: {
      std::uint64_t da = dim(s->a, sig);
      std::uint64_t db = dim(s->b, sig);
      if (equalSums(s->a, s->b) && isPowerOfTwo(da))
        return mkPar(mkIdentity(1), bTranslateRec(s->a, sig));
      if (s->a->kind == SumKind::IdentityD && da == db)
        return mkCtrl(1, bTranslateRec(s->b, sig));
      if (s->b->kind == SumKind::IdentityD && da == db)
        return mkCtrl(0, bTranslateRec(s->a, sig));
      return slicePipeline(s, m, sig);
    }
    default:
      return slicePipeline(s, m, sig);
  }
}

}  // namespace

CtrlPtr bTranslate(const SumPtr& s, const Signature& sig) { return bTranslateRec(s, sig); }

// --- Gray J machinery ----------------------------------------------------------

Gf2Matrix zeta(int n, std::uint64_t i) {
  std::uint64_t size = std::uint64_t(1) << n;
  if (size < 2 || i > size - 2) fail(Err::IndexOutOfRange, "zeta: index out of range");
  Gf2Matrix j(2);
  j.set(0, 0, true);
  j.set(0, 1, true);
  j.set(1, 0, true);
  Gf2Matrix mid = j;
  if (i > 0) mid = blockDiag(Gf2Matrix::identity(i), mid);
  if (size - 2 - i > 0) mid = blockDiag(mid, Gf2Matrix::identity(size - 2 - i));
  Permutation r = grayRank(n);
  Gf2Matrix rm = Gf2Matrix::fromPermutation(r);
  Gf2Matrix rinv = Gf2Matrix::fromPermutation(inverse(r));
  // J placed at the Gray-adjacent pair (r(i), r(i+1)): relabel through r
  return mul(mul(rm, mid), rinv);
}

Gf2Matrix aJ(const CtrlPtr& t, const Signature& sig) {
  return std::get<Gf2Matrix>(evalCtrl(t, Backend(BackendKind::Gf2), sig));
}

CtrlPtr bJ(const GrayWord& w, const Signature& sig) {
  std::uint64_t size = std::uint64_t(1) << w.n;
  if (w.letters.empty()) return mkIdentity(w.n);
  std::vector<CtrlPtr> factors;
  // function-order product reversed into diagram order
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    if (size < 2 || it->i > size - 2) fail(Err::IndexOutOfRange, "bJ: letter index out of range");
    GrayContext ctx = grayContext(w.n, it->i);
    if (it->kind == GrayLetterKind::Theta) {
      factors.push_back(multiCtrl(ctx.prefix, ctx.suffix, mkNot(), sig));
      continue;
    }
    // h_n(i) < h_n(i+1) lexicographically iff the flipped bit rises 0 -> 1
    bool ascending = grayCode(w.n, it->i)[ctx.flipIndex] == '0';
    bool useJ = (it->kind == GrayLetterKind::Zeta) == ascending;
    CtrlPtr body = useJ ? mkGen("j") : mkSeq(mkGen("j"), mkGen("j"));
    factors.push_back(multiCtrl(ctx.prefix, ctx.suffix, body, sig));
  }
  return mkSeq(factors);
}

Gf2Matrix grayWordMatrix(const GrayWord& w) {
  std::uint64_t size = std::uint64_t(1) << w.n;
  Gf2Matrix acc = Gf2Matrix::identity(size);
  for (const auto& letter : w.letters) {
    Gf2Matrix l(1);
    if (letter.kind == GrayLetterKind::Theta) {
      l = Gf2Matrix::fromPermutation(grayTransposition(w.n, letter.i));
    } else {
      l = zeta(w.n, letter.i);
      if (letter.kind == GrayLetterKind::ZetaInv) l = mul(l, l);
    }
    acc = mul(acc, l);
  }
  return acc;
}

namespace {

// Adjacent row operation kinds recorded during elimination.
enum class RowOp { Swap, AddDown, AddUp };  // AddDown: row i+1 ^= row i; AddUp: row i ^= row i+1

struct RecordedOp {
  RowOp op;
  std::uint64_t i;
};

void applyOp(Gf2Matrix& m, RowOp op, std::uint64_t i) {
  std::uint64_t dim = m.dim();
  for (std::uint64_t c = 0; c < dim; ++c) {
    bool top = m.get(i, c), bot = m.get(i + 1, c);
    switch (op) {
      case RowOp::Swap:
        m.set(i, c, bot);
        m.set(i + 1, c, top);
        break;
      case RowOp::AddDown:
        m.set(i + 1, c, bot ^ top);
        break;
      case RowOp::AddUp:
        m.set(i, c, top ^ bot);
        break;
    }
  }
}

// dst ^= src using only adjacent operations; src moved next to dst and back.
void addRow(Gf2Matrix& m, std::vector<RecordedOp>& ops, std::uint64_t src, std::uint64_t dst) {
  auto emit = [&](RowOp op, std::uint64_t i) {
    applyOp(m, op, i);
    ops.push_back({op, i});
  };
  if (src + 1 == dst) {
    emit(RowOp::AddDown, src);
    return;
  }
  if (dst + 1 == src) {
    emit(RowOp::AddUp, dst);
    return;
  }
  if (src < dst) {
    for (std::uint64_t k = src; k + 2 <= dst; ++k) emit(RowOp::Swap, k);
    emit(RowOp::AddDown, dst - 1);
    for (std::uint64_t k = dst - 1; k-- > src;) emit(RowOp::Swap, k);
  } else {
    for (std::uint64_t k = src; k-- > dst + 1;) emit(RowOp::Swap, k);
    emit(RowOp::AddUp, dst);
    for (std::uint64_t k = dst + 1; k + 1 < src + 1; ++k) emit(RowOp::Swap, k);
  }
}

std::vector<std::uint32_t> thetaWordFor(const Permutation& p, const Permutation& r) {
  return adjacentFactorization(compose(inverse(r), compose(p, r)));
}

}  // namespace

GrayWord factorGl2(const Gf2Matrix& m) {
  if (!isPowerOfTwo(m.dim())) fail(Err::NotPowerOfTwo, "factorGl2: dimension is not a power of two");
  if (!m.isInvertible()) fail(Err::SingularMatrix, "factorGl2: matrix is singular");
  int n = log2Exact(m.dim());
  std::uint64_t dim = m.dim();

  Gf2Matrix work = m;
  std::vector<RecordedOp> ops;
  auto emit = [&](RowOp op, std::uint64_t i) {
    applyOp(work, op, i);
    ops.push_back({op, i});
  };
  for (std::uint64_t col = 0; col < dim; ++col) {
    std::uint64_t pivot = dim;
    for (std::uint64_t r = col; r < dim; ++r) {
      if (work.get(r, col)) {
        pivot = r;
        break;
      }
    }
    if (pivot == dim) fail(Err::SingularMatrix, "factorGl2: elimination found no pivot");
    while (pivot > col) {
      emit(RowOp::Swap, pivot - 1);
      --pivot;
    }
    for (std::uint64_t r = 0; r < dim; ++r)
      if (r != col && work.get(r, col)) addRow(work, ops, col, r);
  }

  // work is now the identity, so m = op_1 * op_2 * ... (each op an involution).
  // Each adjacent op at lexicographic position i is the r_n relabelling of a
  // Gray letter: id_i + X + id = r^-1 theta_{n,i} r, id_i + J + id =
  // r^-1 zeta_{n,i} r, AddDown_i = X_i J_i, AddUp_i = J_i X_i. The whole
  // product is therefore conjugated once by the theta word for r_n^-1.
  GrayWord word;
  word.n = n;
  Permutation r = grayRank(n);
  if (ops.empty()) return word;
  std::vector<std::uint32_t> rWord = thetaWordFor(inverse(r), r);
  for (std::uint32_t i : rWord) word.letters.push_back({GrayLetterKind::Theta, i});
  for (const auto& op : ops) {
    switch (op.op) {
      case RowOp::Swap:
        word.letters.push_back({GrayLetterKind::Theta, op.i});
        break;
      case RowOp::AddDown:
        word.letters.push_back({GrayLetterKind::Theta, op.i});
        word.letters.push_back({GrayLetterKind::Zeta, op.i});
        break;
      case RowOp::AddUp:
        word.letters.push_back({GrayLetterKind::Zeta, op.i});
        word.letters.push_back({GrayLetterKind::Theta, op.i});
        break;
    }
  }
  for (auto it = rWord.rbegin(); it != rWord.rend(); ++it)
    word.letters.push_back({GrayLetterKind::Theta, *it});
  return word;
}

std::string grayWordToJson(const GrayWord& w) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& l : w.letters) {
    const char* kind = l.kind == GrayLetterKind::Theta  ? "theta"
                       : l.kind == GrayLetterKind::Zeta ? "zeta"
                                                        : "zetaInv";
    arr.push_back({{"kind", kind}, {"n", w.n}, {"i", l.i}});
  }
  return arr.dump();
}

GrayWord grayWordFromJsonText(const std::string& text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(Err::SyntaxError, std::string("gray word: bad JSON: ") + e.what());
  }
  GrayWord w;
  bool first = true;
  for (const auto& item : arr) {
    std::string kind = item.at("kind").get<std::string>();
    int n = item.at("n").get<int>();
    std::uint64_t i = item.at("i").get<std::uint64_t>();
    if (first) {
      w.n = n;
      first = false;
    } else if (w.n != n) {
      fail(Err::InvalidArgument, "gray word: letters disagree on n");
    }
    GrayLetterKind k = kind == "theta"  ? GrayLetterKind::Theta
                       : kind == "zeta" ? GrayLetterKind::Zeta
                       : kind == "zetaInv"
                           ? GrayLetterKind::ZetaInv
                           : throw CropError(Err::InvalidArgument, "gray word: bad letter kind");
    w.letters.push_back({k, i});
  }
  return w;
}

}  // namespace cropkit
