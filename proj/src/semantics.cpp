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

#include "cropkit/semantics.hpp"

#include <cmath>

namespace cropkit {

CxMatrix::CxMatrix(std::uint64_t dim) : dim_(dim) {
  if (dim == 0) fail(Err::InvalidArgument, "complex matrix: dimension must be positive");
  if (dim > 4096) fail(Err::CapacityError, "complex matrix: dimension too large");
  e_.assign(dim_ * dim_, {0.0, 0.0});
}

CxMatrix CxMatrix::identity(std::uint64_t dim) {
  CxMatrix m(dim);
  for (std::uint64_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

CxMatrix CxMatrix::fromPermutation(const Permutation& p) {
  CxMatrix m(p.size());
  for (std::uint64_t j = 0; j < p.size(); ++j) m.at(p(j), j) = 1.0;
  return m;
}

CxMatrix CxMatrix::conjTranspose() const {
  CxMatrix out(dim_);
  for (std::uint64_t i = 0; i < dim_; ++i)
    for (std::uint64_t j = 0; j < dim_; ++j) out.at(j, i) = std::conj(at(i, j));
  return out;
}

CxMatrix mul(const CxMatrix& a, const CxMatrix& b) {
  if (a.dim() != b.dim()) fail(Err::SizeMismatch, "complex mul: dimensions differ");
  CxMatrix out(a.dim());
  for (std::uint64_t i = 0; i < a.dim(); ++i)
    for (std::uint64_t k = 0; k < a.dim(); ++k) {
      std::complex<double> aik = a.at(i, k);
      if (aik == std::complex<double>{0.0, 0.0}) continue;
      for (std::uint64_t j = 0; j < a.dim(); ++j) out.at(i, j) += aik * b.at(k, j);
    }
  return out;
}

CxMatrix blockDiag(const CxMatrix& a, const CxMatrix& b) {
  CxMatrix out(a.dim() + b.dim());
  for (std::uint64_t i = 0; i < a.dim(); ++i)
    for (std::uint64_t j = 0; j < a.dim(); ++j) out.at(i, j) = a.at(i, j);
  for (std::uint64_t i = 0; i < b.dim(); ++i)
    for (std::uint64_t j = 0; j < b.dim(); ++j) out.at(a.dim() + i, a.dim() + j) = b.at(i, j);
  return out;
}

CxMatrix kron(const CxMatrix& a, const CxMatrix& b) {
  CxMatrix out(a.dim() * b.dim());
  for (std::uint64_t i = 0; i < a.dim(); ++i)
    for (std::uint64_t j = 0; j < a.dim(); ++j)
      for (std::uint64_t k = 0; k < b.dim(); ++k)
        for (std::uint64_t l = 0; l < b.dim(); ++l)
          out.at(i * b.dim() + k, j * b.dim() + l) = a.at(i, j) * b.at(k, l);
  return out;
}

double maxAbsDiff(const CxMatrix& a, const CxMatrix& b) {
  if (a.dim() != b.dim()) fail(Err::SizeMismatch, "complex compare: dimensions differ");
  double worst = 0.0;
  for (std::uint64_t i = 0; i < a.dim(); ++i)
    for (std::uint64_t j = 0; j < a.dim(); ++j)
      worst = std::max(worst, std::abs(a.at(i, j) - b.at(i, j)));
  return worst;
}

double unitarityDefect(const CxMatrix& u) {
  return maxAbsDiff(mul(u.conjTranspose(), u), CxMatrix::identity(u.dim()));
}

bool isUnitaryExact(const CycloMatrix& u) {
  return mul(u.conjTranspose(), u).isIdentity();
}

BackendKind backendFromName(const std::string& name) {
  if (name == "perm") return BackendKind::Perm;
  if (name == "gf2") return BackendKind::Gf2;
  if (name == "cyclo") return BackendKind::Cyclo;
  if (name == "complex") return BackendKind::Cx;
  fail(Err::InvalidArgument, "unknown backend '" + name + "'");
}

const char* backendName(BackendKind k) {
  switch (k) {
    case BackendKind::Perm:
      return "perm";
    case BackendKind::Gf2:
      return "gf2";
    case BackendKind::Cyclo:
      return "cyclo";
    case BackendKind::Cx:
      return "complex";
  }
  return "?";
}

std::uint64_t valueDim(const Value& v) {
  return std::visit([](const auto& x) -> std::uint64_t {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Permutation>)
      return x.size();
    else
      return x.dim();
  }, v);
}

Value Backend::identity(std::uint64_t dimension) const {
  switch (kind_) {
    case BackendKind::Perm:
      return Permutation::identity(dimension);
    case BackendKind::Gf2:
      return Gf2Matrix::identity(dimension);
    case BackendKind::Cyclo:
      return CycloMatrix::identity(dimension);
    case BackendKind::Cx:
      return CxMatrix::identity(dimension);
  }
  fail(Err::InvalidArgument, "bad backend");
}

Value Backend::fromPerm(const Permutation& p) const {
  switch (kind_) {
    case BackendKind::Perm:
      return p;
    case BackendKind::Gf2:
      return Gf2Matrix::fromPermutation(p);
    case BackendKind::Cyclo:
      return CycloMatrix::fromPermutation(p);
    case BackendKind::Cx:
      return CxMatrix::fromPermutation(p);
  }
  fail(Err::InvalidArgument, "bad backend");
}

namespace {

CycloMatrix cycloBuiltin(const std::string& key) {
  auto half = [](int num, int omegaPow) {
    // num * w^omegaPow / 2
    CycloEntry e = mul(CycloEntry::dyadic(num, 1), CycloEntry::omegaPow(omegaPow));
    return e;
  };
  if (key == "omega") {
    CycloMatrix m(1);
    m.at(0, 0) = CycloEntry::omegaPow(1);
    return m;
  }
  CycloMatrix m(2);
  if (key == "x") {
    m.at(0, 1) = CycloEntry::one();
    m.at(1, 0) = CycloEntry::one();
  } else if (key == "s") {
    m.at(0, 0) = CycloEntry::one();
    m.at(1, 1) = CycloEntry::omegaPow(2);
  } else if (key == "h") {
    // 1/sqrt(2) = (w - w^3)/2
    CycloEntry r = add(half(1, 1), half(-1, 3));
    m.at(0, 0) = r;
    m.at(0, 1) = r;
    m.at(1, 0) = r;
    m.at(1, 1) = neg(r);
  } else if (key == "k") {
    // (1-i)/2 times the all-ones/sign pattern of H
    CycloEntry r = add(CycloEntry::dyadic(1, 1), neg(half(1, 2)));
    m.at(0, 0) = r;
    m.at(0, 1) = r;
    m.at(1, 0) = r;
    m.at(1, 1) = neg(r);
  } else if (key == "v") {
    CycloEntry p = add(CycloEntry::dyadic(1, 1), half(1, 2));   // (1+i)/2
    CycloEntry q = add(CycloEntry::dyadic(1, 1), half(-1, 2));  // (1-i)/2
    m.at(0, 0) = p;
    m.at(0, 1) = q;
    m.at(1, 0) = q;
    m.at(1, 1) = p;
  } else {
    fail(Err::UnknownGenerator, "builtin '" + key + "' not available on the cyclotomic backend");
  }
  return m;
}

CxMatrix cxBuiltin(const std::string& key, const std::vector<double>& params) {
  const std::complex<double> i{0.0, 1.0};
  if (key == "omega") {
    CxMatrix m(1);
    m.at(0, 0) = std::exp(i * (M_PI / 4.0));
    return m;
  }
  if (key == "phase") {
    CxMatrix m(1);
    m.at(0, 0) = std::exp(i * params.at(0));
    return m;
  }
  CxMatrix m(2);
  if (key == "x") {
    m.at(0, 1) = 1.0;
    m.at(1, 0) = 1.0;
  } else if (key == "z") {
    m.at(0, 0) = 1.0;
    m.at(1, 1) = std::exp(i * params.at(0));
  } else if (key == "h") {
    double r = 1.0 / std::sqrt(2.0);
    m.at(0, 0) = r;
    m.at(0, 1) = r;
    m.at(1, 0) = r;
    m.at(1, 1) = -r;
  } else if (key == "s") {
    m.at(0, 0) = 1.0;
    m.at(1, 1) = i;
  } else if (key == "k") {
    std::complex<double> r = (1.0 - i) / std::sqrt(2.0) / std::sqrt(2.0);
    m.at(0, 0) = r;
    m.at(0, 1) = r;
    m.at(1, 0) = r;
    m.at(1, 1) = -r;
  } else if (key == "v") {
    std::complex<double> p = (1.0 + i) / 2.0, q = (1.0 - i) / 2.0;
    m.at(0, 0) = p;
    m.at(0, 1) = q;
    m.at(1, 0) = q;
    m.at(1, 1) = p;
  } else {
    fail(Err::UnknownGenerator, "builtin '" + key + "' not available on the complex backend");
  }
  return m;
}

}  // namespace

Value Backend::builtin(const std::string& key, const std::vector<double>& params) const {
  if (key == "id1") return identity(2);
  switch (kind_) {
    case BackendKind::Perm: {
      if (key == "x") return gamma(1, 1);
      fail(Err::UnknownGenerator, "builtin '" + key + "' not available on the perm backend");
    }
    case BackendKind::Gf2: {
      if (key == "x") return Gf2Matrix::fromPermutation(gamma(1, 1));
      if (key == "j") {
        Gf2Matrix m(2);
        m.set(0, 0, true);
        m.set(0, 1, true);
        m.set(1, 0, true);
        return m;
      }
      fail(Err::UnknownGenerator, "builtin '" + key + "' not available on the gf2 backend");
    }
    case BackendKind::Cyclo:
      return cycloBuiltin(key);
    case BackendKind::Cx:
      return cxBuiltin(key, params);
  }
  fail(Err::InvalidArgument, "bad backend");
}

Value Backend::evalGen(const Signature& sig, const std::string& gen,
                       const std::vector<double>& params) const {
  const GenDecl& d = sig.require(gen);
  if (d.realParams > 0 && !supportsParams())
    fail(Err::ParamsUnsupported, "generator '" + gen + "' takes real parameters, which the " +
                                     backendName(kind_) + " backend does not support");
  if (kind_ == BackendKind::Perm && d.wires == 0)
    fail(Err::UnknownGenerator, "scalar generator '" + gen + "' has no permutation semantics");
  auto key = sig.builtinKey(gen, backendName(kind_));
  if (!key)
    fail(Err::UnknownGenerator,
         "generator '" + gen + "' has no semantics on the " + backendName(kind_) + " backend");
  Value v = builtin(*key, params);
  if (valueDim(v) != (std::uint64_t(1) << d.wires))
    fail(Err::ArityMismatch, "builtin '" + *key + "' dimension does not match generator '" + gen +
                                 "' wire count");
  return v;
}

Value Backend::composeDiagram(const Value& first, const Value& then) const {
  return std::visit(
      [&](const auto& f) -> Value {
        using T = std::decay_t<decltype(f)>;
        const T& g = std::get<T>(then);
        if constexpr (std::is_same_v<T, Permutation>)
          return compose(g, f);
        else
          return mul(g, f);
      },
      first);
}

Value Backend::blockDiagV(const Value& top, const Value& bottom) const {
  return std::visit(
      [&](const auto& a) -> Value {
        using T = std::decay_t<decltype(a)>;
        const T& b2 = std::get<T>(bottom);
        if constexpr (std::is_same_v<T, Permutation>)
          return directSum(a, b2);
        else
          return blockDiag(a, b2);
      },
      top);
}

Value Backend::kronV(const Value& top, const Value& bottom) const {
  return std::visit(
      [&](const auto& a) -> Value {
        using T = std::decay_t<decltype(a)>;
        const T& b2 = std::get<T>(bottom);
        if constexpr (std::is_same_v<T, Permutation>)
          return tensor(a, b2);
        else
          return kron(a, b2);
      },
      top);
}

bool Backend::equal(const Value& a, const Value& b) const {
  if (valueDim(a) != valueDim(b)) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CxMatrix>)
          return maxAbsDiff(x, std::get<CxMatrix>(b)) <= tol_;
        else
          return x == std::get<T>(b);
      },
      a);
}

Value evalCtrl(const CtrlPtr& t, const Backend& b, const Signature& sig) {
  switch (t->kind) {
    case CtrlKind::Identity:
      return b.identity(std::uint64_t(1) << t->idWires);
    case CtrlKind::NotGate:
      return b.evalGen(sig, sig.involution, {});
    case CtrlKind::Gen:
      return b.evalGen(sig, t->name, t->params);
    case CtrlKind::Swap:
      return b.fromPerm(tensorSym(std::uint64_t(1) << t->swapTop, std::uint64_t(1) << t->swapBot));
    case CtrlKind::Seq:
      return b.composeDiagram(evalCtrl(t->a, b, sig), evalCtrl(t->b, b, sig));
    case CtrlKind::Par:
      return b.kronV(evalCtrl(t->a, b, sig), evalCtrl(t->b, b, sig));
    case CtrlKind::Ctrl: {
      Value body = evalCtrl(t->a, b, sig);
      Value id = b.identity(valueDim(body));
      return t->polarity == 1 ? b.blockDiagV(id, body) : b.blockDiagV(body, id);
    }
  }
  fail(Err::InvalidArgument, "corrupt term");
}

Value evalSum(const SumPtr& s, const Backend& b, const Signature& sig) {
  switch (s->kind) {
    case SumKind::IdentityD:
      return b.identity(s->d);
    case SumKind::GenTilde:
      return b.evalGen(sig, s->name, s->params);
    case SumKind::Gamma:
      return b.fromPerm(gamma(s->d, s->d2));
    case SumKind::SeqS: {
      Value l = evalSum(s->a, b, sig);
      Value r = evalSum(s->b, b, sig);
      if (valueDim(l) != valueDim(r))
        fail(Err::ArityMismatch, "sequential composition of unequal dimensions");
      return b.composeDiagram(l, r);
    }
    case SumKind::DirectSum:
      return b.blockDiagV(evalSum(s->a, b, sig), evalSum(s->b, b, sig));
  }
  fail(Err::InvalidArgument, "corrupt sum term");
}

}  // namespace cropkit
