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

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "cropkit/cyclo.hpp"
#include "cropkit/gf2.hpp"
#include "cropkit/perm.hpp"
#include "cropkit/term.hpp"

namespace cropkit {

class CxMatrix {
 public:
  explicit CxMatrix(std::uint64_t dim);

  std::uint64_t dim() const { return dim_; }
  std::complex<double>& at(std::uint64_t r, std::uint64_t c) { return e_[r * dim_ + c]; }
  const std::complex<double>& at(std::uint64_t r, std::uint64_t c) const { return e_[r * dim_ + c]; }

  static CxMatrix identity(std::uint64_t dim);
  static CxMatrix fromPermutation(const Permutation& p);
  CxMatrix conjTranspose() const;

 private:
  std::uint64_t dim_;
  std::vector<std::complex<double>> e_;
};

CxMatrix mul(const CxMatrix& a, const CxMatrix& b);
CxMatrix blockDiag(const CxMatrix& a, const CxMatrix& b);
CxMatrix kron(const CxMatrix& a, const CxMatrix& b);
double maxAbsDiff(const CxMatrix& a, const CxMatrix& b);

// ||U^dag U - I||_max; the complex backend promises <= 1e-9 on eval outputs.
double unitarityDefect(const CxMatrix& u);
bool isUnitaryExact(const CycloMatrix& u);

enum class BackendKind { Perm, Gf2, Cyclo, Cx };

BackendKind backendFromName(const std::string& name);
const char* backendName(BackendKind k);

using Value = std::variant<Permutation, Gf2Matrix, CycloMatrix, CxMatrix>;

std::uint64_t valueDim(const Value& v);

// One home for all model maps: dispatches generators through the signature's
// backendKeys into the builtin table, and provides the algebra (composition
// in diagram order, direct sum, Kronecker) each model interprets.
class Backend {
 public:
  explicit Backend(BackendKind kind, double tol = 1e-9) : kind_(kind), tol_(tol) {}

  BackendKind kind() const { return kind_; }
  double tol() const { return tol_; }
  bool supportsParams() const { return kind_ == BackendKind::Cx; }

  Value identity(std::uint64_t dimension) const;
  Value fromPerm(const Permutation& p) const;
  Value evalGen(const Signature& sig, const std::string& gen,
                const std::vector<double>& params) const;
  // Diagram order: `first`, then `then`.
  Value composeDiagram(const Value& first, const Value& then) const;
  Value blockDiagV(const Value& top, const Value& bottom) const;
  Value kronV(const Value& top, const Value& bottom) const;
  bool equal(const Value& a, const Value& b) const;

 private:
  Value builtin(const std::string& key, const std::vector<double>& params) const;
  BackendKind kind_;
  double tol_;
};

// alpha and its extensions: control value 1 selects the second diagonal
// block, Par is Kronecker with the top factor most significant, Swap(m,n)
// acts as s_{2^m,2^n}, Seq composes in diagram order.
Value evalCtrl(const CtrlPtr& t, const Backend& b, const Signature& sig);
Value evalSum(const SumPtr& s, const Backend& b, const Signature& sig);

}  // namespace cropkit
