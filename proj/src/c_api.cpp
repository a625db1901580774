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

#include "cropkit/cropkit_c.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>

#include <json.hpp>

#include "cropkit/axioms.hpp"
#include "cropkit/dsl.hpp"
#include "cropkit/gray.hpp"
#include "cropkit/rewrite.hpp"
#include "cropkit/semantics.hpp"
#include "cropkit/translate.hpp"

using namespace cropkit;

struct ck_ctx {
  Signature sig;
  Registry registry;
  std::string dataDir;
};

struct ck_term {
  CtrlPtr term;
};

struct ck_sum {
  SumPtr term;
};

namespace {

char* dupString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void setErr(char** err, const std::string& msg) {
  if (err) *err = dupString(msg);
}

ck_status statusFor(const CropError& e) {
  switch (e.code()) {
    case Err::BudgetExhausted:
      return CK_ERR_BUDGET;
    case Err::SemanticMismatch:
      return CK_FALSE;
    default:
      return CK_ERR_INPUT;
  }
}

template <typename F>
ck_status guarded(char** err, F&& fn) {
  try {
    return fn();
  } catch (const CropError& e) {
    setErr(err, std::string(errName(e.code())) + ": " + e.what());
    return statusFor(e);
  } catch (const std::exception& e) {
    setErr(err, std::string("internal: ") + e.what());
    return CK_ERR_INTERNAL;
  }
}

std::string defaultDataDir() {
#ifdef CROPKIT_DATA_DIR
  return CROPKIT_DATA_DIR;
#else
  return "data";
#endif
}

nlohmann::json valueToJson(const Value& v) {
  nlohmann::json j;
  if (std::holds_alternative<Permutation>(v)) {
    const auto& p = std::get<Permutation>(v);
    j["size"] = p.size();
    j["images"] = p.images();
    return j;
  }
  if (std::holds_alternative<Gf2Matrix>(v)) {
    const auto& m = std::get<Gf2Matrix>(v);
    j["dim"] = m.dim();
    nlohmann::json rows = nlohmann::json::array();
    for (std::uint64_t r = 0; r < m.dim(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (std::uint64_t c = 0; c < m.dim(); ++c) row.push_back(m.get(r, c) ? 1 : 0);
      rows.push_back(row);
    }
    j["rows"] = rows;
    return j;
  }
  if (std::holds_alternative<CycloMatrix>(v)) {
    const auto& m = std::get<CycloMatrix>(v);
    j["dim"] = m.dim();
    nlohmann::json rows = nlohmann::json::array();
    for (std::uint64_t r = 0; r < m.dim(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (std::uint64_t c = 0; c < m.dim(); ++c) {
        const CycloEntry& e = m.at(r, c);
        row.push_back({{"coeffs", e.c}, {"log2den", e.log2den}});
      }
      rows.push_back(row);
    }
    j["entries"] = rows;
    return j;
  }
  const auto& m = std::get<CxMatrix>(v);
  j["dim"] = m.dim();
  nlohmann::json rows = nlohmann::json::array();
  for (std::uint64_t r = 0; r < m.dim(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::uint64_t c = 0; c < m.dim(); ++c)
      row.push_back({m.at(r, c).real(), m.at(r, c).imag()});
    rows.push_back(row);
  }
  j["entries"] = rows;
  return j;
}

Permutation permFromJson(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<std::uint32_t> images;
  for (const auto& v : j.at("images")) images.push_back(v.get<std::uint32_t>());
  if (j.contains("size") && j["size"].get<std::uint64_t>() != images.size())
    fail(Err::InvalidArgument, "permutation file: size does not match images");
  return Permutation(std::move(images));
}

Gf2Matrix gf2FromJson(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  const auto& rows = j.at("rows");
  std::uint64_t dim = j.contains("dim") ? j["dim"].get<std::uint64_t>() : rows.size();
  if (rows.size() != dim) fail(Err::InvalidArgument, "gf2 file: dim does not match rows");
  Gf2Matrix m(dim);
  for (std::uint64_t r = 0; r < dim; ++r) {
    if (rows[r].size() != dim) fail(Err::InvalidArgument, "gf2 file: ragged rows");
    for (std::uint64_t c = 0; c < dim; ++c) m.set(r, c, rows[r][c].get<int>() != 0);
  }
  return m;
}

}  // namespace

extern "C" {

ck_ctx* ck_ctx_new(const char* sig, const char* data_dir, char** err) {
  try {
    auto ctx = std::make_unique<ck_ctx>();
    ctx->dataDir = data_dir ? data_dir : defaultDataDir();
    std::string name = sig ? sig : "x";
    std::filesystem::path p = name;
    if (name.find('/') == std::string::npos && name.find(".sig") == std::string::npos)
      p = std::filesystem::path(ctx->dataDir) / "signatures" / (name + ".sig");
    ctx->sig = Signature::fromJsonFile(p.string());
    ctx->registry = registryForSignature(ctx->sig, ctx->dataDir);
    return ctx.release();
  } catch (const CropError& e) {
    setErr(err, std::string(errName(e.code())) + ": " + e.what());
    return nullptr;
  } catch (const std::exception& e) {
    setErr(err, std::string("internal: ") + e.what());
    return nullptr;
  }
}

void ck_ctx_free(ck_ctx* ctx) { delete ctx; }

void ck_string_free(char* s) { std::free(s); }

ck_status ck_parse(ck_ctx* ctx, const char* text, ck_term** out, char** err) {
  return guarded(err, [&] {
    auto t = std::make_unique<ck_term>();
    t->term = parseCtrl(text, ctx->sig);
    wires(t->term, ctx->sig);  // validate arity eagerly
    *out = t.release();
    return CK_OK;
  });
}

ck_status ck_parse_sum(ck_ctx* ctx, const char* text, ck_sum** out, char** err) {
  return guarded(err, [&] {
    auto t = std::make_unique<ck_sum>();
    t->term = parseSum(text, ctx->sig);
    dim(t->term, ctx->sig);
    *out = t.release();
    return CK_OK;
  });
}

void ck_term_free(ck_term* t) { delete t; }
void ck_sum_free(ck_sum* s) { delete s; }

char* ck_print(const ck_term* t) { return dupString(printCtrl(t->term)); }
char* ck_print_sum(const ck_sum* s) { return dupString(printSum(s->term)); }

ck_status ck_wires(ck_ctx* ctx, const ck_term* t, int* out, char** err) {
  return guarded(err, [&] {
    *out = wires(t->term, ctx->sig);
    return CK_OK;
  });
}

ck_status ck_eval(ck_ctx* ctx, const ck_term* t, const char* backend, double tol, char** json_out,
                  char** err) {
  return guarded(err, [&] {
    Backend be(backendFromName(backend), tol > 0 ? tol : 1e-9);
    Value v = evalCtrl(t->term, be, ctx->sig);
    *json_out = dupString(valueToJson(v).dump());
    return CK_OK;
  });
}

ck_status ck_eval_sum(ck_ctx* ctx, const ck_sum* s, const char* backend, double tol,
                      char** json_out, char** err) {
  return guarded(err, [&] {
    Backend be(backendFromName(backend), tol > 0 ? tol : 1e-9);
    Value v = evalSum(s->term, be, ctx->sig);
    *json_out = dupString(valueToJson(v).dump());
    return CK_OK;
  });
}

ck_status ck_equiv(ck_ctx* ctx, const ck_term* a, const ck_term* b, const char* backend,
                   double tol, int* equal_out, char** err) {
  return guarded(err, [&] {
    Backend be(backendFromName(backend), tol > 0 ? tol : 1e-9);
    Value va = evalCtrl(a->term, be, ctx->sig);
    Value vb = evalCtrl(b->term, be, ctx->sig);
    *equal_out = be.equal(va, vb) ? 1 : 0;
    return CK_OK;
  });
}

ck_status ck_synth(ck_ctx* ctx, const char* perm_json, ck_term** out, int* letters_out,
                   char** err) {
  return guarded(err, [&] {
    Permutation p = permFromJson(perm_json);
    CtrlPtr t = beta(p);
    if (letters_out) {
      // one letter per sequential factor (each a multi-controlled NOT)
      int count = 0;
      std::function<void(const CtrlPtr&)> walkSeq = [&](const CtrlPtr& u) {
        if (u->kind == CtrlKind::Seq) {
          walkSeq(u->a);
          walkSeq(u->b);
          return;
        }
        if (u->kind == CtrlKind::Identity) return;
        ++count;
      };
      walkSeq(t);
      *letters_out = count;
    }
    auto h = std::make_unique<ck_term>();
    h->term = t;
    *out = h.release();
    return CK_OK;
  });
}

ck_status ck_factor_gf2(ck_ctx* ctx, const char* gf2_json, char** word_json_out, char** err) {
  (void)ctx;
  return guarded(err, [&] {
    Gf2Matrix m = gf2FromJson(gf2_json);
    GrayWord w = factorGl2(m);
    *word_json_out = dupString(grayWordToJson(w));
    return CK_OK;
  });
}

ck_status ck_check(ck_ctx* ctx, const char* script_json, char** report_json_out, char** err) {
  return guarded(err, [&] {
    ProofScript script = scriptFromJsonText(script_json, ctx->sig);
    CheckResult res = checkProof(script, ctx->registry, ctx->sig);
    nlohmann::json report;
    report["accepted"] = res.accepted;
    report["steps"] = script.steps.size();
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& t : res.trace) trace.push_back(printCtrl(t));
    report["trace"] = trace;
    if (!res.accepted) {
      report["failingStep"] = res.failingStep;
      report["message"] = res.message;
    }
    if (report_json_out) *report_json_out = dupString(report.dump());
    return res.accepted ? CK_OK : CK_FALSE;
  });
}

ck_status ck_search(ck_ctx* ctx, const ck_term* a, const ck_term* b, int max_depth,
                    double budget_seconds, char** script_json_out, char** err) {
  return guarded(err, [&] {
    SearchResult res =
        searchEquiv(a->term, b->term, ctx->registry, ctx->sig, max_depth, budget_seconds);
    switch (res.kind) {
      case SearchResult::Kind::Found:
        if (script_json_out) *script_json_out = dupString(scriptToJsonText(res.script));
        return CK_OK;
      case SearchResult::Kind::Counterexample:
        setErr(err, "CounterexampleBackendValue: " + res.detail);
        return CK_FALSE;
      case SearchResult::Kind::Exhausted:
        setErr(err, "BudgetExhausted: " + res.detail);
        return CK_ERR_BUDGET;
    }
    return CK_ERR_INTERNAL;
  });
}

ck_status ck_gray_table(int n, char** json_out, char** err) {
  return guarded(err, [&] {
    Permutation r = grayRank(n);
    nlohmann::json rows = nlohmann::json::array();
    for (std::uint64_t i = 0; i < r.size(); ++i) {
      std::string binary;
      for (int bit = n - 1; bit >= 0; --bit) binary.push_back((i >> bit) & 1 ? '1' : '0');
      rows.push_back({{"index", i}, {"binary", binary}, {"gray", grayCode(n, i)}, {"rank", r(i)}});
    }
    nlohmann::json j;
    j["n"] = n;
    j["rows"] = rows;
    *json_out = dupString(j.dump());
    return CK_OK;
  });
}

ck_status ck_axioms(ck_ctx* ctx, const char* backend, int max_n, int trials, uint64_t seed,
                    char** report_json_out, char** err) {
  return guarded(err, [&] {
    BackendKind kind = backendFromName(backend);
    SweepReport control = controlEquationSweep(ctx->registry, ctx->sig, kind, max_n,
                                               static_cast<unsigned>(trials), seed);
    nlohmann::json j;
    j["control"] = {{"cases", control.cases},
                    {"passed", control.passed},
                    {"failures", control.failures}};
    bool ok = control.ok();
    if (kind == BackendKind::Perm) {
      std::uint64_t maxSize = std::uint64_t(1) << max_n;
      SweepReport biperm = bipermutativeSweep(maxSize, static_cast<unsigned>(trials), seed + 1);
      j["bipermutative"] = {{"cases", biperm.cases},
                            {"passed", biperm.passed},
                            {"failures", biperm.failures}};
      ok = ok && biperm.ok();
    }
    j["ok"] = ok;
    if (report_json_out) *report_json_out = dupString(j.dump());
    return ok ? CK_OK : CK_FALSE;
  });
}

}  // extern "C"
