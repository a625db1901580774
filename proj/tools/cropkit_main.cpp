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

// Batch front end over the C API. Exit codes: 0 success, 1 checked-and-false
// (inequivalent / rejected proof / axiom violation), 2 usage or input error,
// 3 budget exhausted.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cropkit/cropkit_c.h"

namespace {

using nlohmann::json;

struct Options {
  std::string sig = "x";
  std::string dataDir;
  bool jsonOut = false;
};

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    std::exit(2);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class Report {
 public:
  Report(std::string command, bool jsonOut) : jsonOut_(jsonOut), start_(clock_::now()) {
    body_["command"] = std::move(command);
    digest_ = 1469598103934665603ull;
  }

  void addInput(const std::string& text) { digest_ = fnv1a(digest_, text); }
  void set(const std::string& key, json value) { body_[key] = std::move(value); }

  // prints the human line or the machine report and returns the exit code
  int finish(int exitCode, const std::string& verdict, const std::string& humanText) {
    if (jsonOut_) {
      body_["inputsDigest"] = digest_;
      body_["verdict"] = verdict;
      body_["wallMs"] =
          std::chrono::duration_cast<std::chrono::milliseconds>(clock_::now() - start_).count();
      std::cout << body_.dump(2) << "\n";
    } else if (!humanText.empty()) {
      std::cout << humanText << "\n";
    }
    return exitCode;
  }

 private:
  using clock_ = std::chrono::steady_clock;
  bool jsonOut_;
  clock_::time_point start_;
  std::uint64_t digest_;
  json body_;
};

struct Ctx {
  ck_ctx* handle = nullptr;
  ~Ctx() { ck_ctx_free(handle); }
};

int openCtx(const Options& opt, Ctx& ctx) {
  char* err = nullptr;
  ctx.handle = ck_ctx_new(opt.sig.c_str(), opt.dataDir.empty() ? nullptr : opt.dataDir.c_str(),
                          &err);
  if (!ctx.handle) {
    std::cerr << "error: " << (err ? err : "cannot load signature") << "\n";
    ck_string_free(err);
    return 1;
  }
  return 0;
}

std::string takeString(char* s) {
  std::string out = s ? s : "";
  ck_string_free(s);
  return out;
}

int failWith(Report& report, ck_status st, char* err) {
  std::string msg = takeString(err);
  std::cerr << "error: " << msg << "\n";
  report.set("error", msg);
  int code = st == CK_FALSE ? 1 : st == CK_ERR_BUDGET ? 3 : 2;
  const char* verdict = st == CK_FALSE ? "false" : st == CK_ERR_BUDGET ? "budget-exhausted"
                                                                       : "error";
  return report.finish(code, verdict, "");
}

ck_term* parseOrExit(Ctx& ctx, const std::string& text, Report& report, int& rc) {
  ck_term* t = nullptr;
  char* err = nullptr;
  ck_status st = ck_parse(ctx.handle, text.c_str(), &t, &err);
  if (st != CK_OK) {
    rc = failWith(report, st, err);
    return nullptr;
  }
  rc = 0;
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cropkit: controlled circuits, Gray-code synthesis, and the control equations"};
  app.require_subcommand(1);

  Options opt;
  if (const char* env = std::getenv("CROPKIT_DATA")) opt.dataDir = env;
  app.add_option("--sig", opt.sig, "signature name or .sig path (default: x)");
  app.add_option("--data", opt.dataDir, "data directory (signatures/, rules/, scripts/)");
  app.add_flag("--json", opt.jsonOut, "emit a machine-readable run report");

  // ---- synth
  auto* synth = app.add_subcommand("synth", "synthesize a circuit from a permutation");
  std::string synthPerm, synthOut;
  synth->add_option("--perm", synthPerm, "permutation file (JSON)")->required();
  synth->add_option("--out", synthOut, "write the circuit to this .crop file");

  // ---- eval
  auto* eval = app.add_subcommand("eval", "evaluate a circuit on a backend");
  std::string evalFile, evalBackend = "perm";
  double evalTol = 1e-9;
  eval->add_option("file", evalFile, ".crop (or .srop) file")->required();
  eval->add_option("--backend", evalBackend, "perm|gf2|cyclo|complex");
  eval->add_option("--tol", evalTol, "complex comparison tolerance");

  // ---- equiv
  auto* equiv = app.add_subcommand("equiv", "compare two circuits on a backend");
  std::string equivA, equivB, equivBackend = "perm";
  double equivTol = 1e-9;
  equiv->add_option("a", equivA, "first .crop file")->required();
  equiv->add_option("b", equivB, "second .crop file")->required();
  equiv->add_option("--backend", equivBackend, "perm|gf2|cyclo|complex");
  equiv->add_option("--tol", equivTol, "complex comparison tolerance");

  // ---- check
  auto* check = app.add_subcommand("check", "replay a proof script");
  std::string checkScript;
  check->add_option("script", checkScript, "proof script (JSON)")->required();

  // ---- search
  auto* search = app.add_subcommand("search", "bounded equivalence search");
  std::string searchA, searchB;
  int searchDepth = 6;
  double searchBudget = 60.0;
  search->add_option("a", searchA, "first .crop file")->required();
  search->add_option("b", searchB, "second .crop file")->required();
  search->add_option("--depth", searchDepth, "maximum number of rule applications");
  search->add_option("--budget", searchBudget, "time budget in seconds");

  // ---- axioms
  auto* axioms = app.add_subcommand("axioms", "run the control-equation and axiom sweeps");
  std::string axBackend = "perm";
  int axMaxN = 3, axTrials = 100;
  std::uint64_t axSeed = 1;
  axioms->add_option("--backend", axBackend, "perm|gf2|cyclo|complex");
  axioms->add_option("--max-n", axMaxN, "maximum wires for instantiated subterms");
  axioms->add_option("--trials", axTrials, "instantiations per rule");
  axioms->add_option("--seed", axSeed, "RNG seed");

  // ---- gray
  auto* gray = app.add_subcommand("gray", "print the Gray-code table");
  int grayN = 3;
  gray->add_option("--n", grayN, "bit count")->required();

  // ---- factor
  auto* factor = app.add_subcommand("factor", "factor an invertible GF(2) matrix into a Gray word");
  std::string factorFile;
  factor->add_option("--gf2", factorFile, "matrix file (JSON)")->required();

  CLI11_PARSE(app, argc, argv);

  std::ostringstream cmdline;
  for (int i = 1; i < argc; ++i) cmdline << argv[i] << " ";

  if (synth->parsed()) {
    Report report("synth", opt.jsonOut);
    report.addInput(cmdline.str());
    Ctx ctx;
    if (openCtx(opt, ctx)) return 2;
    std::string permText = readFile(synthPerm);
    report.addInput(permText);
    ck_term* t = nullptr;
    int letters = 0;
    char* err = nullptr;
    ck_status st = ck_synth(ctx.handle, permText.c_str(), &t, &letters, &err);
    if (st != CK_OK) return failWith(report, st, err);
    std::string circuit = takeString(ck_print(t));
    ck_term_free(t);
    if (!synthOut.empty()) {
      std::ofstream out(synthOut);
      out << circuit << "\n";
    }
    report.set("letters", letters);
    report.set("circuit", circuit);
    std::ostringstream human;
    human << circuit << "\n# gate count: " << letters;
    return report.finish(0, "ok", human.str());
  }

  if (eval->parsed()) {
    Report report("eval", opt.jsonOut);
    report.addInput(cmdline.str());
    Ctx ctx;
    if (openCtx(opt, ctx)) return 2;
    std::string text = readFile(evalFile);
    report.addInput(text);
    char* err = nullptr;
    char* out = nullptr;
    ck_status st;
    if (evalFile.size() > 5 && evalFile.substr(evalFile.size() - 5) == ".srop") {
      ck_sum* s = nullptr;
      st = ck_parse_sum(ctx.handle, text.c_str(), &s, &err);
      if (st != CK_OK) return failWith(report, st, err);
      st = ck_eval_sum(ctx.handle, s, evalBackend.c_str(), evalTol, &out, &err);
      ck_sum_free(s);
    } else {
      int rc = 0;
      ck_term* t = parseOrExit(ctx, text, report, rc);
      if (!t) return rc;
      st = ck_eval(ctx.handle, t, evalBackend.c_str(), evalTol, &out, &err);
      ck_term_free(t);
    }
    if (st != CK_OK) return failWith(report, st, err);
    std::string value = takeString(out);
    report.set("value", json::parse(value));
    return report.finish(0, "ok", value);
  }

  if (equiv->parsed()) {
    Report report("equiv", opt.jsonOut);
    report.addInput(cmdline.str());
    Ctx ctx;
    if (openCtx(opt, ctx)) return 2;
    std::string ta = readFile(equivA), tb = readFile(equivB);
    report.addInput(ta);
    report.addInput(tb);
    int rc = 0;
    ck_term* a = parseOrExit(ctx, ta, report, rc);
    if (!a) return rc;
    ck_term* b = parseOrExit(ctx, tb, report, rc);
    if (!b) {
      ck_term_free(a);
      return rc;
    }
    int equal = 0;
    char* err = nullptr;
    ck_status st = ck_equiv(ctx.handle, a, b, equivBackend.c_str(), equivTol, &equal, &err);
    ck_term_free(a);
    ck_term_free(b);
    if (st != CK_OK) return failWith(report, st, err);
    report.set("equal", equal == 1);
    return report.finish(equal ? 0 : 1, equal ? "equal" : "inequal",
                         equal ? "equal" : "inequal");
  }

  if (check->parsed()) {
    Report report("check", opt.jsonOut);
    report.addInput(cmdline.str());
    Ctx ctx;
    if (openCtx(opt, ctx)) return 2;
    std::string script = readFile(checkScript);
    report.addInput(script);
    char* out = nullptr;
    char* err = nullptr;
    ck_status st = ck_check(ctx.handle, script.c_str(), &out, &err);
    if (st != CK_OK && st != CK_FALSE) return failWith(report, st, err);
    json res = json::parse(takeString(out));
    report.set("result", res);
    std::ostringstream human;
    if (st == CK_OK) {
      human << "Accept (" << res["steps"].get<int>() << " steps)";
      for (const auto& t : res["trace"]) human << "\n  " << t.get<std::string>();
    } else {
      human << "Reject at step " << res["failingStep"].get<int>() << ": "
            << res["message"].get<std::string>();
    }
    ck_string_free(err);
    return report.finish(st == CK_OK ? 0 : 1, st == CK_OK ? "accept" : "reject", human.str());
  }

  if (search->parsed()) {
    Report report("search", opt.jsonOut);
    report.addInput(cmdline.str());
    Ctx ctx;
    if (openCtx(opt, ctx)) return 2;
    std::string ta = readFile(searchA), tb = readFile(searchB);
    report.addInput(ta);
    report.addInput(tb);
    int rc = 0;
    ck_term* a = parseOrExit(ctx, ta, report, rc);
    if (!a) return rc;
    ck_term* b = parseOrExit(ctx, tb, report, rc);
    if (!b) {
      ck_term_free(a);
      return rc;
    }
    char* out = nullptr;
    char* err = nullptr;
    ck_status st = ck_search(ctx.handle, a, b, searchDepth, searchBudget, &out, &err);
    ck_term_free(a);
    ck_term_free(b);
    if (st == CK_OK) {
      std::string script = takeString(out);
      report.set("script", json::parse(script));
      return report.finish(0, "found", script);
    }
    return failWith(report, st, err);
  }

  if (axioms->parsed()) {
    Report report("axioms", opt.jsonOut);
    report.addInput(cmdline.str());
    Ctx ctx;
    if (openCtx(opt, ctx)) return 2;
    char* out = nullptr;
    char* err = nullptr;
    ck_status st =
        ck_axioms(ctx.handle, axBackend.c_str(), axMaxN, axTrials, axSeed, &out, &err);
    if (st != CK_OK && st != CK_FALSE) return failWith(report, st, err);
    json res = json::parse(takeString(out));
    report.set("result", res);
    std::ostringstream human;
    human << "control equations: " << res["control"]["passed"] << "/" << res["control"]["cases"]
          << " passed";
    if (res.contains("bipermutative"))
      human << "\nbipermutative axioms: " << res["bipermutative"]["passed"] << "/"
            << res["bipermutative"]["cases"] << " passed";
    if (!res["ok"].get<bool>()) {
      for (const auto& group : {"control", "bipermutative"}) {
        if (!res.contains(group)) continue;
        for (const auto& f : res[group]["failures"])
          human << "\ncounterexample: " << f.get<std::string>();
      }
    }
    ck_string_free(err);
    return report.finish(st == CK_OK ? 0 : 1, st == CK_OK ? "ok" : "violated", human.str());
  }

  if (gray->parsed()) {
    Report report("gray", opt.jsonOut);
    report.addInput(cmdline.str());
    char* out = nullptr;
    char* err = nullptr;
    ck_status st = ck_gray_table(grayN, &out, &err);
    if (st != CK_OK) return failWith(report, st, err);
    json res = json::parse(takeString(out));
    report.set("table", res);
    std::ostringstream human;
    human << "Binary";
    human << std::setw(2 + std::max(0, grayN - 6)) << "";
    human << "Gray    Rank";
    for (const auto& row : res["rows"]) {
      human << "\n"
            << row["binary"].get<std::string>() << "  " << row["gray"].get<std::string>() << "  "
            << row["rank"].get<std::uint64_t>();
    }
    return report.finish(0, "ok", human.str());
  }

  if (factor->parsed()) {
    Report report("factor", opt.jsonOut);
    report.addInput(cmdline.str());
    Ctx ctx;
    if (openCtx(opt, ctx)) return 2;
    std::string text = readFile(factorFile);
    report.addInput(text);
    char* out = nullptr;
    char* err = nullptr;
    ck_status st = ck_factor_gf2(ctx.handle, text.c_str(), &out, &err);
    if (st != CK_OK) return failWith(report, st, err);
    std::string word = takeString(out);
    json parsed = json::parse(word);
    report.set("word", parsed);
    report.set("length", parsed.size());
    std::ostringstream human;
    human << word << "\n# word length: " << parsed.size();
    return report.finish(0, "ok", human.str());
  }

  return 2;
}
