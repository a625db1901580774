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

#include <string>
#include <vector>

#include "cropkit/term.hpp"

namespace cropkit {

// Circuit text (.crop):
//   term := par (";" par)* ; par := atom ("+" atom)*
//   atom := "id" INT | "swap" INT INT | "x" | NAME ["(" REAL {"," REAL} ")"]
//         | "c1[" term "]" | "c0[" term "]"
//         | "ctrl[" BITS "_" BITS "](" term ")" | "(" term ")"
// Sum-term text (.srop): same shape with "id@" INT, "gamma" INT INT,
// NAME "~", and "(+)".
// Reals admit "pi" and the forms a*b, a/b, -a.

CtrlPtr parseCtrl(const std::string& text, const Signature& sig);
std::string printCtrl(const CtrlPtr& t);

SumPtr parseSum(const std::string& text, const Signature& sig);
std::string printSum(const SumPtr& s);

// --- shared lexer (also used by the rule-pattern parser) --------------------

enum class Tok { Name, Int, Real, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double num = 0.0;
  long long intval = 0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  // `patternMode` additionally admits '?' and '@' sigils in names.
  explicit Lexer(const std::string& text, bool patternMode = false);

  const Token& peek() const { return cur_; }
  Token next();
  [[noreturn]] void error(const std::string& msg) const;
  bool eatPunct(const std::string& p);
  void expectPunct(const std::string& p);

 private:
  void advance();
  std::string src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  bool patternMode_;
  Token cur_;
};

// Parses a real literal expression: [-] factor (("*"|"/") factor)*,
// factor := NUMBER | "pi".
double parseRealLiteral(Lexer& lex);

std::string formatReal(double v);

}  // namespace cropkit
