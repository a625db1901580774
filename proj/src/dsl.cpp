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

#include "cropkit/dsl.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cropkit {

// --- lexer -------------------------------------------------------------------

Lexer::Lexer(const std::string& text, bool patternMode)
    : src_(text), patternMode_(patternMode) {
  advance();
}

void Lexer::error(const std::string& msg) const {
  std::ostringstream os;
  os << "syntax error at " << cur_.line << ":" << cur_.col << ": " << msg;
  fail(Err::SyntaxError, os.str());
}

void Lexer::advance() {
  while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
                                src_[pos_] == '\r')) {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  cur_ = Token{};
  cur_.line = line_;
  cur_.col = col_;
  if (pos_ >= src_.size()) {
    cur_.kind = Tok::End;
    return;
  }
  char c = src_[pos_];
  auto take = [&] {
    ++pos_;
    ++col_;
    return c;
  };
  if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
      (patternMode_ && (c == '?' || c == '@'))) {
    std::string name;
    name.push_back(take());
    while (pos_ < src_.size()) {
      char d = src_[pos_];
      if (std::isalnum(static_cast<unsigned char>(d)) || d == '_') {
        c = d;
        name.push_back(take());
      } else {
        break;
      }
    }
    cur_.kind = Tok::Name;
    cur_.text = name;
    return;
  }
  if (std::isdigit(static_cast<unsigned char>(c))) {
    std::string num;
    bool real = false;
    num.push_back(take());
    while (pos_ < src_.size()) {
      char d = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(d))) {
        c = d;
        num.push_back(take());
      } else if ((d == '.' || d == 'e' || d == 'E') && !real) {
        // consume the full real literal, including a signed exponent
        real = true;
        c = d;
        num.push_back(take());
        if ((c == 'e' || c == 'E') && pos_ < src_.size() &&
            (src_[pos_] == '+' || src_[pos_] == '-')) {
          c = src_[pos_];
          num.push_back(take());
        }
      } else if ((d == 'e' || d == 'E') && real) {
        c = d;
        num.push_back(take());
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
          c = src_[pos_];
          num.push_back(take());
        }
      } else {
        break;
      }
    }
    if (real) {
      cur_.kind = Tok::Real;
      cur_.num = std::stod(num);
    } else {
      cur_.kind = Tok::Int;
      cur_.intval = std::stoll(num);
      cur_.num = static_cast<double>(cur_.intval);
    }
    cur_.text = num;
    return;
  }
  // multi-char punct: "(+)"
  if (c == '(' && pos_ + 2 < src_.size() && src_[pos_ + 1] == '+' && src_[pos_ + 2] == ')') {
    take();
    c = src_[pos_];
    take();
    c = src_[pos_];
    take();
    cur_.kind = Tok::Punct;
    cur_.text = "(+)";
    return;
  }
  take();
  cur_.kind = Tok::Punct;
  cur_.text = std::string(1, c);
}

Token Lexer::next() {
  Token t = cur_;
  advance();
  return t;
}

bool Lexer::eatPunct(const std::string& p) {
  if (cur_.kind == Tok::Punct && cur_.text == p) {
    advance();
    return true;
  }
  return false;
}

void Lexer::expectPunct(const std::string& p) {
  if (!eatPunct(p)) error("expected '" + p + "'");
}

double parseRealLiteral(Lexer& lex) {
  bool negate = lex.eatPunct("-");
  auto factor = [&]() -> double {
    const Token& t = lex.peek();
    if (t.kind == Tok::Int || t.kind == Tok::Real) return lex.next().num;
    if (t.kind == Tok::Name && t.text == "pi") {
      lex.next();
      return M_PI;
    }
    lex.error("expected a number");
  };
  double v = factor();
  for (;;) {
    if (lex.eatPunct("*"))
      v *= factor();
    else if (lex.eatPunct("/"))
      v /= factor();
    else
      break;
  }
  return negate ? -v : v;
}

std::string formatReal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// --- controlled-term parser ----------------------------------------------------

namespace {

class CtrlParser {
 public:
  CtrlParser(const std::string& text, const Signature& sig) : lex_(text), sig_(sig) {}

  CtrlPtr parse() {
    CtrlPtr t = term();
    if (lex_.peek().kind != Tok::End) lex_.error("trailing input");
    return t;
  }

 private:
  CtrlPtr term() {
    CtrlPtr t = par();
    while (lex_.eatPunct(";")) t = mkSeq(t, par());
    return t;
  }

  CtrlPtr par() {
    CtrlPtr t = atom();
    while (lex_.eatPunct("+")) t = mkPar(t, atom());
    return t;
  }

  std::vector<double> paramList(int expected) {
    std::vector<double> ps;
    if (lex_.eatPunct("(")) {
      ps.push_back(parseRealLiteral(lex_));
      while (lex_.eatPunct(",")) ps.push_back(parseRealLiteral(lex_));
      lex_.expectPunct(")");
    }
    if (expected >= 0 && static_cast<int>(ps.size()) != expected)
      lex_.error("wrong number of parameters");
    return ps;
  }

  // BITS "_" BITS up to the closing ']'; tokens are glued back together since
  // the underscore lexes into neighbouring names.
  std::pair<std::string, std::string> bitsPair() {
    std::string all;
    while (!(lex_.peek().kind == Tok::Punct && lex_.peek().text == "]")) {
      if (lex_.peek().kind == Tok::End) lex_.error("unterminated control word");
      all += lex_.next().text;
    }
    size_t us = all.find('_');
    if (us == std::string::npos || all.find('_', us + 1) != std::string::npos)
      lex_.error("expected BITS_BITS");
    std::string w = all.substr(0, us), wp = all.substr(us + 1);
    for (char c : w + wp)
      if (c != '0' && c != '1') lex_.error("control word must consist of 0s and 1s");
    return {w, wp};
  }

  CtrlPtr atom() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Punct && t.text == "(") {
      lex_.next();
      CtrlPtr inner = term();
      lex_.expectPunct(")");
      return inner;
    }
    if (t.kind != Tok::Name) lex_.error("expected an atom");
    Token name = lex_.next();
    const std::string& s = name.text;
    if (s == "x") return mkNot();
    if (s == "swap") {
      if (lex_.peek().kind != Tok::Int) lex_.error("swap expects two integers");
      int m = static_cast<int>(lex_.next().intval);
      if (lex_.peek().kind != Tok::Int) lex_.error("swap expects two integers");
      int n = static_cast<int>(lex_.next().intval);
      return mkSwap(m, n);
    }
    if (s.size() > 2 && s.rfind("id", 0) == 0 &&
        s.find_first_not_of("0123456789", 2) == std::string::npos) {
      return mkIdentity(std::stoi(s.substr(2)));
    }
    if (s == "id") {
      if (lex_.peek().kind != Tok::Int) lex_.error("id expects an integer");
      return mkIdentity(static_cast<int>(lex_.next().intval));
    }
    if (s == "c1" || s == "c0") {
      lex_.expectPunct("[");
      CtrlPtr body = term();
      lex_.expectPunct("]");
      return mkCtrl(s == "c1" ? 1 : 0, body);
    }
    if (s == "ctrl") {
      lex_.expectPunct("[");
      auto [w, wp] = bitsPair();
      lex_.expectPunct("]");
      lex_.expectPunct("(");
      CtrlPtr body = term();
      lex_.expectPunct(")");
      return multiCtrl(w, wp, body, sig_);
    }
    // generator; parameter arity checked against the signature when known
    const GenDecl* d = sig_.find(s);
    std::vector<double> ps = paramList(d ? d->realParams : -1);
    return mkGen(s, std::move(ps));
  }

  Lexer lex_;
  const Signature& sig_;
};

class SumParser {
 public:
  SumParser(const std::string& text, const Signature& sig) : lex_(text), sig_(sig) {}

  SumPtr parse() {
    SumPtr t = term();
    if (lex_.peek().kind != Tok::End) lex_.error("trailing input");
    return t;
  }

 private:
  SumPtr term() {
    SumPtr t = par();
    while (lex_.eatPunct(";")) t = mkSeqS(t, par());
    return t;
  }

  SumPtr par() {
    SumPtr t = atom();
    while (lex_.eatPunct("(+)")) t = mkDirectSum(t, atom());
    return t;
  }

  SumPtr atom() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Punct && t.text == "(") {
      lex_.next();
      SumPtr inner = term();
      lex_.expectPunct(")");
      return inner;
    }
    if (t.kind != Tok::Name) lex_.error("expected an atom");
    Token name = lex_.next();
    const std::string& s = name.text;
    if (s == "gamma") {
      if (lex_.peek().kind != Tok::Int) lex_.error("gamma expects two integers");
      std::uint64_t m = static_cast<std::uint64_t>(lex_.next().intval);
      if (lex_.peek().kind != Tok::Int) lex_.error("gamma expects two integers");
      std::uint64_t n = static_cast<std::uint64_t>(lex_.next().intval);
      return mkGamma(m, n);
    }
    if (s == "id") {
      lex_.expectPunct("@");
      if (lex_.peek().kind != Tok::Int) lex_.error("id@ expects an integer");
      return mkIdentityD(static_cast<std::uint64_t>(lex_.next().intval));
    }
    // generator tilde, optionally with parameters: name(1.0)~
    const GenDecl* d = sig_.find(s);
    std::vector<double> ps;
    if (lex_.peek().kind == Tok::Punct && lex_.peek().text == "(") {
      lex_.next();
      ps.push_back(parseRealLiteral(lex_));
      while (lex_.eatPunct(",")) ps.push_back(parseRealLiteral(lex_));
      lex_.expectPunct(")");
    }
    if (d && static_cast<int>(ps.size()) != d->realParams) lex_.error("wrong number of parameters");
    lex_.expectPunct("~");
    return mkGenTilde(s, std::move(ps));
  }

  Lexer lex_;
  const Signature& sig_;
};

// --- printers ----------------------------------------------------------------

void printParams(std::ostringstream& os, const std::vector<double>& ps) {
  if (ps.empty()) return;
  os << '(';
  for (size_t i = 0; i < ps.size(); ++i) os << (i ? "," : "") << formatReal(ps[i]);
  os << ')';
}

// level: 0 = term (seq ok), 1 = par (no bare seq), 2 = atom (no bare seq/par)
void printCtrlRec(std::ostringstream& os, const CtrlPtr& t, int level) {
  switch (t->kind) {
    case CtrlKind::Identity:
      os << "id" << t->idWires;
      return;
    case CtrlKind::NotGate:
      os << "x";
      return;
    case CtrlKind::Gen:
      os << t->name;
      printParams(os, t->params);
      return;
    case CtrlKind::Swap:
      os << "swap " << t->swapTop << " " << t->swapBot;
      return;
    case CtrlKind::Ctrl:
      os << (t->polarity == 1 ? "c1[" : "c0[");
      printCtrlRec(os, t->a, 0);
      os << "]";
      return;
    case CtrlKind::Seq:
      // the grammar is left-associative, so a nested right child is wrapped
      if (level > 0) os << "(";
      printCtrlRec(os, t->a, 0);
      os << " ; ";
      printCtrlRec(os, t->b, 1);
      if (level > 0) os << ")";
      return;
    case CtrlKind::Par:
      if (level > 1) os << "(";
      printCtrlRec(os, t->a, 1);
      os << " + ";
      printCtrlRec(os, t->b, 2);
      if (level > 1) os << ")";
      return;
  }
}

void printSumRec(std::ostringstream& os, const SumPtr& s, int level) {
  switch (s->kind) {
    case SumKind::IdentityD:
      os << "id@" << s->d;
      return;
    case SumKind::Gamma:
      os << "gamma " << s->d << " " << s->d2;
      return;
    case SumKind::GenTilde:
      os << s->name;
      printParams(os, s->params);
      os << "~";
      return;
    case SumKind::SeqS:
      if (level > 0) os << "(";
      printSumRec(os, s->a, 0);
      os << " ; ";
      printSumRec(os, s->b, 1);
      if (level > 0) os << ")";
      return;
    case SumKind::DirectSum:
      if (level > 1) os << "(";
      printSumRec(os, s->a, 1);
      os << " (+) ";
      printSumRec(os, s->b, 2);
      if (level > 1) os << ")";
      return;
  }
}

}  // namespace

CtrlPtr parseCtrl(const std::string& text, const Signature& sig) {
  return CtrlParser(text, sig).parse();
}

std::string printCtrl(const CtrlPtr& t) {
  std::ostringstream os;
  printCtrlRec(os, t, 0);
  return os.str();
}

SumPtr parseSum(const std::string& text, const Signature& sig) {
  return SumParser(text, sig).parse();
}

std::string printSum(const SumPtr& s) {
  std::ostringstream os;
  printSumRec(os, s, 0);
  return os.str();
}

}  // namespace cropkit
