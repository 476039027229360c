/* Copyright 2026 The emcx Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef EMCX_PARSER_HPP
#define EMCX_PARSER_HPP

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "emcx/term.hpp"
#include "emcx/typecheck.hpp"

namespace emcx {

// Concrete ASCII grammar:
//
//   type  ::= 'E' | 'N' | 'Nb' | type '->' type          (right assoc)
//   term  ::= '\' ident ':' type '.' term                (lambda)
//           | term term                                  (left assoc)
//           | ident | const | '(' term ')'
//   const ::= 1 0 circ bullet dot star cvx icvx SigB DelB iotB sigB delB jB
//
// Free variables take their type from the supplied context, falling back to
// the paper's naming convention: e x y z u v w : E, a b c d : N,
// m n p q : Nb (decided by the first character; suffixes are free).

inline std::optional<ConstName> const_by_name(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(ConstName::JBar); ++i) {
    ConstName c = static_cast<ConstName>(i);
    if (s == const_ascii(c)) return c;
  }
  return std::nullopt;
}

inline std::optional<Type> conventional_var_type(const std::string& name) {
  if (name.empty()) return std::nullopt;
  switch (name[0]) {
    case 'e': case 'x': case 'y': case 'z': case 'u': case 'v': case 'w':
      return Type::e();
    case 'a': case 'b': case 'c': case 'd':
      return Type::n();
    case 'm': case 'n': case 'p': case 'q':
      return Type::nb();
    default:
      return std::nullopt;
  }
}

class Parser {
 public:
  explicit Parser(const std::string& text, const Context& ctx = {})
      : text_(text), ctx_(ctx) {}

  Type parse_type() {
    Type t = type_expr();
    skip_ws();
    if (pos_ != text_.size()) fail(Err::ParseError, "trailing input after type at " + where());
    return t;
  }

  Term parse_term() {
    Term t = term_expr();
    skip_ws();
    if (pos_ != text_.size()) fail(Err::ParseError, "trailing input after term at " + where());
    return t;
  }

 private:
  const std::string& text_;
  Context ctx_;
  std::map<std::string, Type> bound_;
  size_t pos_ = 0;

  std::string where() const { return "offset " + std::to_string(pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool peek_atom_start() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c == '(' || c == '\\' || c == '0' || c == '1' || c == '_' ||
           std::isalpha(static_cast<unsigned char>(c));
  }

  std::string ident() {
    skip_ws();
    size_t start = pos_;
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '.' && pos_ + 1 < text_.size() &&
          std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
        ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    if (start == pos_) fail(Err::ParseError, "expected identifier at " + where());
    return text_.substr(start, pos_ - start);
  }

  Type type_atom() {
    skip_ws();
    if (eat('(')) {
      Type t = type_expr();
      if (!eat(')')) fail(Err::ParseError, "expected ')' in type at " + where());
      return t;
    }
    std::string id = ident();
    if (id == "E") return Type::e();
    if (id == "N") return Type::n();
    if (id == "Nb") return Type::nb();
    fail(Err::ParseError, "unknown type '" + id + "' at " + where());
  }

  Type type_expr() {
    Type lhs = type_atom();
    skip_ws();
    if (pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>') {
      pos_ += 2;
      return Type::arrow(lhs, type_expr());
    }
    return lhs;
  }

  Term atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail(Err::ParseError, "unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Term t = term_expr();
      if (!eat(')')) fail(Err::ParseError, "expected ')' at " + where());
      return t;
    }
    if (c == '\\') {
      ++pos_;
      std::string name = ident();
      if (!eat(':')) fail(Err::ParseError, "expected ':' after binder at " + where());
      Type ty = type_expr();
      if (!eat('.')) fail(Err::ParseError, "expected '.' after binder type at " + where());
      auto prev = bound_.find(name);
      bool had = prev != bound_.end();
      Type saved = had ? prev->second : Type::e();
      bound_[name] = ty;
      Term body = term_expr();
      if (had)
        bound_[name] = saved;
      else
        bound_.erase(name);
      return Term::lam(name, ty, body);
    }
    if (c == '0' || c == '1') {
      ++pos_;
      return Term::con(c == '0' ? ConstName::Zero : ConstName::One);
    }
    std::string id = ident();
    if (auto cn = const_by_name(id)) return Term::con(*cn);
    auto b = bound_.find(id);
    if (b != bound_.end()) return Term::var(id, b->second);
    auto it = ctx_.find(id);
    if (it != ctx_.end()) return Term::var(id, it->second);
    if (auto ty = conventional_var_type(id)) return Term::var(id, *ty);
    fail(Err::ParseError, "variable '" + id + "' has no declared or conventional type");
  }

  Term term_expr() {
    Term t = atom();
    while (peek_atom_start()) t = Term::app(t, atom());
    return t;
  }
};

inline Term parse_term(const std::string& s, const Context& ctx = {}) {
  return Parser(s, ctx).parse_term();
}

inline Type parse_type(const std::string& s) { return Parser(s).parse_type(); }

// ---------------------------------------------------------------------------
// Printer. parse(print(t)) is alpha-equal to t for every engine-producible
// term; fresh-name suffixes like x.2 stay parseable.

namespace detail {

inline void print_term(const Term& t, std::string& out, bool fun_pos, bool arg_pos) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out += t.name();
      return;
    case Term::Kind::Const:
      out += const_ascii(t.const_name());
      return;
    case Term::Kind::Lam: {
      bool parens = fun_pos || arg_pos;
      if (parens) out += "(";
      out += "\\" + t.name() + ":" + t.bound_type().str() + ". ";
      print_term(t.body(), out, false, false);
      if (parens) out += ")";
      return;
    }
    case Term::Kind::App: {
      bool parens = arg_pos;
      if (parens) out += "(";
      print_term(t.fun(), out, true, false);
      out += " ";
      print_term(t.arg(), out, false, true);
      if (parens) out += ")";
      return;
    }
  }
}

}  // namespace detail

inline std::string print_term(const Term& t) {
  std::string out;
  detail::print_term(t, out, false, false);
  return out;
}

}  // namespace emcx

#endif  // EMCX_PARSER_HPP
