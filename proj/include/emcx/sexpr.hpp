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

#ifndef EMCX_SEXPR_HPP
#define EMCX_SEXPR_HPP

#include <memory>
#include <string>
#include <vector>

#include "emcx/error.hpp"

namespace emcx {

// Minimal S-expression reader/writer for the proof-script format. Symbols,
// double-quoted strings (with \" and \\ escapes) and lists; ';' starts a
// comment through end of line.
struct SExpr {
  enum class Kind { Sym, Str, List };
  Kind kind = Kind::Sym;
  std::string text;
  std::vector<SExpr> items;

  static SExpr sym(std::string s) {
    SExpr e;
    e.kind = Kind::Sym;
    e.text = std::move(s);
    return e;
  }
  static SExpr str(std::string s) {
    SExpr e;
    e.kind = Kind::Str;
    e.text = std::move(s);
    return e;
  }
  static SExpr list(std::vector<SExpr> xs) {
    SExpr e;
    e.kind = Kind::List;
    e.items = std::move(xs);
    return e;
  }

  bool is_sym(const std::string& s) const { return kind == Kind::Sym && text == s; }
  bool is_list() const { return kind == Kind::List; }

  const SExpr& at(size_t i) const {
    if (!is_list() || i >= items.size()) fail(Err::ParseError, "s-expression index out of range");
    return items[i];
  }
  size_t size() const { return items.size(); }

  std::string sym_text() const {
    if (kind != Kind::Sym) fail(Err::ParseError, "expected symbol");
    return text;
  }
  std::string str_text() const {
    if (kind != Kind::Str) fail(Err::ParseError, "expected string");
    return text;
  }
};

namespace sexprdetail {

struct Reader {
  const std::string& s;
  size_t pos = 0;

  void skip() {
    for (;;) {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos < s.size() && s[pos] == ';') {
        while (pos < s.size() && s[pos] != '\n') ++pos;
        continue;
      }
      return;
    }
  }

  SExpr read() {
    skip();
    if (pos >= s.size()) fail(Err::ParseError, "unexpected end of s-expression");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      std::vector<SExpr> items;
      for (;;) {
        skip();
        if (pos >= s.size()) fail(Err::ParseError, "unterminated list");
        if (s[pos] == ')') {
          ++pos;
          return SExpr::list(std::move(items));
        }
        items.push_back(read());
      }
    }
    if (c == ')') fail(Err::ParseError, "unexpected ')'");
    if (c == '"') {
      ++pos;
      std::string out;
      while (pos < s.size() && s[pos] != '"') {
        if (s[pos] == '\\' && pos + 1 < s.size()) {
          ++pos;
          out += s[pos];
        } else {
          out += s[pos];
        }
        ++pos;
      }
      if (pos >= s.size()) fail(Err::ParseError, "unterminated string");
      ++pos;
      return SExpr::str(std::move(out));
    }
    size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) && s[pos] != '(' &&
           s[pos] != ')' && s[pos] != '"' && s[pos] != ';')
      ++pos;
    if (start == pos) fail(Err::ParseError, "empty symbol");
    return SExpr::sym(s.substr(start, pos - start));
  }
};

inline void write(const SExpr& e, std::string& out, int indent, bool pretty) {
  switch (e.kind) {
    case SExpr::Kind::Sym:
      out += e.text;
      return;
    case SExpr::Kind::Str: {
      out += '"';
      for (char c : e.text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      out += '"';
      return;
    }
    case SExpr::Kind::List: {
      out += '(';
      for (size_t i = 0; i < e.items.size(); ++i) {
        if (i) {
          bool break_line = pretty && indent >= 0 && e.items[i].is_list();
          if (break_line) {
            out += '\n';
            out.append(static_cast<size_t>(indent + 2), ' ');
          } else {
            out += ' ';
          }
        }
        write(e.items[i], out, pretty ? indent + 2 : indent, pretty);
      }
      out += ')';
      return;
    }
  }
}

}  // namespace sexprdetail

inline SExpr parse_sexpr(const std::string& text) {
  sexprdetail::Reader r{text};
  SExpr e = r.read();
  r.skip();
  if (r.pos != text.size()) fail(Err::ParseError, "trailing input after s-expression");
  return e;
}

inline std::string print_sexpr(const SExpr& e, bool pretty = true) {
  std::string out;
  sexprdetail::write(e, out, pretty ? 0 : -1, pretty);
  if (pretty) out += '\n';
  return out;
}

}  // namespace emcx

#endif  // EMCX_SEXPR_HPP
