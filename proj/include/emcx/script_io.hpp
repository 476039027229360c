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

#ifndef EMCX_SCRIPT_IO_HPP
#define EMCX_SCRIPT_IO_HPP

#include <string>
#include <vector>

#include "emcx/parser.hpp"
#include "emcx/proof.hpp"
#include "emcx/sexpr.hpp"

namespace emcx {

// Proof-script file format: one S-expression per file, UTF-8.
//
//   (script NAME
//     (calculus base-em)
//     (meta (A "N") (B "E -> E -> E"))
//     (goal "lhs" "rhs")
//     (deps other-lemma ...)
//     (steps
//       (rewrite R2 (lhs 0 1) forward)
//       (beta (rhs 0))
//       (eta (lhs) contract)
//       (use-lemma foo (lhs 1) backward (inst (A "1")))
//       (ext-injective circ)
//       (em-extend)
//       (apply-both u "E")
//       (abstract-both e "E")
//       (trans "term") (symm) (refl)))
//
// Terms are strings in the concrete term grammar, read in the script's
// metavariable context. print/parse round-trips exactly up to whitespace.

namespace scriptio {

inline SExpr path_to_sexpr(int side, const Path& p) {
  std::vector<SExpr> items;
  items.push_back(SExpr::sym(side == 0 ? "lhs" : "rhs"));
  for (int i : p) items.push_back(SExpr::sym(std::to_string(i)));
  return SExpr::list(std::move(items));
}

inline void sexpr_to_path(const SExpr& e, int& side, Path& p) {
  if (!e.is_list() || e.size() == 0) fail(Err::ParseError, "path must be (lhs ...) or (rhs ...)");
  std::string s = e.at(0).sym_text();
  if (s == "lhs")
    side = 0;
  else if (s == "rhs")
    side = 1;
  else
    fail(Err::ParseError, "path side must be lhs or rhs");
  p.clear();
  for (size_t i = 1; i < e.size(); ++i) p.push_back(std::stoi(e.at(i).sym_text()));
}

inline const char* dir_name(Direction d) {
  return d == Direction::Forward ? "forward" : "backward";
}

inline Direction parse_dir(const std::string& s) {
  if (s == "forward") return Direction::Forward;
  if (s == "backward") return Direction::Backward;
  fail(Err::ParseError, "direction must be forward or backward");
}

inline SExpr step_to_sexpr(const ProofStep& st) {
  std::vector<SExpr> xs;
  xs.push_back(SExpr::sym(step_kind_name(st.kind)));
  switch (st.kind) {
    case StepKind::Rewrite:
      xs.push_back(SExpr::sym(st.name));
      xs.push_back(path_to_sexpr(st.side, st.path));
      xs.push_back(SExpr::sym(dir_name(st.dir)));
      break;
    case StepKind::Beta:
      xs.push_back(path_to_sexpr(st.side, st.path));
      break;
    case StepKind::Eta:
      xs.push_back(path_to_sexpr(st.side, st.path));
      xs.push_back(SExpr::sym(st.dir == Direction::Forward ? "contract" : "expand"));
      break;
    case StepKind::UseLemma: {
      xs.push_back(SExpr::sym(st.name));
      xs.push_back(path_to_sexpr(st.side, st.path));
      xs.push_back(SExpr::sym(dir_name(st.dir)));
      std::vector<SExpr> inst;
      inst.push_back(SExpr::sym("inst"));
      for (const auto& [n, t] : st.subst)
        inst.push_back(SExpr::list({SExpr::sym(n), SExpr::str(print_term(t))}));
      xs.push_back(SExpr::list(std::move(inst)));
      break;
    }
    case StepKind::ExtInjective:
      xs.push_back(SExpr::sym(const_ascii(st.wrap_const)));
      break;
    case StepKind::EmExtend:
      break;
    case StepKind::ApplyBoth:
      xs.push_back(SExpr::sym(st.term.name()));
      xs.push_back(SExpr::str(st.term.var_type().str()));
      break;
    case StepKind::AbstractBoth:
      xs.push_back(SExpr::sym(st.var_name));
      xs.push_back(SExpr::str(st.var_type.str()));
      break;
    case StepKind::Trans:
      xs.push_back(SExpr::str(print_term(st.term)));
      break;
    case StepKind::Refl:
    case StepKind::Symm:
      break;
  }
  return SExpr::list(std::move(xs));
}

inline ProofStep sexpr_to_step(const SExpr& e, const Context& ctx) {
  if (!e.is_list() || e.size() == 0) fail(Err::ParseError, "step must be a list");
  std::string head = e.at(0).sym_text();
  ProofStep st;
  if (head == "rewrite") {
    st.kind = StepKind::Rewrite;
    st.name = e.at(1).sym_text();
    sexpr_to_path(e.at(2), st.side, st.path);
    st.dir = parse_dir(e.at(3).sym_text());
  } else if (head == "beta") {
    st.kind = StepKind::Beta;
    sexpr_to_path(e.at(1), st.side, st.path);
  } else if (head == "eta") {
    st.kind = StepKind::Eta;
    sexpr_to_path(e.at(1), st.side, st.path);
    std::string d = e.at(2).sym_text();
    st.dir = d == "contract" ? Direction::Forward : Direction::Backward;
  } else if (head == "use-lemma") {
    st.kind = StepKind::UseLemma;
    st.name = e.at(1).sym_text();
    sexpr_to_path(e.at(2), st.side, st.path);
    st.dir = parse_dir(e.at(3).sym_text());
    if (e.size() > 4) {
      const SExpr& inst = e.at(4);
      if (!inst.is_list() || inst.size() == 0 || !inst.at(0).is_sym("inst"))
        fail(Err::ParseError, "expected (inst ...) block");
      for (size_t i = 1; i < inst.size(); ++i) {
        const SExpr& pair = inst.at(i);
        st.subst.emplace_back(pair.at(0).sym_text(), parse_term(pair.at(1).str_text(), ctx));
      }
    }
  } else if (head == "ext-injective") {
    st.kind = StepKind::ExtInjective;
    auto c = const_by_name(e.at(1).sym_text());
    if (!c) fail(Err::ParseError, "unknown constant in ext-injective");
    st.wrap_const = *c;
  } else if (head == "em-extend") {
    st.kind = StepKind::EmExtend;
  } else if (head == "apply-both") {
    st.kind = StepKind::ApplyBoth;
    st.term = Term::var(e.at(1).sym_text(), parse_type(e.at(2).str_text()));
  } else if (head == "abstract-both") {
    st.kind = StepKind::AbstractBoth;
    st.var_name = e.at(1).sym_text();
    st.var_type = parse_type(e.at(2).str_text());
  } else if (head == "trans") {
    st.kind = StepKind::Trans;
    st.term = parse_term(e.at(1).str_text(), ctx);
  } else if (head == "refl") {
    st.kind = StepKind::Refl;
  } else if (head == "symm") {
    st.kind = StepKind::Symm;
  } else {
    fail(Err::ParseError, "unknown step '" + head + "'");
  }
  return st;
}

}  // namespace scriptio

inline std::string print_script(const ProofScript& s) {
  using namespace scriptio;
  std::vector<SExpr> xs;
  xs.push_back(SExpr::sym("script"));
  xs.push_back(SExpr::sym(s.name));
  xs.push_back(SExpr::list({SExpr::sym("calculus"), SExpr::sym(calc_name(s.calculus))}));
  std::vector<SExpr> meta{SExpr::sym("meta")};
  for (const auto& [n, ty] : s.metavars)
    meta.push_back(SExpr::list({SExpr::sym(n), SExpr::str(ty.str())}));
  xs.push_back(SExpr::list(std::move(meta)));
  xs.push_back(SExpr::list(
      {SExpr::sym("goal"), SExpr::str(print_term(s.lhs)), SExpr::str(print_term(s.rhs))}));
  std::vector<SExpr> deps{SExpr::sym("deps")};
  for (const auto& d : s.deps) deps.push_back(SExpr::sym(d));
  xs.push_back(SExpr::list(std::move(deps)));
  std::vector<SExpr> steps{SExpr::sym("steps")};
  for (const auto& st : s.steps) steps.push_back(step_to_sexpr(st));
  xs.push_back(SExpr::list(std::move(steps)));
  return print_sexpr(SExpr::list(std::move(xs)));
}

inline ProofScript parse_script(const std::string& text) {
  using namespace scriptio;
  SExpr e = parse_sexpr(text);
  if (!e.is_list() || e.size() < 2 || !e.at(0).is_sym("script"))
    fail(Err::ParseError, "expected (script NAME ...)");
  ProofScript s;
  s.name = e.at(1).sym_text();
  Context ctx;
  bool have_goal = false;
  std::vector<const SExpr*> step_block;
  for (size_t i = 2; i < e.size(); ++i) {
    const SExpr& sec = e.at(i);
    if (!sec.is_list() || sec.size() == 0) fail(Err::ParseError, "bad script section");
    std::string tag = sec.at(0).sym_text();
    if (tag == "calculus") {
      s.calculus = rules_for(sec.at(1).sym_text()).id;
    } else if (tag == "meta") {
      for (size_t k = 1; k < sec.size(); ++k) {
        const SExpr& pair = sec.at(k);
        std::string n = pair.at(0).sym_text();
        Type ty = parse_type(pair.at(1).str_text());
        s.metavars.emplace(n, ty);
        ctx.emplace(n, ty);
      }
    } else if (tag == "goal") {
      s.lhs = parse_term(sec.at(1).str_text(), ctx);
      s.rhs = parse_term(sec.at(2).str_text(), ctx);
      have_goal = true;
    } else if (tag == "deps") {
      for (size_t k = 1; k < sec.size(); ++k) s.deps.push_back(sec.at(k).sym_text());
    } else if (tag == "steps") {
      for (size_t k = 1; k < sec.size(); ++k) step_block.push_back(&sec.at(k));
    } else {
      fail(Err::ParseError, "unknown script section '" + tag + "'");
    }
  }
  if (!have_goal) fail(Err::ParseError, "script has no goal");
  for (const SExpr* st : step_block) s.steps.push_back(scriptio::sexpr_to_step(*st, ctx));
  return s;
}

}  // namespace emcx

#endif  // EMCX_SCRIPT_IO_HPP
