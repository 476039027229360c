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

#ifndef EMCX_RULES_HPP
#define EMCX_RULES_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "emcx/combinator_defs.hpp"
#include "emcx/parser.hpp"
#include "emcx/term.hpp"
#include "emcx/typecheck.hpp"

namespace emcx {

enum class Direction { Forward, Backward };

// An oriented rewrite rule. Patterns are ordinary terms whose free variables
// act as metavariables; their admissible types are declared alongside.
// beta and eta need term-level side conditions, so they are built in.
struct RewriteRule {
  enum class Special { None, Beta, Eta };

  std::string name;
  Term lhs;
  Term rhs;
  std::map<std::string, Type> metavars;
  bool bidirectional = false;
  bool in_normalize = true;
  Special special = Special::None;
  Type eta_edge = Type::e();  // binder type for the eta forms

  static RewriteRule make(const std::string& name, const Term& lhs, const Term& rhs,
                          std::map<std::string, Type> metas, bool bidir = false,
                          bool in_norm = true) {
    RewriteRule r;
    r.name = name;
    r.lhs = lhs;
    r.rhs = rhs;
    r.metavars = std::move(metas);
    r.bidirectional = bidir;
    r.in_normalize = in_norm;
    return r;
  }
};

struct Calculus {
  std::string name;
  Calc id = Calc::BaseEm;
  std::vector<RewriteRule> rules;
  std::set<ConstName> constants;

  const RewriteRule* find_rule(const std::string& rule_name) const {
    for (const auto& r : rules)
      if (r.name == rule_name) return &r;
    return nullptr;
  }
};

// ---------------------------------------------------------------------------
// First-order matching with binders. Metavariable instances may not mention
// variables bound on the term side (they would escape their scope when the
// instance is transplanted into the other pattern).

namespace matchdetail {

struct Bindings {
  std::map<std::string, Term> map;
};

inline bool walk(const Term& pat, const Term& t,
                 std::vector<std::pair<std::string, std::string>>& binders,
                 std::set<std::string>& term_bound, const std::map<std::string, Type>& metas,
                 Bindings& out) {
  switch (pat.kind()) {
    case Term::Kind::Const:
      return t.is_const() && t.const_name() == pat.const_name();
    case Term::Kind::Var: {
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
        if (it->first == pat.name()) {
          return t.is_var() && t.name() == it->second;
        }
        if (t.is_var() && t.name() == it->second) return false;  // shadow crossing
      }
      if (!metas.count(pat.name())) return false;  // undeclared pattern variable
      for (const auto& [n, ty] : free_vars(t))
        if (term_bound.count(n)) return false;  // instance would escape its scope
      auto prev = out.map.find(pat.name());
      if (prev != out.map.end()) return alpha_equal(prev->second, t);
      out.map.emplace(pat.name(), t);
      return true;
    }
    case Term::Kind::App:
      if (!t.is_app()) return false;
      return walk(pat.fun(), t.fun(), binders, term_bound, metas, out) &&
             walk(pat.arg(), t.arg(), binders, term_bound, metas, out);
    case Term::Kind::Lam: {
      if (!t.is_lam() || !(t.bound_type() == pat.bound_type())) return false;
      binders.emplace_back(pat.name(), t.name());
      bool fresh_term_side = term_bound.insert(t.name()).second;
      bool ok = walk(pat.body(), t.body(), binders, term_bound, metas, out);
      binders.pop_back();
      if (fresh_term_side) term_bound.erase(t.name());
      return ok;
    }
  }
  return false;
}

}  // namespace matchdetail

inline std::optional<std::map<std::string, Term>> match_pattern(
    const Term& pat, const Term& t, const std::map<std::string, Type>& metas) {
  matchdetail::Bindings b;
  std::vector<std::pair<std::string, std::string>> binders;
  std::set<std::string> term_bound;
  if (!matchdetail::walk(pat, t, binders, term_bound, metas, b)) return std::nullopt;
  // Declared metavariable types are side conditions: an N slot only accepts
  // node terms, never extended ones.
  for (const auto& [name, inst] : b.map) {
    Type want = metas.at(name);
    Type got = infer_type(inst);
    if (!subtype_le(got, want)) return std::nullopt;
  }
  return b.map;
}

inline Term instantiate(const Term& pat, const std::map<std::string, Term>& bind,
                        const std::map<std::string, Type>& metas) {
  std::vector<std::pair<std::pair<std::string, Type>, Term>> subs;
  for (const auto& [name, inst] : bind) subs.push_back({{name, metas.at(name)}, inst});
  return substitute_all(pat, subs);
}

// ---------------------------------------------------------------------------
// Single-step application

namespace ruledetail {

inline std::optional<Term> beta_step(const Term& t) {
  if (!t.is_app() || !t.fun().is_lam()) return std::nullopt;
  Term f = t.fun();
  Type arg_ty = infer_type(t.arg());
  if (!subtype_le(arg_ty, f.bound_type())) return std::nullopt;  // Sigma 0 is not a redex
  return substitute(f.body(), f.name(), f.bound_type(), t.arg(), arg_ty);
}

inline std::optional<Term> eta_contract(const Term& t, const Type& edge) {
  // \e:T. \x:T. (A e x)  ==>  A   when e, x are not free in A and A : T->T->T
  if (!t.is_lam() || !(t.bound_type() == edge)) return std::nullopt;
  Term inner = t.body();
  if (!inner.is_lam() || !(inner.bound_type() == edge)) return std::nullopt;
  Term body = inner.body();
  if (!body.is_app() || !body.fun().is_app()) return std::nullopt;
  Term a = body.fun().fun();
  Term e_use = body.fun().arg();
  Term x_use = body.arg();
  if (!e_use.is_var() || e_use.name() != t.name()) return std::nullopt;
  if (!x_use.is_var() || x_use.name() != inner.name()) return std::nullopt;
  if (t.name() == inner.name()) return std::nullopt;
  if (occurs_free(a, t.name()) || occurs_free(a, inner.name())) return std::nullopt;
  Type want = Type::arrows({edge, edge}, edge);
  if (!(infer_type(a) == want)) return std::nullopt;
  return a;
}

inline std::optional<Term> eta_expand(const Term& t, const Type& edge) {
  Type want = Type::arrows({edge, edge}, edge);
  if (!(infer_type(t) == want)) return std::nullopt;
  std::set<std::string> avoid;
  for (const auto& [n, _] : free_vars(t)) avoid.insert(n);
  std::string en = fresh_name(edge == Type::e() ? "e" : "p", avoid);
  avoid.insert(en);
  std::string xn = fresh_name(edge == Type::e() ? "x" : "q", avoid);
  Term ev = Term::var(en, edge);
  Term xv = Term::var(xn, edge);
  return Term::lam(en, edge, Term::lam(xn, edge, Term::app(Term::app(t, ev), xv)));
}

}  // namespace ruledetail

// Rewrites the subterm of t addressed by p with the rule used in the given
// direction. `privileged` callers (the proof kernel and the equality search)
// may run forward rules backwards; everyone else gets DirectionUnavailable.
inline Term apply_rule(const RewriteRule& rule, const Term& t, const Path& p,
                       Direction dir = Direction::Forward, bool privileged = false) {
  if (dir == Direction::Backward && !rule.bidirectional && !privileged)
    fail(Err::DirectionUnavailable, rule.name + " is forward-only");
  Term sub = subterm_at(t, p);
  std::optional<Term> out;
  switch (rule.special) {
    case RewriteRule::Special::Beta:
      if (dir == Direction::Backward)
        fail(Err::DirectionUnavailable, "beta expansion is not a rewrite step");
      out = ruledetail::beta_step(sub);
      break;
    case RewriteRule::Special::Eta:
      out = dir == Direction::Forward ? ruledetail::eta_contract(sub, rule.eta_edge)
                                      : ruledetail::eta_expand(sub, rule.eta_edge);
      break;
    case RewriteRule::Special::None: {
      const Term& from = dir == Direction::Forward ? rule.lhs : rule.rhs;
      const Term& to = dir == Direction::Forward ? rule.rhs : rule.lhs;
      auto bind = match_pattern(from, sub, rule.metavars);
      if (!bind) fail(Err::NoMatch, rule.name + " does not match at path");
      for (const auto& [name, _] : free_vars(to))
        if (!bind->count(name))
          fail(Err::SideConditionFailed,
               rule.name + " used backwards is underdetermined (" + name + " unbound)");
      out = instantiate(to, *bind, rule.metavars);
      break;
    }
  }
  if (!out) fail(Err::NoMatch, rule.name + " does not match at path");
  return replace_at(t, p, out->with_calc(t.calc())).with_calc(t.calc());
}

// ---------------------------------------------------------------------------
// The four calculi

namespace ruledetail {

inline Term P(const std::string& s, const Context& ctx = {}) { return parse_term(s, ctx); }

inline RewriteRule beta_rule() {
  RewriteRule r;
  r.name = "beta";
  r.special = RewriteRule::Special::Beta;
  return r;
}

inline RewriteRule eta_rule(const std::string& name, Type edge) {
  RewriteRule r;
  r.name = name;
  r.special = RewriteRule::Special::Eta;
  r.eta_edge = edge;
  return r;
}

inline std::vector<RewriteRule> base_rules() {
  const Type N = Type::n(), Nb = Type::nb(), E = Type::e();
  std::vector<RewriteRule> rs;
  rs.push_back(beta_rule());
  rs.push_back(eta_rule("eta", E));
  rs.push_back(RewriteRule::make("id-circ", P("circ 1"), P("\\e:E. \\x:E. x"), {}));
  rs.push_back(RewriteRule::make("id-bullet", P("bullet 1"), P("\\e:E. \\x:E. x"), {}));
  // bullet (star A) => circ A comes before the general bullet elimination so
  // normalize prefers the shorter result.
  rs.push_back(RewriteRule::make("in-star", P("bullet (star a)"), P("circ a"), {{"a", N}}));
  rs.push_back(RewriteRule::make("in", P("bullet a"), P("circ (star a)"), {{"a", N}}));
  rs.push_back(RewriteRule::make("act", P("circ (dot a b)"),
                                 P("\\e:E. \\x:E. circ a e (circ b e x)"),
                                 {{"a", N}, {"b", N}}));
  rs.push_back(RewriteRule::make("R1", P("circ a x x"), P("x"), {{"a", N}, {"x", E}}));
  rs.push_back(RewriteRule::make("R2", P("circ a x (bullet a x y)"), P("y"),
                                 {{"a", N}, {"x", E}, {"y", E}}));
  rs.push_back(RewriteRule::make("C", P("dot m p"), P("dot p m"), {{"m", Nb}, {"p", Nb}},
                                 /*bidir=*/true, /*in_norm=*/false));
  return rs;
}

inline std::vector<RewriteRule> emergent_zero_rules() {
  const Type Nb = Type::nb();
  std::vector<RewriteRule> rs;
  rs.push_back(RewriteRule::make("circ-zero", P("circ 0"), P("\\e:E. \\x:E. e"), {}));
  rs.push_back(RewriteRule::make("mul-zero-l", P("dot 0 m"), P("0"), {{"m", Nb}}));
  rs.push_back(RewriteRule::make("mul-zero-r", P("dot m 0"), P("0"), {{"m", Nb}}));
  rs.push_back(RewriteRule::make("sig-zero", Term::app(comb_sigma(), Term::con(ConstName::Zero)),
                                 Term::con(ConstName::SigBar), {}));
  rs.push_back(RewriteRule::make("del-zero", Term::app(comb_delta(), Term::con(ConstName::Zero)),
                                 Term::con(ConstName::DelBar), {}));
  rs.push_back(RewriteRule::make("iot-zero", Term::app(comb_iota(), Term::con(ConstName::Zero)),
                                 Term::con(ConstName::IotBar), {}));
  return rs;
}

inline std::vector<RewriteRule> nconvex_zero_rules() {
  const Type Nb = Type::nb();
  std::vector<RewriteRule> rs;
  rs.push_back(
      RewriteRule::make("cvx-zero", P("cvx 0"), P("\\p:Nb. \\q:Nb. p"), {}));
  rs.push_back(RewriteRule::make("mul-zero-l", P("dot 0 m"), P("0"), {{"m", Nb}}));
  rs.push_back(RewriteRule::make("mul-zero-r", P("dot m 0"), P("0"), {{"m", Nb}}));
  rs.push_back(RewriteRule::make("sigc-zero",
                                 Term::app(comb_sigma_c(), Term::con(ConstName::Zero)),
                                 Term::con(ConstName::SigbBar), {}));
  rs.push_back(RewriteRule::make("delc-zero",
                                 Term::app(comb_delta_c(), Term::con(ConstName::Zero)),
                                 Term::con(ConstName::DelbBar), {}));
  rs.push_back(RewriteRule::make("jc-zero", Term::app(comb_j(), Term::con(ConstName::Zero)),
                                 Term::con(ConstName::JBar), {}));
  return rs;
}

// A - (A - circ B) . (circ C)  ==  circ (cvx C A B), in the folded difference
// shape of Prop 7.2 so it lines up with how combinator-lib builds terms.
inline RewriteRule convex_rule() {
  const Type Nb = Type::nb();
  Term A = Term::var("A", Nb), B = Term::var("B", Nb), C = Term::var("C", Nb);
  Term u = Term::var("u", Type::e()), v = Term::var("v", Type::e());
  Term e = Term::var("e", Type::e()), x = Term::var("x", Type::e());
  auto circ3 = [](Term a, Term b, Term c) {
    return Term::app(Term::con(ConstName::Dil), {a, b, c});
  };
  auto iota3 = [](Term a, Term b, Term c) { return Term::app(comb_iota(), {a, b, c}); };
  // (A - circ B) = \u.\v. circ B (circ A u v) (iota A u v)
  Term diffAB = Term::lam(
      "u", Type::e(),
      Term::lam("v", Type::e(), circ3(B, circ3(A, u, v), iota3(A, u, v))));
  // (A - circ B) . (circ C)
  Term mul = Term::lam(
      "u", Type::e(), Term::lam("v", Type::e(), Term::app(diffAB, {u, circ3(C, u, v)})));
  // A - ((A - circ B) . (circ C))
  Term lhs = Term::lam(
      "e", Type::e(),
      Term::lam("x", Type::e(), Term::app(mul, {circ3(A, e, x), iota3(A, e, x)})));
  Term rhs = Term::app(Term::con(ConstName::Dil),
                       Term::app(Term::con(ConstName::Cvx), {C, A, B}));
  return RewriteRule::make("convex", lhs, rhs, {{"A", Nb}, {"B", Nb}, {"C", Nb}},
                           /*bidir=*/true, /*in_norm=*/false);
}

inline Calculus make_base() {
  Calculus c;
  c.name = "base-em";
  c.id = Calc::BaseEm;
  c.rules = base_rules();
  c.constants = {ConstName::One, ConstName::Dil, ConstName::Idil, ConstName::Mul,
                 ConstName::Inv};
  return c;
}

inline Calculus make_emergent() {
  Calculus c = make_base();
  c.name = "emergent";
  c.id = Calc::Emergent;
  for (auto& r : emergent_zero_rules()) c.rules.push_back(r);
  c.constants.insert({ConstName::Zero, ConstName::SigBar, ConstName::DelBar, ConstName::IotBar});
  return c;
}

inline Calculus make_em_convex() {
  Calculus c = make_emergent();
  c.name = "em-convex";
  c.id = Calc::EmConvex;
  c.rules.push_back(RewriteRule::make("in-cvx", P("icvx a"), P("cvx (star a)"), {{"a", Type::n()}}));
  for (auto& r : nconvex_zero_rules()) {
    if (r.name == "mul-zero-l" || r.name == "mul-zero-r") continue;  // already present
    c.rules.push_back(r);
  }
  c.rules.push_back(convex_rule());
  c.constants.insert({ConstName::Cvx, ConstName::Icvx, ConstName::SigbBar, ConstName::DelbBar,
                      ConstName::JBar});
  return c;
}

inline Calculus make_n_convex() {
  const Type N = Type::n(), Nb = Type::nb();
  Calculus c;
  c.name = "n-convex";
  c.id = Calc::NConvex;
  c.rules.push_back(beta_rule());
  c.rules.push_back(eta_rule("eta", Nb));
  c.rules.push_back(RewriteRule::make("id-cvx", P("cvx 1"), P("\\p:Nb. \\q:Nb. q"), {}));
  c.rules.push_back(RewriteRule::make("id-icvx", P("icvx 1"), P("\\p:Nb. \\q:Nb. q"), {}));
  c.rules.push_back(RewriteRule::make("in-cvx-star", P("icvx (star a)"), P("cvx a"), {{"a", N}}));
  c.rules.push_back(RewriteRule::make("in-cvx", P("icvx a"), P("cvx (star a)"), {{"a", N}}));
  c.rules.push_back(RewriteRule::make("act-cvx", P("cvx (dot a b)"),
                                      P("\\p:Nb. \\q:Nb. cvx a p (cvx b p q)"),
                                      {{"a", N}, {"b", N}}));
  c.rules.push_back(RewriteRule::make("R1-cvx", P("cvx a p p"), P("p"), {{"a", N}, {"p", Nb}}));
  c.rules.push_back(RewriteRule::make("R2-cvx", P("cvx a p (icvx a p q)"), P("q"),
                                      {{"a", N}, {"p", Nb}, {"q", Nb}}));
  c.rules.push_back(RewriteRule::make("C", P("dot m p"), P("dot p m"), {{"m", Nb}, {"p", Nb}},
                                      /*bidir=*/true, /*in_norm=*/false));
  for (auto& r : nconvex_zero_rules()) c.rules.push_back(r);
  c.constants = {ConstName::One,  ConstName::Zero,    ConstName::Mul,     ConstName::Inv,
                 ConstName::Cvx,  ConstName::Icvx,    ConstName::SigbBar, ConstName::DelbBar,
                 ConstName::JBar};
  return c;
}

}  // namespace ruledetail

inline const Calculus& rules_for(Calc id) {
  static const Calculus base = ruledetail::make_base();
  static const Calculus emergent = ruledetail::make_emergent();
  static const Calculus em_convex = ruledetail::make_em_convex();
  static const Calculus n_convex = ruledetail::make_n_convex();
  switch (id) {
    case Calc::BaseEm: return base;
    case Calc::Emergent: return emergent;
    case Calc::EmConvex: return em_convex;
    case Calc::NConvex: return n_convex;
  }
  return base;
}

inline const Calculus& rules_for(const std::string& name) {
  for (Calc c : {Calc::BaseEm, Calc::Emergent, Calc::EmConvex, Calc::NConvex})
    if (name == calc_name(c)) return rules_for(c);
  fail(Err::UnknownCalculus, "no calculus named '" + name + "'");
}

}  // namespace emcx

#endif  // EMCX_RULES_HPP
