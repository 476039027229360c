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

#ifndef EMCX_FINITE_HPP
#define EMCX_FINITE_HPP

#include "emcx/combinator_defs.hpp"
#include "emcx/term.hpp"
#include "emcx/typecheck.hpp"

namespace emcx {

// The three finite-term grammars:
//   Base     — Def 5.1: vars, 1, circ/Sigma/Delta/iota applied to node terms,
//              dot, application, E/N binders.
//   EmConvex — Def 5.1 plus the cvx generator (Def 8.1 extends the grammar).
//   NConvex  — the diamond calculus's own grammar: Nb/N vars and binders,
//              cvx/sigma/delta/j generators.
enum class FiniteGrammar { Base, EmConvex, NConvex };

inline FiniteGrammar finite_grammar_for(Calc c) {
  switch (c) {
    case Calc::BaseEm:
    case Calc::Emergent: return FiniteGrammar::Base;
    case Calc::EmConvex: return FiniteGrammar::EmConvex;
    case Calc::NConvex: return FiniteGrammar::NConvex;
  }
  return FiniteGrammar::Base;
}

namespace detail {

inline bool type_mentions(const Type& t, Type::Kind k) {
  if (t.kind() == k) return true;
  if (t.is_arrow()) return type_mentions(t.domain(), k) || type_mentions(t.codomain(), k);
  return false;
}

inline bool grammar_has_comb(FiniteGrammar g, CombKind k) {
  switch (k) {
    case CombKind::Sigma:
    case CombKind::Delta:
    case CombKind::Iota: return g != FiniteGrammar::NConvex;
    case CombKind::SigmaC:
    case CombKind::DeltaC:
    case CombKind::J: return g == FiniteGrammar::NConvex;
  }
  return false;
}

inline bool fin(const Term& t, FiniteGrammar g) {
  switch (t.kind()) {
    case Term::Kind::Var:
      // Open finite terms are allowed: a variable is finite as long as its
      // type stays inside the grammar's world.
      if (g == FiniteGrammar::NConvex) return !type_mentions(t.var_type(), Type::Kind::E);
      return !type_mentions(t.var_type(), Type::Kind::Nb);
    case Term::Kind::Const:
      return t.const_name() == ConstName::One;
    case Term::Kind::Lam: {
      Type ty = t.bound_type();
      bool ok = g == FiniteGrammar::NConvex
                    ? (ty == Type::nb() || ty == Type::n())
                    : (ty == Type::e() || ty == Type::n());
      return ok && fin(t.body(), g);
    }
    case Term::Kind::App: {
      const Term f = t.fun();
      const Term a = t.arg();
      // Generator forms. The combinator literal itself is opaque: its body
      // mentions star, which the grammars exclude, but "Sigma A" is listed
      // as a generator.
      if (f.is_const(ConstName::Dil) && g != FiniteGrammar::NConvex)
        return infer_type(a) == Type::n() && fin(a, g);
      if (f.is_const(ConstName::Cvx) && g != FiniteGrammar::Base)
        return infer_type(a) == Type::n() && fin(a, g);
      CombKind k;
      if (f.is_lam() && recognize_comb(f, k) && grammar_has_comb(g, k))
        return infer_type(a) == Type::n() && fin(a, g);
      if (f.is_app() && f.fun().is_const(ConstName::Mul))
        return infer_type(f.arg()) == Type::n() && infer_type(a) == Type::n() &&
               fin(f.arg(), g) && fin(a, g);
      return fin(f, g) && fin(a, g);
    }
  }
  return false;
}

}  // namespace detail

inline bool is_finite_in(const Term& t, FiniteGrammar g) { return detail::fin(t, g); }

// Grammar selected by the term's calculus tag.
inline bool is_finite(const Term& t) { return is_finite_in(t, finite_grammar_for(t.calc())); }

// ---------------------------------------------------------------------------
// Combinator folding: rewrite beta-images of saturated combinator
// applications back into generator form. normalize() unfolds Sigma A e x y
// into raw dilations; this recovers the Def 5.1 / 8.3 shape so finiteness
// becomes visible again. Folded heads are left opaque, which makes the pass
// terminate even though a folded application is node-count larger.

namespace detail {

struct FoldPattern {
  CombKind kind;
  ConstName dil;  // Dil for the base combinators, Cvx for the n-convex ones
  int arity;      // applied argument count including the node parameter
};

inline bool app3(const Term& t, ConstName head, Term& a, Term& b, Term& c) {
  if (!t.is_app() || !t.fun().is_app() || !t.fun().fun().is_app()) return false;
  if (!t.fun().fun().fun().is_const(head)) return false;
  a = t.fun().fun().arg();
  b = t.fun().arg();
  c = t.arg();
  return true;
}

inline bool star_of(const Term& t, Term& inner) {
  if (t.is_app() && t.fun().is_const(ConstName::Inv)) {
    inner = t.arg();
    return true;
  }
  return false;
}

// Tries each combinator image at this node. On success returns the folded
// generator application.
inline bool fold_here(const Term& t, ConstName dil, bool base_side, Term& out) {
  Term a1, a2, a3, x;
  if (!app3(t, dil, a1, a2, a3)) return false;
  if (!star_of(a1, x)) return false;
  // iota/j:   dil (star X) (dil X P Q) P
  // delta:    dil (star X) (dil X P Q) (dil X P R)
  // sigma:    dil (star X) P (dil X (dil X P Q) R)
  Term b1, b2, b3;
  if (app3(a2, dil, b1, b2, b3) && alpha_equal(b1, x)) {
    if (alpha_equal(a3, b2)) {
      const Term& comb = base_side ? comb_iota() : comb_j();
      out = Term::app(comb, {x, b2, b3});
      return true;
    }
    Term c1, c2, c3;
    if (app3(a3, dil, c1, c2, c3) && alpha_equal(c1, x) && alpha_equal(c2, b2)) {
      const Term& comb = base_side ? comb_delta() : comb_delta_c();
      out = Term::app(comb, {x, b2, b3, c3});
      return true;
    }
  }
  Term d1, d2, d3;
  if (app3(a3, dil, d1, d2, d3) && alpha_equal(d1, x)) {
    Term e1, e2, e3;
    if (app3(d2, dil, e1, e2, e3) && alpha_equal(e1, x) && alpha_equal(e2, a2)) {
      const Term& comb = base_side ? comb_sigma() : comb_sigma_c();
      out = Term::app(comb, {x, a2, e3, d3});
      return true;
    }
  }
  return false;
}

inline Term fold_walk(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const: return t;
    case Term::Kind::Lam: {
      Term b = fold_walk(t.body());
      return b.same_node(t.body()) ? t : Term::lam(t.name(), t.bound_type(), b);
    }
    case Term::Kind::App: {
      // Keep already-folded generator applications opaque.
      CombKind k;
      if (t.fun().is_lam() && recognize_comb(t.fun(), k)) {
        Term a = fold_walk(t.arg());
        return a.same_node(t.arg()) ? t : Term::app(t.fun(), a);
      }
      Term f = fold_walk(t.fun());
      Term a = fold_walk(t.arg());
      Term cur = (f.same_node(t.fun()) && a.same_node(t.arg())) ? t : Term::app(f, a);
      Term folded;
      if (fold_here(cur, ConstName::Dil, true, folded)) return folded;
      if (fold_here(cur, ConstName::Cvx, false, folded)) return folded;
      return cur;
    }
  }
  return t;
}

}  // namespace detail

inline Term fold_combinators(const Term& t) { return detail::fold_walk(t).with_calc(t.calc()); }

}  // namespace emcx

#endif  // EMCX_FINITE_HPP
