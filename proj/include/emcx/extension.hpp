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

#ifndef EMCX_EXTENSION_HPP
#define EMCX_EXTENSION_HPP

#include "emcx/finite.hpp"
#include "emcx/term.hpp"

namespace emcx {

struct ExtensionResult {
  Term extended;
  Term provenance;
};

namespace detail {

// Structural recursion of Def 5.2 / 8.3. Node variables move to the extended
// node type (free ones too: Ext[a] : Nb). Recognized combinator applications
// keep their literal head; the head's own binder stays at N, the zero rules
// of the extended calculus give it meaning at 0.
inline Term ext_walk(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      if (t.var_type() == Type::n()) return Term::var(t.name(), Type::nb());
      return t;
    case Term::Kind::Const: return t;
    case Term::Kind::Lam: {
      CombKind k;
      if (recognize_comb(t, k)) return t;
      Type ty = t.bound_type() == Type::n() ? Type::nb() : t.bound_type();
      return Term::lam(t.name(), ty, ext_walk(t.body()));
    }
    case Term::Kind::App: {
      CombKind k;
      if (t.fun().is_lam() && recognize_comb(t.fun(), k))
        return Term::app(t.fun(), ext_walk(t.arg()));
      return Term::app(ext_walk(t.fun()), ext_walk(t.arg()));
    }
  }
  return t;
}

// Inverse direction: extended node variables and binders move back to N.
// Combinator literals are closed with N binders already, so a plain walk is
// enough; illegal constants survive the walk and fail the finiteness check.
inline Term unext_walk(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      if (t.var_type() == Type::nb()) return Term::var(t.name(), Type::n());
      return t;
    case Term::Kind::Const: return t;
    case Term::Kind::Lam: {
      CombKind k;
      if (recognize_comb(t, k)) return t;
      Type ty = t.bound_type() == Type::nb() ? Type::n() : t.bound_type();
      return Term::lam(t.name(), ty, unext_walk(t.body()));
    }
    case Term::Kind::App: {
      CombKind k;
      if (t.fun().is_lam() && recognize_comb(t.fun(), k))
        return Term::app(t.fun(), unext_walk(t.arg()));
      return Term::app(unext_walk(t.fun()), unext_walk(t.arg()));
    }
  }
  return t;
}

}  // namespace detail

// Ext over the Def 5.1 grammar (plus cvx when the term lives in em-convex).
inline ExtensionResult ext(const Term& t) {
  FiniteGrammar g = finite_grammar_for(t.calc());
  if (g == FiniteGrammar::NConvex) g = FiniteGrammar::Base;
  if (!is_finite_in(t, g)) fail(Err::NotFinite, "ext: term is not finite");
  Calc out = t.calc() == Calc::EmConvex ? Calc::EmConvex : Calc::Emergent;
  return ExtensionResult{detail::ext_walk(t).with_calc(out), t};
}

// Ext^c over the n-convex finite grammar.
inline ExtensionResult ext_c(const Term& t) {
  if (!is_finite_in(t, FiniteGrammar::NConvex))
    fail(Err::NotFinite, "ext_c: term is not n-convex finite");
  return ExtensionResult{detail::ext_walk(t).with_calc(Calc::NConvex), t};
}

// Partial inverse of ext/ext_c used by the kernel's em step. Returns the
// finite preimage; fails if the input is not an extension image.
inline Term unext_in(const Term& t, FiniteGrammar g) {
  Term candidate = detail::unext_walk(t);
  if (!is_finite_in(candidate, g)) fail(Err::NotFinite, "em: goal side is not an extension image");
  if (!alpha_equal(detail::ext_walk(candidate), t))
    fail(Err::NotFinite, "em: goal side does not re-extend to itself");
  switch (g) {
    case FiniteGrammar::Base: return candidate.with_calc(Calc::BaseEm);
    case FiniteGrammar::EmConvex: return candidate.with_calc(Calc::EmConvex);
    case FiniteGrammar::NConvex: return candidate.with_calc(Calc::NConvex);
  }
  return candidate;
}

}  // namespace emcx

#endif  // EMCX_EXTENSION_HPP
