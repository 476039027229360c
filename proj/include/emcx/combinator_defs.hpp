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

#ifndef EMCX_COMBINATOR_DEFS_HPP
#define EMCX_COMBINATOR_DEFS_HPP

#include <vector>

#include "emcx/term.hpp"

namespace emcx {

// The six approximate-operation combinators, stored fully unfolded. These
// exact trees are what the finiteness grammar, the extension function and the
// zero rules of the extended calculi recognize (up to alpha).
//
//   asum   Sigma a e x y = (star a)^e    (a^(a^e x) y)
//   adif   Delta a e x y = (star a)^(a^e x) (a^e y)
//   ainv   iota  a e x   = (star a)^(a^e x) e
//
// and their n-convex counterparts with cvx in place of circ and Nb-typed
// edge variables.

namespace cdefs {

inline Term circ(Term a, Term e, Term x) {
  return Term::app(Term::con(ConstName::Dil), {a, e, x});
}
inline Term cvx3(Term a, Term e, Term x) {
  return Term::app(Term::con(ConstName::Cvx), {a, e, x});
}
inline Term star(Term a) { return Term::app(Term::con(ConstName::Inv), a); }

}  // namespace cdefs

inline const Term& comb_sigma() {
  static const Term t = [] {
    using namespace cdefs;
    Term a = Term::var("a", Type::n());
    Term e = Term::var("e", Type::e());
    Term x = Term::var("x", Type::e());
    Term y = Term::var("y", Type::e());
    Term body = circ(star(a), e, circ(a, circ(a, e, x), y));
    return Term::lam("a", Type::n(),
                     Term::lam("e", Type::e(),
                               Term::lam("x", Type::e(), Term::lam("y", Type::e(), body))));
  }();
  return t;
}

inline const Term& comb_delta() {
  static const Term t = [] {
    using namespace cdefs;
    Term a = Term::var("a", Type::n());
    Term e = Term::var("e", Type::e());
    Term x = Term::var("x", Type::e());
    Term y = Term::var("y", Type::e());
    Term body = circ(star(a), circ(a, e, x), circ(a, e, y));
    return Term::lam("a", Type::n(),
                     Term::lam("e", Type::e(),
                               Term::lam("x", Type::e(), Term::lam("y", Type::e(), body))));
  }();
  return t;
}

inline const Term& comb_iota() {
  static const Term t = [] {
    using namespace cdefs;
    Term a = Term::var("a", Type::n());
    Term e = Term::var("e", Type::e());
    Term x = Term::var("x", Type::e());
    Term body = circ(star(a), circ(a, e, x), e);
    return Term::lam("a", Type::n(),
                     Term::lam("e", Type::e(), Term::lam("x", Type::e(), body)));
  }();
  return t;
}

inline const Term& comb_sigma_c() {
  static const Term t = [] {
    using namespace cdefs;
    Term a = Term::var("a", Type::n());
    Term b = Term::var("b", Type::nb());
    Term c = Term::var("c", Type::nb());
    Term d = Term::var("d", Type::nb());
    Term body = cvx3(star(a), b, cvx3(a, cvx3(a, b, c), d));
    return Term::lam("a", Type::n(),
                     Term::lam("b", Type::nb(),
                               Term::lam("c", Type::nb(), Term::lam("d", Type::nb(), body))))
        .with_calc(Calc::NConvex);
  }();
  return t;
}

inline const Term& comb_delta_c() {
  static const Term t = [] {
    using namespace cdefs;
    Term a = Term::var("a", Type::n());
    Term b = Term::var("b", Type::nb());
    Term c = Term::var("c", Type::nb());
    Term d = Term::var("d", Type::nb());
    Term body = cvx3(star(a), cvx3(a, b, c), cvx3(a, b, d));
    return Term::lam("a", Type::n(),
                     Term::lam("b", Type::nb(),
                               Term::lam("c", Type::nb(), Term::lam("d", Type::nb(), body))))
        .with_calc(Calc::NConvex);
  }();
  return t;
}

inline const Term& comb_j() {
  static const Term t = [] {
    using namespace cdefs;
    Term a = Term::var("a", Type::n());
    Term b = Term::var("b", Type::nb());
    Term c = Term::var("c", Type::nb());
    Term body = cvx3(star(a), cvx3(a, b, c), b);
    return Term::lam("a", Type::n(),
                     Term::lam("b", Type::nb(), Term::lam("c", Type::nb(), body)))
        .with_calc(Calc::NConvex);
  }();
  return t;
}

enum class CombKind { Sigma, Delta, Iota, SigmaC, DeltaC, J };

// Recognizes the literal combinators up to alpha. Size gates keep this cheap.
inline bool recognize_comb(const Term& t, CombKind& out) {
  if (!t.is_lam()) return false;
  size_t sz = t.size();
  struct Entry {
    CombKind k;
    const Term& lit;
  };
  const Entry entries[] = {
      {CombKind::Sigma, comb_sigma()},   {CombKind::Delta, comb_delta()},
      {CombKind::Iota, comb_iota()},     {CombKind::SigmaC, comb_sigma_c()},
      {CombKind::DeltaC, comb_delta_c()}, {CombKind::J, comb_j()},
  };
  for (const auto& e : entries) {
    if (sz == e.lit.size() && alpha_equal(t, e.lit)) {
      out = e.k;
      return true;
    }
  }
  return false;
}

inline bool is_comb(const Term& t, CombKind k) {
  CombKind got;
  return recognize_comb(t, got) && got == k;
}

inline const Term& comb_term(CombKind k) {
  switch (k) {
    case CombKind::Sigma: return comb_sigma();
    case CombKind::Delta: return comb_delta();
    case CombKind::Iota: return comb_iota();
    case CombKind::SigmaC: return comb_sigma_c();
    case CombKind::DeltaC: return comb_delta_c();
    case CombKind::J: return comb_j();
  }
  return comb_sigma();
}

// Barred constant standing for the combinator at parameter 0 (Def 5.2 / 8.3).
inline ConstName comb_bar(CombKind k) {
  switch (k) {
    case CombKind::Sigma: return ConstName::SigBar;
    case CombKind::Delta: return ConstName::DelBar;
    case CombKind::Iota: return ConstName::IotBar;
    case CombKind::SigmaC: return ConstName::SigbBar;
    case CombKind::DeltaC: return ConstName::DelbBar;
    case CombKind::J: return ConstName::JBar;
  }
  return ConstName::SigBar;
}

}  // namespace emcx

#endif  // EMCX_COMBINATOR_DEFS_HPP
