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

#ifndef EMCX_TYPECHECK_HPP
#define EMCX_TYPECHECK_HPP

#include <map>
#include <string>

#include "emcx/combinator_defs.hpp"
#include "emcx/term.hpp"

namespace emcx {

using Context = std::map<std::string, Type>;

namespace detail {

inline Type infer(const Term& t, std::map<std::string, Type>& bound) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = bound.find(t.name());
      if (it != bound.end()) return it->second;
      return t.var_type();  // free variables are self-typed
    }
    case Term::Kind::Const:
      return const_type(t.const_name());
    case Term::Kind::Lam: {
      auto prev = bound.find(t.name());
      Type saved = prev == bound.end() ? Type::e() : prev->second;
      bool had = prev != bound.end();
      bound[t.name()] = t.bound_type();
      Type body = infer(t.body(), bound);
      if (had)
        bound[t.name()] = saved;
      else
        bound.erase(t.name());
      return Type::arrow(t.bound_type(), body);
    }
    case Term::Kind::App: {
      Type ft = infer(t.fun(), bound);
      Type at = infer(t.arg(), bound);
      if (!ft.is_arrow()) {
        // Def 5.2 / 8.3 list "Sigma A for A : Nb" (and friends) as term
        // generators. The stored combinators bind a : N, so an Nb argument is
        // accepted only when the head is one of the recognized combinators.
        fail(Err::NotAFunction, "application head has type " + ft.str());
      }
      if (!subtype_le(at, ft.domain())) {
        CombKind k;
        bool comb_head = t.fun().is_lam() && recognize_comb(t.fun(), k);
        if (comb_head && ft.domain() == Type::n() && at == Type::nb()) return ft.codomain();
        fail(Err::ApplicationMismatch,
             "argument type " + at.str() + " does not fit domain " + ft.domain().str());
      }
      // dot is extended from N to Nb; the result stays in N when both
      // arguments are node terms.
      if (t.fun().is_app() && t.fun().fun().is_const(ConstName::Mul)) {
        Type lhs = infer(t.fun().arg(), bound);
        if (lhs == Type::n() && at == Type::n()) return Type::n();
      }
      return ft.codomain();
    }
  }
  fail(Err::TypeMismatch, "malformed term");
}

}  // namespace detail

// Internal typing: free variables type themselves.
inline Type infer_type(const Term& t) {
  std::map<std::string, Type> bound;
  return detail::infer(t, bound);
}

// Contract-level typing: every free variable must be bound by the context,
// with the type the occurrence carries.
inline Type infer_type(const Context& ctx, const Term& t) {
  for (const auto& [name, ty] : free_vars(t)) {
    auto it = ctx.find(name);
    if (it == ctx.end()) fail(Err::UnboundVariable, "free variable " + name);
    if (it->second != ty)
      fail(Err::UnboundVariable,
           "variable " + name + " occurs at type " + ty.str() + " but context binds " +
               it->second.str());
  }
  return infer_type(t);
}

inline bool type_checks(const Term& t) {
  try {
    infer_type(t);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace emcx

#endif  // EMCX_TYPECHECK_HPP
