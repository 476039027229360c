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

#ifndef EMCX_TERM_HPP
#define EMCX_TERM_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "emcx/error.hpp"
#include "emcx/type.hpp"

namespace emcx {

// The four calculi. Ordered so that join() can lift a term into the smallest
// calculus whose constants it mentions.
enum class Calc { BaseEm, Emergent, EmConvex, NConvex };

inline const char* calc_name(Calc c) {
  switch (c) {
    case Calc::BaseEm: return "base-em";
    case Calc::Emergent: return "emergent";
    case Calc::EmConvex: return "em-convex";
    case Calc::NConvex: return "n-convex";
  }
  return "?";
}

inline Calc calc_join(Calc a, Calc b) {
  if (a == b) return a;
  auto lin = [](Calc c) { return c == Calc::BaseEm ? 0 : c == Calc::Emergent ? 1 : 2; };
  if (a == Calc::NConvex) return b == Calc::BaseEm ? Calc::NConvex : Calc::EmConvex;
  if (b == Calc::NConvex) return a == Calc::BaseEm ? Calc::NConvex : Calc::EmConvex;
  return lin(a) >= lin(b) ? (lin(a) == 2 ? Calc::EmConvex : a) : (lin(b) == 2 ? Calc::EmConvex : b);
}

enum class ConstName : uint8_t {
  One,     // 1 : N
  Zero,    // 0 : Nb
  Dil,     // circ : Nb -> E -> E -> E
  Idil,    // bullet : N -> E -> E -> E
  Mul,     // dot : Nb -> Nb -> Nb (result refines to N when both args are N)
  Inv,     // star : N -> N
  Cvx,     // cvx : Nb -> Nb -> Nb -> Nb
  Icvx,    // icvx : N -> Nb -> Nb -> Nb
  SigBar,  // SigB : E -> E -> E -> E
  DelBar,  // DelB : E -> E -> E -> E
  IotBar,  // iotB : E -> E -> E
  SigbBar, // sigB : Nb -> Nb -> Nb -> Nb
  DelbBar, // delB : Nb -> Nb -> Nb -> Nb
  JBar,    // jB : Nb -> Nb -> Nb
};

inline const char* const_ascii(ConstName c) {
  switch (c) {
    case ConstName::One: return "1";
    case ConstName::Zero: return "0";
    case ConstName::Dil: return "circ";
    case ConstName::Idil: return "bullet";
    case ConstName::Mul: return "dot";
    case ConstName::Inv: return "star";
    case ConstName::Cvx: return "cvx";
    case ConstName::Icvx: return "icvx";
    case ConstName::SigBar: return "SigB";
    case ConstName::DelBar: return "DelB";
    case ConstName::IotBar: return "iotB";
    case ConstName::SigbBar: return "sigB";
    case ConstName::DelbBar: return "delB";
    case ConstName::JBar: return "jB";
  }
  return "?";
}

inline Type const_type(ConstName c) {
  const Type E = Type::e(), N = Type::n(), Nb = Type::nb();
  switch (c) {
    case ConstName::One: return N;
    case ConstName::Zero: return Nb;
    case ConstName::Dil: return Type::arrows({Nb, E, E}, E);
    case ConstName::Idil: return Type::arrows({N, E, E}, E);
    case ConstName::Mul: return Type::arrows({Nb, Nb}, Nb);
    case ConstName::Inv: return Type::arrow(N, N);
    case ConstName::Cvx: return Type::arrows({Nb, Nb, Nb}, Nb);
    case ConstName::Icvx: return Type::arrows({N, Nb, Nb}, Nb);
    case ConstName::SigBar: return Type::arrows({E, E, E}, E);
    case ConstName::DelBar: return Type::arrows({E, E, E}, E);
    // The paper's declaration tables list iotB at E -> E and jB at Nb -> Nb,
    // but every use site (Def 6.1, Prop 8.5, Prop 8.6, the naturals) applies
    // them to a basepoint plus one argument; we use the applied arities.
    case ConstName::IotBar: return Type::arrows({E, E}, E);
    case ConstName::SigbBar: return Type::arrows({Nb, Nb, Nb}, Nb);
    case ConstName::DelbBar: return Type::arrows({Nb, Nb, Nb}, Nb);
    case ConstName::JBar: return Type::arrows({Nb, Nb}, Nb);
  }
  return N;
}

// The smallest calculus in which a constant exists.
inline Calc const_home(ConstName c) {
  switch (c) {
    case ConstName::One:
    case ConstName::Dil:
    case ConstName::Idil:
    case ConstName::Mul:
    case ConstName::Inv: return Calc::BaseEm;
    case ConstName::Zero:
    case ConstName::SigBar:
    case ConstName::DelBar:
    case ConstName::IotBar: return Calc::Emergent;
    case ConstName::Cvx:
    case ConstName::Icvx:
    case ConstName::SigbBar:
    case ConstName::DelbBar:
    case ConstName::JBar: return Calc::NConvex;
  }
  return Calc::BaseEm;
}

// Immutable term tree. Terms are shared freely; all operations are pure.
// Free variables are self-typed: a Var node carries its type, so open
// subterms can be typed without threading a context.
class Term {
 public:
  enum class Kind { Var, Const, App, Lam };

  Term() = default;

  static Term var(const std::string& name, Type ty) {
    Term t;
    Calc c = ty.kind() == Type::Kind::Nb ? Calc::Emergent : Calc::BaseEm;
    t.node_ = std::make_shared<const Node>(Node{Kind::Var, name, ty, ConstName::One, {}, {}, 1});
    t.calc_ = c;
    return t;
  }

  static Term con(ConstName c) {
    Term t;
    t.node_ =
        std::make_shared<const Node>(Node{Kind::Const, "", const_type(c), c, {}, {}, 1});
    t.calc_ = const_home(c);
    return t;
  }

  static Term app(Term f, Term a) {
    Term t;
    t.calc_ = calc_join(f.calc_, a.calc_);
    t.node_ = std::make_shared<const Node>(
        Node{Kind::App, "", Type::e(), ConstName::One, f.node_, a.node_, f.size() + a.size() + 1});
    return t;
  }

  static Term app(Term f, const std::vector<Term>& args) {
    Term t = std::move(f);
    for (const Term& a : args) t = app(t, a);
    return t;
  }

  static Term lam(const std::string& name, Type ty, Term body) {
    Term t;
    t.calc_ = body.calc_;
    if (ty.kind() == Type::Kind::Nb) t.calc_ = calc_join(t.calc_, Calc::Emergent);
    t.node_ = std::make_shared<const Node>(
        Node{Kind::Lam, name, ty, ConstName::One, body.node_, {}, body.size() + 1});
    return t;
  }

  bool valid() const { return node_ != nullptr; }
  Kind kind() const { return node_->kind; }
  bool is_var() const { return kind() == Kind::Var; }
  bool is_const() const { return kind() == Kind::Const; }
  bool is_const(ConstName c) const { return is_const() && const_name() == c; }
  bool is_app() const { return kind() == Kind::App; }
  bool is_lam() const { return kind() == Kind::Lam; }

  const std::string& name() const { return node_->name; }   // Var, Lam
  Type var_type() const { return node_->ty; }               // Var
  Type bound_type() const { return node_->ty; }             // Lam
  ConstName const_name() const { return node_->cn; }        // Const
  Term fun() const { return wrap(node_->a); }               // App
  Term arg() const { return wrap(node_->b); }               // App
  Term body() const { return wrap(node_->a); }              // Lam
  size_t size() const { return node_ ? node_->size : 0; }

  Calc calc() const { return calc_; }
  Term with_calc(Calc c) const {
    Term t = *this;
    t.calc_ = c;
    return t;
  }

  // Pointer identity shortcut; full alpha equality lives in alpha_equal().
  bool same_node(const Term& o) const { return node_ == o.node_; }

  // Spine view: f a1 a2 ... -> (f, [a1, a2, ...]).
  std::pair<Term, std::vector<Term>> spine() const {
    std::vector<Term> args;
    Term h = *this;
    while (h.is_app()) {
      args.push_back(h.arg());
      h = h.fun();
    }
    std::reverse(args.begin(), args.end());
    return {h, args};
  }

 private:
  struct Node {
    Kind kind;
    std::string name;  // Var, Lam
    Type ty;           // Var, Lam
    ConstName cn;      // Const
    std::shared_ptr<const Node> a;  // App fun / Lam body
    std::shared_ptr<const Node> b;  // App arg
    size_t size;
  };

  std::shared_ptr<const Node> node_;
  Calc calc_ = Calc::BaseEm;

  Term wrap(const std::shared_ptr<const Node>& n) const {
    Term t;
    t.node_ = n;
    t.calc_ = calc_;
    return t;
  }
};

// ---------------------------------------------------------------------------
// Free variables

inline void free_vars_into(const Term& t, std::set<std::string>& shadowed,
                           std::map<std::string, Type>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      if (!shadowed.count(t.name())) out.emplace(t.name(), t.var_type());
      return;
    case Term::Kind::Const: return;
    case Term::Kind::App:
      free_vars_into(t.fun(), shadowed, out);
      free_vars_into(t.arg(), shadowed, out);
      return;
    case Term::Kind::Lam: {
      bool was = shadowed.count(t.name()) > 0;
      shadowed.insert(t.name());
      free_vars_into(t.body(), shadowed, out);
      if (!was) shadowed.erase(t.name());
      return;
    }
  }
}

inline std::map<std::string, Type> free_vars(const Term& t) {
  std::set<std::string> shadowed;
  std::map<std::string, Type> out;
  free_vars_into(t, shadowed, out);
  return out;
}

inline bool occurs_free(const Term& t, const std::string& name) {
  switch (t.kind()) {
    case Term::Kind::Var: return t.name() == name;
    case Term::Kind::Const: return false;
    case Term::Kind::App: return occurs_free(t.fun(), name) || occurs_free(t.arg(), name);
    case Term::Kind::Lam:
      return t.name() != name && occurs_free(t.body(), name);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Alpha equality and an alpha-invariant total order

namespace detail {

inline int term_cmp(const Term& a, const Term& b, std::vector<std::string>& env_a,
                    std::vector<std::string>& env_b) {
  auto rank = [](Term::Kind k) {
    switch (k) {
      case Term::Kind::Const: return 0;
      case Term::Kind::Var: return 1;
      case Term::Kind::App: return 2;
      case Term::Kind::Lam: return 3;
    }
    return 4;
  };
  if (rank(a.kind()) != rank(b.kind())) return rank(a.kind()) < rank(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case Term::Kind::Const: {
      int ca = static_cast<int>(a.const_name()), cb = static_cast<int>(b.const_name());
      return ca == cb ? 0 : (ca < cb ? -1 : 1);
    }
    case Term::Kind::Var: {
      // De Bruijn index when bound; name when free. Bound < free.
      int ia = -1, ib = -1;
      for (int i = static_cast<int>(env_a.size()) - 1; i >= 0; --i)
        if (env_a[static_cast<size_t>(i)] == a.name()) {
          ia = static_cast<int>(env_a.size()) - 1 - i;
          break;
        }
      for (int i = static_cast<int>(env_b.size()) - 1; i >= 0; --i)
        if (env_b[static_cast<size_t>(i)] == b.name()) {
          ib = static_cast<int>(env_b.size()) - 1 - i;
          break;
        }
      if ((ia >= 0) != (ib >= 0)) return ia >= 0 ? -1 : 1;
      if (ia >= 0) return ia == ib ? 0 : (ia < ib ? -1 : 1);
      if (a.name() != b.name()) return a.name() < b.name() ? -1 : 1;
      return type_order(a.var_type(), b.var_type());
    }
    case Term::Kind::App: {
      int c = term_cmp(a.fun(), b.fun(), env_a, env_b);
      if (c != 0) return c;
      return term_cmp(a.arg(), b.arg(), env_a, env_b);
    }
    case Term::Kind::Lam: {
      int c = type_order(a.bound_type(), b.bound_type());
      if (c != 0) return c;
      env_a.push_back(a.name());
      env_b.push_back(b.name());
      c = term_cmp(a.body(), b.body(), env_a, env_b);
      env_a.pop_back();
      env_b.pop_back();
      return c;
    }
  }
  return 0;
}

}  // namespace detail

// Alpha-invariant total order: constants < variables < applications < lambdas.
inline int term_order(const Term& a, const Term& b) {
  std::vector<std::string> ea, eb;
  return detail::term_cmp(a, b, ea, eb);
}

inline bool alpha_equal(const Term& a, const Term& b) {
  if (a.same_node(b)) return true;
  if (a.size() != b.size()) return false;
  return term_order(a, b) == 0;
}

// Alpha-invariant hash (bound variables hashed by binder distance).
namespace detail {
inline void hash_walk(const Term& t, std::vector<std::string>& env, uint64_t& h) {
  auto mix = [&h](uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  switch (t.kind()) {
    case Term::Kind::Const:
      mix(0x10 + static_cast<uint64_t>(t.const_name()));
      return;
    case Term::Kind::Var: {
      for (int i = static_cast<int>(env.size()) - 1; i >= 0; --i)
        if (env[static_cast<size_t>(i)] == t.name()) {
          mix(0x8000 + static_cast<uint64_t>(env.size()) - 1 - static_cast<uint64_t>(i));
          return;
        }
      mix(0x4000);
      for (char ch : t.name()) mix(static_cast<uint64_t>(static_cast<unsigned char>(ch)));
      return;
    }
    case Term::Kind::App:
      mix(0x2);
      hash_walk(t.fun(), env, h);
      hash_walk(t.arg(), env, h);
      return;
    case Term::Kind::Lam:
      mix(0x3 + (static_cast<uint64_t>(t.bound_type().kind()) << 8));
      env.push_back(t.name());
      hash_walk(t.body(), env, h);
      env.pop_back();
      return;
  }
}
}  // namespace detail

inline uint64_t term_hash(const Term& t) {
  uint64_t h = 0xcbf29ce484222325ULL;
  std::vector<std::string> env;
  detail::hash_walk(t, env, h);
  return h;
}

// ---------------------------------------------------------------------------
// Capture-avoiding substitution

// Fresh names use a dot suffix ("x.1") which the parser accepts, so printed
// terms always round-trip.
inline std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string stem = base.substr(0, base.find('.'));
  for (int i = 1;; ++i) {
    std::string cand = stem + "." + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

inline Term rename_bound(const Term& lamTerm, const std::set<std::string>& avoid);

namespace detail {
inline Term subst(const Term& t, const std::string& name, const Type& ty, const Term& repl,
                  const std::map<std::string, Type>& repl_frees) {
  switch (t.kind()) {
    case Term::Kind::Const: return t;
    case Term::Kind::Var:
      if (t.name() == name && t.var_type() == ty) return repl;
      return t;
    case Term::Kind::App: {
      Term f = subst(t.fun(), name, ty, repl, repl_frees);
      Term a = subst(t.arg(), name, ty, repl, repl_frees);
      if (f.same_node(t.fun()) && a.same_node(t.arg())) return t;
      return Term::app(f, a);
    }
    case Term::Kind::Lam: {
      if (t.name() == name) return t;  // shadowed
      Term scope = t;
      if (repl_frees.count(t.name()) && occurs_free(t.body(), name)) {
        std::set<std::string> avoid;
        for (const auto& [n, _] : repl_frees) avoid.insert(n);
        for (const auto& [n, _] : free_vars(t.body())) avoid.insert(n);
        avoid.insert(name);
        scope = rename_bound(t, avoid);
      }
      Term b = subst(scope.body(), name, ty, repl, repl_frees);
      if (b.same_node(scope.body()) && scope.same_node(t)) return t;
      return Term::lam(scope.name(), scope.bound_type(), b);
    }
  }
  return t;
}
}  // namespace detail

inline Term rename_bound(const Term& lamTerm, const std::set<std::string>& avoid) {
  std::string nn = fresh_name(lamTerm.name(), avoid);
  Term v = Term::var(nn, lamTerm.bound_type());
  std::map<std::string, Type> vf{{nn, lamTerm.bound_type()}};
  Term nb = detail::subst(lamTerm.body(), lamTerm.name(), lamTerm.bound_type(), v, vf);
  return Term::lam(nn, lamTerm.bound_type(), nb);
}

// t[name := repl]. The replacement's type must be usable at the variable's
// type (N where Nb is fine).
inline Term substitute(const Term& t, const std::string& name, const Type& ty, const Term& repl,
                       const Type& repl_type) {
  if (!subtype_le(repl_type, ty))
    fail(Err::TypeMismatch, "substituting " + repl_type.str() + " term for " + name + " : " + ty.str());
  return detail::subst(t, name, ty, repl, free_vars(repl));
}

// Simultaneous substitution for several free variables (lemma instantiation).
// Implemented by routing through fresh intermediates so instances never feed
// each other.
inline Term substitute_all(const Term& t,
                           const std::vector<std::pair<std::pair<std::string, Type>, Term>>& subs) {
  std::set<std::string> avoid;
  for (const auto& [n, _] : free_vars(t)) avoid.insert(n);
  for (const auto& s : subs)
    for (const auto& [n, _] : free_vars(s.second)) avoid.insert(n);
  Term cur = t;
  std::vector<std::pair<std::pair<std::string, Type>, Term>> staged;
  for (const auto& s : subs) {
    std::string tmp = fresh_name("subst.tmp", avoid);
    avoid.insert(tmp);
    Term v = Term::var(tmp, s.first.second);
    cur = detail::subst(cur, s.first.first, s.first.second, v, {{tmp, s.first.second}});
    staged.push_back({{tmp, s.first.second}, s.second});
  }
  for (const auto& s : staged)
    cur = detail::subst(cur, s.first.first, s.first.second, s.second, free_vars(s.second));
  return cur;
}

// ---------------------------------------------------------------------------
// Paths: 0 descends into App.fun / Lam.body, 1 into App.arg.

using Path = std::vector<int>;

inline bool path_get(const Term& t, const Path& p, size_t i, Term& out) {
  if (i == p.size()) {
    out = t;
    return true;
  }
  int step = p[i];
  if (t.is_app()) {
    if (step == 0) return path_get(t.fun(), p, i + 1, out);
    if (step == 1) return path_get(t.arg(), p, i + 1, out);
    return false;
  }
  if (t.is_lam() && step == 0) return path_get(t.body(), p, i + 1, out);
  return false;
}

inline Term subterm_at(const Term& t, const Path& p) {
  Term out;
  if (!path_get(t, p, 0, out)) fail(Err::PathInvalid, "no subterm at path");
  return out;
}

inline Term replace_at(const Term& t, const Path& p, size_t i, const Term& repl) {
  if (i == p.size()) return repl;
  int step = p[i];
  if (t.is_app()) {
    if (step == 0) return Term::app(replace_at(t.fun(), p, i + 1, repl), t.arg());
    if (step == 1) return Term::app(t.fun(), replace_at(t.arg(), p, i + 1, repl));
  } else if (t.is_lam() && step == 0) {
    return Term::lam(t.name(), t.bound_type(), replace_at(t.body(), p, i + 1, repl));
  }
  fail(Err::PathInvalid, "no subterm at path");
}

inline Term replace_at(const Term& t, const Path& p, const Term& repl) {
  return replace_at(t, p, 0, repl);
}

// Binders crossed on the way to a path (innermost last).
inline std::vector<std::pair<std::string, Type>> binders_on_path(const Term& t, const Path& p) {
  std::vector<std::pair<std::string, Type>> out;
  Term cur = t;
  for (size_t i = 0; i < p.size(); ++i) {
    if (cur.is_lam() && p[i] == 0) {
      out.emplace_back(cur.name(), cur.bound_type());
      cur = cur.body();
    } else if (cur.is_app() && (p[i] == 0 || p[i] == 1)) {
      cur = p[i] == 0 ? cur.fun() : cur.arg();
    } else {
      fail(Err::PathInvalid, "no subterm at path");
    }
  }
  return out;
}

}  // namespace emcx

#endif  // EMCX_TERM_HPP
