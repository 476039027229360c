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

#ifndef EMCX_COMBINATORS_HPP
#define EMCX_COMBINATORS_HPP

#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "emcx/combinator_defs.hpp"
#include "emcx/parser.hpp"
#include "emcx/search.hpp"
#include "emcx/term.hpp"
#include "emcx/typecheck.hpp"

namespace emcx {

// Named constructors for every derived term of the paper. Combinators are
// stored fully unfolded so the rewrite rules see through them.
enum class CombinatorName {
  Bar0,      // \e.\x. e
  Bar1,      // \e.\x. x
  MulE,      // A . B on E -> E -> E terms
  Diff,      // the (-) combinator
  DiffB,     // (- B), in the folded finite shape of Prop 7.2
  DiffAB,    // A - circ B, literal difference combinator
  Sigma,     // asum
  Delta,     // adif
  Iota,      // ainv
  SumAB,     // A + B = A - (0 - B)
  NaturalN,  // bar n
  Newdil,    // C^A B = A - (A - B).(circ C)
  SigmaC,    // n-convex asum
  DeltaC,    // n-convex adif
  JInv,      // n-convex ainv
  Oplus,     // Y (+)_X Z = SigB X Y Z
  Ominus,    // (-)_X Y = iotB X Y
  Scal,      // A ._X Y = circ A X Y
  Infdil,    // conjugated dilation of Thm 8.8's proof
  MinusOne,  // jB 0 1
  BoolTrue,  // 0
  BoolFalse, // 1
  Ifthenelse,
  Succ,
};

inline const std::vector<std::pair<CombinatorName, const char*>>& combinator_names() {
  static const std::vector<std::pair<CombinatorName, const char*>> table = {
      {CombinatorName::Bar0, "bar0"},         {CombinatorName::Bar1, "bar1"},
      {CombinatorName::MulE, "mulE"},         {CombinatorName::Diff, "diff"},
      {CombinatorName::DiffB, "diffB"},       {CombinatorName::DiffAB, "diffAB"},
      {CombinatorName::Sigma, "Sigma"},       {CombinatorName::Delta, "Delta"},
      {CombinatorName::Iota, "iota"},         {CombinatorName::SumAB, "sumAB"},
      {CombinatorName::NaturalN, "natural"},  {CombinatorName::Newdil, "newdil"},
      {CombinatorName::SigmaC, "sigma"},      {CombinatorName::DeltaC, "delta"},
      {CombinatorName::JInv, "jinv"},         {CombinatorName::Oplus, "oplus"},
      {CombinatorName::Ominus, "ominus"},     {CombinatorName::Scal, "scal"},
      {CombinatorName::Infdil, "infdil"},     {CombinatorName::MinusOne, "minusOne"},
      {CombinatorName::BoolTrue, "boolTrue"}, {CombinatorName::BoolFalse, "boolFalse"},
      {CombinatorName::Ifthenelse, "ifthenelse"}, {CombinatorName::Succ, "succ"},
  };
  return table;
}

inline std::optional<CombinatorName> combinator_by_name(const std::string& s) {
  for (const auto& [k, n] : combinator_names())
    if (s == n) return k;
  return std::nullopt;
}

namespace combdetail {

inline Term C(ConstName c) { return Term::con(c); }
inline Term A(Term f, std::vector<Term> args) { return Term::app(std::move(f), args); }

inline void want_arity(const std::vector<Term>& args, size_t n, const char* who) {
  if (args.size() != n)
    fail(Err::ArityMismatch, std::string(who) + " takes " + std::to_string(n) + " arguments");
}

inline void want_type(const Term& t, const Type& ty, const char* who) {
  Type got = infer_type(t);
  if (!subtype_le(got, ty))
    fail(Err::TypeMismatch,
         std::string(who) + ": argument has type " + got.str() + ", wants " + ty.str());
}

inline Type bin_type() { return Type::arrows({Type::e(), Type::e()}, Type::e()); }

// Fresh E-binders that avoid the free names of the spliced arguments.
struct EBinders {
  std::string e, x, u, v;
  Term ev, xv, uv, vv;
  explicit EBinders(const std::vector<Term>& args) {
    std::set<std::string> avoid;
    for (const Term& a : args)
      for (const auto& [n, _] : free_vars(a)) avoid.insert(n);
    auto take = [&avoid](const char* base) {
      std::string n = avoid.count(base) ? fresh_name(base, avoid) : base;
      avoid.insert(n);
      return n;
    };
    e = take("e");
    x = take("x");
    u = take("u");
    v = take("v");
    ev = Term::var(e, Type::e());
    xv = Term::var(x, Type::e());
    uv = Term::var(u, Type::e());
    vv = Term::var(v, Type::e());
  }
};

}  // namespace combdetail

inline Term build(CombinatorName name, const std::vector<Term>& args = {});

// bar n: 0 -> \e.\x.e, and n+1 = \e.\x. (bar n) x (iotB x e), the closed form
// of Def 7.3's recursion through Eq. (0-b). Memoized.
inline Term natural(int n) {
  if (n < 0) fail(Err::ArityMismatch, "natural takes n >= 0");
  static std::mutex mu;
  static std::vector<Term> memo;
  std::lock_guard<std::mutex> lock(mu);
  if (memo.empty()) memo.push_back(parse_term("\\e:E. \\x:E. e").with_calc(Calc::Emergent));
  while (static_cast<int>(memo.size()) <= n) {
    Term prev = memo.back();
    Term e = Term::var("e", Type::e());
    Term x = Term::var("x", Type::e());
    Term body = Term::app(prev, {x, Term::app(Term::con(ConstName::IotBar), {x, e})});
    memo.push_back(
        Term::lam("e", Type::e(), Term::lam("x", Type::e(), body)).with_calc(Calc::Emergent));
  }
  return memo[static_cast<size_t>(n)];
}

inline Term build(CombinatorName name, const std::vector<Term>& args) {
  using namespace combdetail;
  const Type E = Type::e(), N = Type::n(), Nb = Type::nb();
  switch (name) {
    case CombinatorName::Bar0:
      want_arity(args, 0, "bar0");
      return parse_term("\\e:E. \\x:E. e");
    case CombinatorName::Bar1:
      want_arity(args, 0, "bar1");
      return parse_term("\\e:E. \\x:E. x");
    case CombinatorName::MulE: {
      want_arity(args, 2, "mulE");
      want_type(args[0], bin_type(), "mulE");
      want_type(args[1], bin_type(), "mulE");
      EBinders b(args);
      Term body = A(args[0], {b.ev, A(args[1], {b.ev, b.xv})});
      return Term::lam(b.e, E, Term::lam(b.x, E, body));
    }
    case CombinatorName::Diff: {
      // (-) = \a.\b.\e.\x. (circ b (circ a e x) (circ (star a) (circ a e x) e))
      want_arity(args, 0, "diff");
      return parse_term(
          "\\a:N. \\b:N. \\e:E. \\x:E. "
          "circ b (circ a e x) (circ (star a) (circ a e x) e)");
    }
    case CombinatorName::DiffB: {
      // (- B) = \a.\e.\x. B (circ a e x) (iota a e x); finite when B is.
      want_arity(args, 1, "diffB");
      want_type(args[0], bin_type(), "diffB");
      EBinders b(args);
      std::set<std::string> avoid;
      for (const auto& [n, _] : free_vars(args[0])) avoid.insert(n);
      std::string an = avoid.count("a") ? fresh_name("a", avoid) : "a";
      Term av = Term::var(an, N);
      Term body = A(args[0], {A(C(ConstName::Dil), {av, b.ev, b.xv}),
                              A(comb_iota(), {av, b.ev, b.xv})});
      return Term::lam(an, N, Term::lam(b.e, E, Term::lam(b.x, E, body)));
    }
    case CombinatorName::DiffAB: {
      // A - circ B, Eq. (difcombi) verbatim.
      want_arity(args, 2, "diffAB");
      want_type(args[0], Nb, "diffAB");
      want_type(args[1], Nb, "diffAB");
      EBinders b(args);
      Term aex = A(C(ConstName::Dil), {args[0], b.ev, b.xv});
      Term body = A(C(ConstName::Dil),
                    {args[1], aex,
                     A(C(ConstName::Dil),
                       {A(C(ConstName::Inv), {args[0]}), aex, b.ev})});
      return Term::lam(b.e, E, Term::lam(b.x, E, body));
    }
    case CombinatorName::Sigma:
      if (args.empty()) return comb_sigma();
      want_arity(args, 1, "Sigma");
      return Term::app(comb_sigma(), args[0]);
    case CombinatorName::Delta:
      if (args.empty()) return comb_delta();
      want_arity(args, 1, "Delta");
      return Term::app(comb_delta(), args[0]);
    case CombinatorName::Iota:
      if (args.empty()) return comb_iota();
      want_arity(args, 1, "iota");
      return Term::app(comb_iota(), args[0]);
    case CombinatorName::SumAB: {
      // A + B = A - (0 - B) = A - (B . iotB)
      want_arity(args, 2, "sumAB");
      want_type(args[1], bin_type(), "sumAB");
      Term b_iot = build(CombinatorName::MulE, {args[1], C(ConstName::IotBar)});
      if (args[0].is_const(ConstName::Zero))
        return build(CombinatorName::MulE, {b_iot, C(ConstName::IotBar)});
      want_type(args[0], N, "sumAB");
      EBinders b(args);
      Term body = A(b_iot, {A(C(ConstName::Dil), {args[0], b.ev, b.xv}),
                            A(comb_iota(), {args[0], b.ev, b.xv})});
      return Term::lam(b.e, E, Term::lam(b.x, E, body)).with_calc(Calc::Emergent);
    }
    case CombinatorName::NaturalN:
      fail(Err::ArityMismatch, "use natural(n) for naturals");
    case CombinatorName::Newdil: {
      // C^A B = A - (A - B).(circ C)
      want_arity(args, 3, "newdil");
      const Term& argC = args[0];
      const Term& argA = args[1];
      const Term& argB = args[2];
      want_type(argC, Nb, "newdil");
      want_type(argA, Nb, "newdil");
      want_type(argB, bin_type(), "newdil");
      Term diff_ab;  // A - B
      if (argA.is_const(ConstName::Zero)) {
        diff_ab = build(CombinatorName::MulE, {argB, C(ConstName::IotBar)});
      } else {
        want_type(argA, N, "newdil");
        EBinders b(args);
        Term body = A(argB, {A(C(ConstName::Dil), {argA, b.uv, b.vv}),
                             A(comb_iota(), {argA, b.uv, b.vv})});
        diff_ab = Term::lam(b.u, E, Term::lam(b.v, E, body));
      }
      Term prod = build(CombinatorName::MulE, {diff_ab, A(C(ConstName::Dil), {argC})});
      if (argA.is_const(ConstName::Zero))
        return build(CombinatorName::MulE, {prod, C(ConstName::IotBar)});
      EBinders b(args);
      Term body = A(prod, {A(C(ConstName::Dil), {argA, b.ev, b.xv}),
                           A(comb_iota(), {argA, b.ev, b.xv})});
      return Term::lam(b.e, E, Term::lam(b.x, E, body));
    }
    case CombinatorName::SigmaC:
      if (args.empty()) return comb_sigma_c();
      want_arity(args, 1, "sigma");
      return Term::app(comb_sigma_c(), args[0]);
    case CombinatorName::DeltaC:
      if (args.empty()) return comb_delta_c();
      want_arity(args, 1, "delta");
      return Term::app(comb_delta_c(), args[0]);
    case CombinatorName::JInv:
      if (args.empty()) return comb_j();
      want_arity(args, 1, "jinv");
      return Term::app(comb_j(), args[0]);
    case CombinatorName::Oplus:
      want_arity(args, 3, "oplus");
      return A(C(ConstName::SigBar), {args[0], args[1], args[2]});
    case CombinatorName::Ominus:
      want_arity(args, 2, "ominus");
      return A(C(ConstName::IotBar), {args[0], args[1]});
    case CombinatorName::Scal:
      want_arity(args, 3, "scal");
      want_type(args[0], Nb, "scal");
      return A(C(ConstName::Dil), {args[0], args[1], args[2]});
    case CombinatorName::Infdil: {
      // \a.\e.\x.\y. bullet a e (circ A (circ a e x) (circ a e y))
      want_arity(args, 1, "infdil");
      want_type(args[0], Nb, "infdil");
      EBinders b(args);
      std::set<std::string> avoid{b.e, b.x, b.u, b.v};
      for (const auto& [n, _] : free_vars(args[0])) avoid.insert(n);
      std::string an = avoid.count("a") ? fresh_name("a", avoid) : "a";
      Term av = Term::var(an, N);
      std::string yn = avoid.count("y") ? fresh_name("y", avoid) : "y";
      Term yv = Term::var(yn, E);
      Term body = A(C(ConstName::Idil),
                    {av, b.ev,
                     A(C(ConstName::Dil),
                       {args[0], A(C(ConstName::Dil), {av, b.ev, b.xv}),
                        A(C(ConstName::Dil), {av, b.ev, yv})})});
      return Term::lam(an, N,
                       Term::lam(b.e, E, Term::lam(b.x, E, Term::lam(yn, E, body))));
    }
    case CombinatorName::MinusOne:
      want_arity(args, 0, "minusOne");
      return parse_term("jB 0 1");
    case CombinatorName::BoolTrue:
      want_arity(args, 0, "boolTrue");
      return C(ConstName::Zero);
    case CombinatorName::BoolFalse:
      want_arity(args, 0, "boolFalse");
      return C(ConstName::One);
    case CombinatorName::Ifthenelse:
      want_arity(args, 3, "ifthenelse");
      for (const Term& a : args) want_type(a, Nb, "ifthenelse");
      return A(C(ConstName::Cvx), {args[0], args[1], args[2]});
    case CombinatorName::Succ:
      want_arity(args, 0, "succ");
      return parse_term("\\a:Nb. sigB 0 a 1");
  }
  fail(Err::ArityMismatch, "unknown combinator");
}

// BIN check (Def 7.1): search for a proof of t . bar0 = bar0.
struct BinVerdict {
  enum class Result { True, Unknown } result = Result::Unknown;
  std::optional<ProofScript> proof;
};

inline BinVerdict is_bin(const Term& t, const Calculus& calc, size_t budget = 50000,
                         const std::vector<SearchEquation>& equations = {}) {
  Type bt = combdetail::bin_type();
  Type got = infer_type(t);
  if (!(got == bt)) fail(Err::TypeMismatch, "is_bin takes a term of type E -> E -> E");
  Term lhs = build(CombinatorName::MulE, {t, build(CombinatorName::Bar0)});
  Term rhs = build(CombinatorName::Bar0);
  BinVerdict v;
  v.proof = prove_equal(lhs, rhs, calc, budget, equations);
  v.result = v.proof ? BinVerdict::Result::True : BinVerdict::Result::Unknown;
  return v;
}

}  // namespace emcx

#endif  // EMCX_COMBINATORS_HPP
