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

#ifndef EMCX_PROOF_HPP
#define EMCX_PROOF_HPP

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "emcx/extension.hpp"
#include "emcx/rewrite.hpp"
#include "emcx/rules.hpp"
#include "emcx/term.hpp"

namespace emcx {

// The kernel replays scripts against a stack of equality goals. Every step
// either rewrites one side of the top goal by a known equation, or applies
// one of the paper's inference moves:
//
//   ExtInjective  (ext): from a goal A = B between node terms, pass to
//                 circ A = circ B (or bullet/cvx/icvx); the peel direction,
//                 available when both sides share such a head literally, is
//                 plain congruence.
//   EmExtend      (em): a goal between extension images is replaced by the
//                 goal between their finite preimages.
//   ApplyBoth     apply a fresh variable to two lambda sides (xi + beta).
//   AbstractBoth  wrap both sides in the same binder.
//
// Search results are never trusted: prove_equal output replays through here.

enum class StepKind {
  Rewrite,
  Beta,
  Eta,
  UseLemma,
  ExtInjective,
  EmExtend,
  ApplyBoth,
  AbstractBoth,
  Refl,
  Symm,
  Trans,
};

inline const char* step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::Rewrite: return "rewrite";
    case StepKind::Beta: return "beta";
    case StepKind::Eta: return "eta";
    case StepKind::UseLemma: return "use-lemma";
    case StepKind::ExtInjective: return "ext-injective";
    case StepKind::EmExtend: return "em-extend";
    case StepKind::ApplyBoth: return "apply-both";
    case StepKind::AbstractBoth: return "abstract-both";
    case StepKind::Refl: return "refl";
    case StepKind::Symm: return "symm";
    case StepKind::Trans: return "trans";
  }
  return "?";
}

struct ProofStep {
  StepKind kind = StepKind::Refl;
  std::string name;      // rule / lemma name
  int side = 0;          // 0 = lhs, 1 = rhs
  Path path;
  Direction dir = Direction::Forward;
  std::vector<std::pair<std::string, Term>> subst;  // UseLemma instantiation
  Term term;             // Trans intermediate / ApplyBoth argument
  std::string var_name;  // AbstractBoth binder
  Type var_type = Type::e();
  ConstName wrap_const = ConstName::Dil;  // ExtInjective head
};

struct ProofScript {
  std::string name;
  Calc calculus = Calc::BaseEm;
  std::map<std::string, Type> metavars;
  Term lhs;
  Term rhs;
  std::vector<std::string> deps;
  std::vector<ProofStep> steps;
};

// How a LemmaDB entry is discharged.
enum class LemmaMode {
  Script,      // bundled proof script replayed by the kernel
  Search,      // prove_equal with a documented budget, then replayed
  OracleOnly,  // model-checked only; flagged in every report
};

struct Lemma {
  std::string name;
  Calc calculus = Calc::BaseEm;
  std::map<std::string, Type> metavars;
  Term lhs;
  Term rhs;
  LemmaMode mode = LemmaMode::Script;
  size_t search_budget = 50000;
  std::string note;  // one-line provenance, shown by `lemmas`
};

struct Verdict {
  bool ok = false;
  size_t failed_step = 0;
  std::string reason;
};

// Resolver for UseLemma: returns already-checked lemmas only.
using LemmaResolver = std::function<const Lemma*(const std::string&)>;

namespace kerneldetail {

struct Goal {
  Term lhs;
  Term rhs;
  Calc calc;
};

inline Term& side_of(Goal& g, int side) { return side == 0 ? g.lhs : g.rhs; }

inline FiniteGrammar em_grammar(Calc c) {
  switch (c) {
    case Calc::Emergent: return FiniteGrammar::Base;
    case Calc::EmConvex: return FiniteGrammar::EmConvex;
    case Calc::NConvex: return FiniteGrammar::NConvex;
    case Calc::BaseEm: break;
  }
  fail(Err::StepFailed, "em step needs an extended calculus goal");
}

inline Calc em_finite_calc(Calc c) {
  switch (c) {
    case Calc::Emergent: return Calc::BaseEm;
    case Calc::EmConvex: return Calc::EmConvex;
    case Calc::NConvex: return Calc::NConvex;
    case Calc::BaseEm: break;
  }
  fail(Err::StepFailed, "em step needs an extended calculus goal");
}

inline void apply_step(std::vector<Goal>& goals, const ProofStep& st, const LemmaResolver& deps,
                       const std::set<std::string>& declared_deps) {
  if (goals.empty()) fail(Err::StepFailed, "no goal left");
  Goal g = goals.back();
  const Calculus& calc = rules_for(g.calc);
  switch (st.kind) {
    case StepKind::Refl:
      if (!alpha_equal(g.lhs, g.rhs)) fail(Err::StepFailed, "sides are not alpha-equal");
      goals.pop_back();
      return;
    case StepKind::Symm:
      std::swap(goals.back().lhs, goals.back().rhs);
      return;
    case StepKind::Trans: {
      Term mid = st.term;
      goals.pop_back();
      goals.push_back(Goal{mid, g.rhs, g.calc});
      goals.push_back(Goal{g.lhs, mid, g.calc});
      return;
    }
    case StepKind::Rewrite: {
      const RewriteRule* rule = calc.find_rule(st.name);
      if (!rule) fail(Err::StepFailed, "no rule '" + st.name + "' in " + calc.name);
      Term& s = side_of(goals.back(), st.side);
      s = apply_rule(*rule, s, st.path, st.dir, /*privileged=*/true);
      return;
    }
    case StepKind::Beta: {
      const RewriteRule* rule = calc.find_rule("beta");
      Term& s = side_of(goals.back(), st.side);
      s = apply_rule(*rule, s, st.path, Direction::Forward, true);
      return;
    }
    case StepKind::Eta: {
      const RewriteRule* rule = calc.find_rule("eta");
      Term& s = side_of(goals.back(), st.side);
      s = apply_rule(*rule, s, st.path, st.dir, true);
      return;
    }
    case StepKind::UseLemma: {
      if (!declared_deps.count(st.name))
        fail(Err::MissingDependency, "lemma '" + st.name + "' not listed in deps");
      const Lemma* lem = deps(st.name);
      if (!lem) fail(Err::MissingDependency, "lemma '" + st.name + "' is not checked yet");
      // The instantiation must cover the lemma's metavariables exactly and
      // respect their declared types.
      std::vector<std::pair<std::pair<std::string, Type>, Term>> subs;
      std::set<std::string> seen;
      for (const auto& [n, inst] : st.subst) {
        auto it = lem->metavars.find(n);
        if (it == lem->metavars.end())
          fail(Err::StepFailed, "lemma '" + st.name + "' has no metavariable " + n);
        Type got = infer_type(inst);
        if (!subtype_le(got, it->second))
          fail(Err::StepFailed, "instantiation of " + n + " has type " + got.str() +
                                    ", lemma wants " + it->second.str());
        subs.push_back({{n, it->second}, inst});
        seen.insert(n);
      }
      for (const auto& [n, ty] : lem->metavars)
        if (!seen.count(n))
          fail(Err::StepFailed, "metavariable " + n + " of '" + st.name + "' left uninstantiated");
      Term from = substitute_all(st.dir == Direction::Forward ? lem->lhs : lem->rhs, subs);
      Term to = substitute_all(st.dir == Direction::Forward ? lem->rhs : lem->lhs, subs);
      Term& s = side_of(goals.back(), st.side);
      Term sub = subterm_at(s, st.path);
      if (!alpha_equal(sub, from))
        fail(Err::StepFailed, "lemma instance does not match subterm at path");
      s = replace_at(s, st.path, to.with_calc(s.calc())).with_calc(s.calc());
      return;
    }
    case StepKind::ExtInjective: {
      ConstName c = st.wrap_const;
      if (c != ConstName::Dil && c != ConstName::Idil && c != ConstName::Cvx &&
          c != ConstName::Icvx)
        fail(Err::StepFailed, "ext works through circ, bullet, cvx or icvx only");
      Type lt = infer_type(g.lhs);
      Type rt = infer_type(g.rhs);
      Type dom = const_type(c).domain();
      bool node_sides = (lt == Type::n() || lt == Type::nb()) &&
                        (rt == Type::n() || rt == Type::nb());
      if (node_sides) {
        if (!subtype_le(lt, dom) || !subtype_le(rt, dom))
          fail(Err::StepFailed, "sides do not fit the head's node domain");
        goals.back().lhs = Term::app(Term::con(c), g.lhs).with_calc(g.lhs.calc());
        goals.back().rhs = Term::app(Term::con(c), g.rhs).with_calc(g.rhs.calc());
        return;
      }
      // Peel: both sides literally headed by the same constant.
      if (g.lhs.is_app() && g.rhs.is_app() && g.lhs.fun().is_const(c) && g.rhs.fun().is_const(c)) {
        goals.back().lhs = g.lhs.arg();
        goals.back().rhs = g.rhs.arg();
        return;
      }
      fail(Err::StepFailed, "ext-injective applies to node-term sides or matching heads");
    }
    case StepKind::EmExtend: {
      FiniteGrammar gram = em_grammar(g.calc);
      Calc fin = em_finite_calc(g.calc);
      Term l0 = unext_in(g.lhs, gram);
      Term r0 = unext_in(g.rhs, gram);
      goals.back() = Goal{l0, r0, fin};
      return;
    }
    case StepKind::ApplyBoth: {
      if (!st.term.is_var()) fail(Err::StepFailed, "apply-both takes a fresh variable");
      const std::string& v = st.term.name();
      if (occurs_free(g.lhs, v) || occurs_free(g.rhs, v))
        fail(Err::StepFailed, "apply-both variable must be fresh for both sides");
      if (!g.lhs.is_lam() || !g.rhs.is_lam())
        fail(Err::StepFailed, "apply-both needs lambda sides");
      Type vt = st.term.var_type();
      if (!subtype_le(vt, g.lhs.bound_type()) || !subtype_le(vt, g.rhs.bound_type()))
        fail(Err::StepFailed, "apply-both variable type does not fit the binders");
      goals.back().lhs = substitute(g.lhs.body(), g.lhs.name(), g.lhs.bound_type(), st.term, vt)
                             .with_calc(g.lhs.calc());
      goals.back().rhs = substitute(g.rhs.body(), g.rhs.name(), g.rhs.bound_type(), st.term, vt)
                             .with_calc(g.rhs.calc());
      return;
    }
    case StepKind::AbstractBoth: {
      goals.back().lhs = Term::lam(st.var_name, st.var_type, g.lhs).with_calc(g.lhs.calc());
      goals.back().rhs = Term::lam(st.var_name, st.var_type, g.rhs).with_calc(g.rhs.calc());
      return;
    }
  }
  fail(Err::StepFailed, "unknown step");
}

}  // namespace kerneldetail

// Replays a script. ok iff every pushed goal was discharged by Refl.
inline Verdict check_script(const ProofScript& s, const LemmaResolver& deps) {
  Verdict v;
  std::set<std::string> declared(s.deps.begin(), s.deps.end());
  std::vector<kerneldetail::Goal> goals;
  Term lhs = s.lhs.with_calc(s.calculus);
  Term rhs = s.rhs.with_calc(s.calculus);
  try {
    Type lt = infer_type(lhs);
    Type rt = infer_type(rhs);
    if (!(subtype_le(lt, rt) || subtype_le(rt, lt)))
      fail(Err::BadProof, "goal sides have incompatible types");
  } catch (const Error& e) {
    v.reason = std::string("goal does not type-check: ") + e.what();
    return v;
  }
  goals.push_back(kerneldetail::Goal{lhs, rhs, s.calculus});
  for (size_t k = 0; k < s.steps.size(); ++k) {
    try {
      kerneldetail::apply_step(goals, s.steps[k], deps, declared);
    } catch (const Error& e) {
      v.failed_step = k;
      v.reason = e.what();
      return v;
    }
  }
  if (!goals.empty()) {
    v.failed_step = s.steps.size();
    v.reason = "open goals remain";
    return v;
  }
  v.ok = true;
  return v;
}

// The (em) inference as a standalone operation (Def 5.3): given a kernel
// verdict for lhs = rhs between finite terms (both sides are first pushed to
// a finite representative by normalization plus combinator folding), emits
// the judgment Ext[lhs] = Ext[rhs].
struct EmJudgment {
  Term ext_lhs;
  Term ext_rhs;
};

inline EmJudgment em_step(const Term& goal_lhs, const Term& goal_rhs, const ProofScript& proof,
                          const LemmaResolver& deps) {
  if (!alpha_equal(proof.lhs, goal_lhs) || !alpha_equal(proof.rhs, goal_rhs))
    fail(Err::BadProof, "supplied proof does not prove the requested equality");
  Verdict v = check_script(proof, deps);
  if (!v.ok) fail(Err::BadProof, "finite-level proof fails: " + v.reason);
  auto to_finite = [&](const Term& t) {
    if (is_finite(t)) return t;
    const Calculus& calc = rules_for(t.calc());
    Term n = normalize(t, calc).term;
    Term folded = fold_combinators(n);
    if (!is_finite(folded)) fail(Err::NotFinite, "no finite representative found");
    return folded;
  };
  Term l = to_finite(goal_lhs.with_calc(proof.calculus));
  Term r = to_finite(goal_rhs.with_calc(proof.calculus));
  bool nconv = proof.calculus == Calc::NConvex;
  ExtensionResult le = nconv ? ext_c(l) : ext(l);
  ExtensionResult re = nconv ? ext_c(r) : ext(r);
  return EmJudgment{le.extended, re.extended};
}

}  // namespace emcx

#endif  // EMCX_PROOF_HPP
