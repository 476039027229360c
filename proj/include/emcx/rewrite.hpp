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

#ifndef EMCX_REWRITE_HPP
#define EMCX_REWRITE_HPP

#include <optional>
#include <string>
#include <vector>

#include "emcx/rules.hpp"
#include "emcx/term.hpp"

namespace emcx {

enum class NormStatus { Normal, FuelExhausted };

struct TraceStep {
  std::string rule;
  Path path;
};

struct NormResult {
  Term term;
  NormStatus status = NormStatus::Normal;
  size_t steps = 0;
  std::vector<TraceStep> trace;
};

namespace rwdetail {

// Tries every normalize-eligible rule at this node, in rule-list order.
inline std::optional<std::pair<Term, const RewriteRule*>> step_at(const Calculus& calc,
                                                                  const Term& node) {
  for (const auto& rule : calc.rules) {
    if (!rule.in_normalize) continue;
    switch (rule.special) {
      case RewriteRule::Special::Beta: {
        auto r = ruledetail::beta_step(node);
        if (r) return std::make_pair(*r, &rule);
        break;
      }
      case RewriteRule::Special::Eta: {
        auto r = ruledetail::eta_contract(node, rule.eta_edge);
        if (r) return std::make_pair(*r, &rule);
        break;
      }
      case RewriteRule::Special::None: {
        auto bind = match_pattern(rule.lhs, node, rule.metavars);
        if (bind) return std::make_pair(instantiate(rule.rhs, *bind, rule.metavars), &rule);
        break;
      }
    }
  }
  return std::nullopt;
}

// Leftmost-outermost: the node itself, then fun/body, then arg.
inline bool find_redex(const Calculus& calc, const Term& t, Path& path, Term& replacement,
                       const RewriteRule** rule) {
  if (auto r = step_at(calc, t)) {
    replacement = r->first;
    *rule = r->second;
    return true;
  }
  if (t.is_app()) {
    path.push_back(0);
    if (find_redex(calc, t.fun(), path, replacement, rule)) return true;
    path.back() = 1;
    if (find_redex(calc, t.arg(), path, replacement, rule)) return true;
    path.pop_back();
    return false;
  }
  if (t.is_lam()) {
    path.push_back(0);
    if (find_redex(calc, t.body(), path, replacement, rule)) return true;
    path.pop_back();
    return false;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Node-group canonicalization. (C) never terminates as a rewrite rule, so
// normalize instead flattens maximal dot/star trees over node terms, cancels
// inverse pairs, drops units, absorbs zero and sorts the factors under the
// fixed term order. Everything it does is a bundled lemma (Prop 2.4 and the
// Def 5.2 zero extension); the kernel never relies on it.

struct Factor {
  Term atom;
  int sign;  // +1 or -1
};

inline bool flatten_group(const Term& t, int sign, std::vector<Factor>& out, bool& zero) {
  if (t.is_const(ConstName::Zero)) {
    zero = true;
    return true;
  }
  if (t.is_const(ConstName::One)) return true;
  if (t.is_app() && t.fun().is_const(ConstName::Inv)) {
    return flatten_group(t.arg(), -sign, out, zero);
  }
  if (t.is_app() && t.fun().is_app() && t.fun().fun().is_const(ConstName::Mul)) {
    return flatten_group(t.fun().arg(), sign, out, zero) && flatten_group(t.arg(), sign, out, zero);
  }
  out.push_back(Factor{t, sign});
  return true;
}

inline Term rebuild_group(std::vector<Factor> factors, bool zero) {
  if (zero) return Term::con(ConstName::Zero);
  std::stable_sort(factors.begin(), factors.end(), [](const Factor& a, const Factor& b) {
    int c = term_order(a.atom, b.atom);
    if (c != 0) return c < 0;
    return a.sign > b.sign;
  });
  // Cancel equal atoms with opposite signs.
  std::vector<Factor> kept;
  for (size_t i = 0; i < factors.size();) {
    size_t j = i;
    int net = 0;
    while (j < factors.size() && alpha_equal(factors[j].atom, factors[i].atom)) {
      net += factors[j].sign;
      ++j;
    }
    for (int k = 0; k < (net < 0 ? -net : net); ++k)
      kept.push_back(Factor{factors[i].atom, net < 0 ? -1 : 1});
    i = j;
  }
  if (kept.empty()) return Term::con(ConstName::One);
  auto render = [](const Factor& f) {
    return f.sign > 0 ? f.atom : Term::app(Term::con(ConstName::Inv), f.atom);
  };
  Term acc = render(kept.back());
  for (size_t i = kept.size() - 1; i-- > 0;)
    acc = Term::app(Term::app(Term::con(ConstName::Mul), render(kept[i])), acc);
  return acc;
}

inline bool is_group_node(const Term& t) {
  if (t.is_app() && t.fun().is_const(ConstName::Inv)) return true;
  return t.is_app() && t.fun().is_app() && t.fun().fun().is_const(ConstName::Mul);
}

inline Term group_canon(const Term& t) {
  Term rebuilt = t;
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const: return t;
    case Term::Kind::Lam: {
      Term b = group_canon(t.body());
      rebuilt = b.same_node(t.body()) ? t : Term::lam(t.name(), t.bound_type(), b);
      break;
    }
    case Term::Kind::App: {
      Term f = group_canon(t.fun());
      Term a = group_canon(t.arg());
      rebuilt = (f.same_node(t.fun()) && a.same_node(t.arg())) ? t : Term::app(f, a);
      break;
    }
  }
  if (!is_group_node(rebuilt)) return rebuilt;
  std::vector<Factor> factors;
  bool zero = false;
  flatten_group(rebuilt, 1, factors, zero);
  // A negative net exponent of an extended-node atom would need star at Nb;
  // such terms cannot type-check, so rebuild is always well-typed.
  Term canon = rebuild_group(std::move(factors), zero);
  return alpha_equal(canon, rebuilt) ? rebuilt : canon;
}

}  // namespace rwdetail

// Leftmost-outermost normalization with the orientation choices documented in
// rules.hpp, plus node-group canonicalization. Deterministic in (term,
// calculus, fuel); fuel exhaustion is a status, not an error.
inline NormResult normalize(const Term& t, const Calculus& calc, size_t fuel = 10000) {
  NormResult res;
  res.term = t;
  for (;;) {
    bool progressed = false;
    while (res.steps < fuel) {
      Path path;
      Term replacement;
      const RewriteRule* rule = nullptr;
      if (!rwdetail::find_redex(calc, res.term, path, replacement, &rule)) break;
      res.term = replace_at(res.term, path, replacement.with_calc(res.term.calc()))
                     .with_calc(res.term.calc());
      res.trace.push_back(TraceStep{rule->name, path});
      ++res.steps;
      progressed = true;
    }
    if (res.steps >= fuel) {
      Path path;
      Term replacement;
      const RewriteRule* rule = nullptr;
      if (rwdetail::find_redex(calc, res.term, path, replacement, &rule)) {
        res.status = NormStatus::FuelExhausted;
        return res;
      }
    }
    Term canon = rwdetail::group_canon(res.term).with_calc(res.term.calc());
    if (alpha_equal(canon, res.term)) {
      res.status = NormStatus::Normal;
      return res;
    }
    res.term = canon;
    ++res.steps;
    if (!progressed && res.steps >= fuel) {
      res.status = NormStatus::FuelExhausted;
      return res;
    }
  }
}

// Rule-only variant whose trace is a replayable step list (no silent
// canonicalization). Used by the equality search.
inline NormResult normalize_traced(const Term& t, const Calculus& calc, size_t fuel = 10000) {
  NormResult res;
  res.term = t;
  while (res.steps < fuel) {
    Path path;
    Term replacement;
    const RewriteRule* rule = nullptr;
    if (!rwdetail::find_redex(calc, res.term, path, replacement, &rule)) {
      res.status = NormStatus::Normal;
      return res;
    }
    res.term = replace_at(res.term, path, replacement.with_calc(res.term.calc()))
                   .with_calc(res.term.calc());
    res.trace.push_back(TraceStep{rule->name, path});
    ++res.steps;
  }
  Path path;
  Term replacement;
  const RewriteRule* rule = nullptr;
  res.status = rwdetail::find_redex(calc, res.term, path, replacement, &rule)
                   ? NormStatus::FuelExhausted
                   : NormStatus::Normal;
  return res;
}

}  // namespace emcx

#endif  // EMCX_REWRITE_HPP
