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

#ifndef EMCX_SEARCH_HPP
#define EMCX_SEARCH_HPP

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "emcx/proof.hpp"
#include "emcx/rewrite.hpp"
#include "emcx/rules.hpp"

namespace emcx {

// Bounded bidirectional equality search.
//
// Front end: rule-only leftmost-outermost normalization of both sides with a
// replayable trace. Back end: breadth-first search from both normal forms
// over forward and backward rule applications at all paths, optionally
// extended with already-proven lemmas as bidirectional equations. The two
// frontiers alternate deterministically (smaller frontier expands first, ties
// to the left); successor enumeration follows (path preorder, rule order,
// direction) so runs are reproducible. Absence of a proof within budget is
// not a disproof.

struct SearchStats {
  size_t expanded = 0;
  bool budget_exhausted = false;
};

namespace searchdetail {

struct Move {
  bool is_lemma = false;
  std::string name;
  Path path;
  Direction dir = Direction::Forward;
  std::vector<std::pair<std::string, Term>> subst;  // lemma moves
};

struct NodeRec {
  Term term;
  int parent = -1;
  Move via;
};

inline void all_paths(const Term& t, Path& cur, std::vector<Path>& out) {
  out.push_back(cur);
  if (t.is_app()) {
    cur.push_back(0);
    all_paths(t.fun(), cur, out);
    cur.back() = 1;
    all_paths(t.arg(), cur, out);
    cur.pop_back();
  } else if (t.is_lam()) {
    cur.push_back(0);
    all_paths(t.body(), cur, out);
    cur.pop_back();
  }
}

// Applies one rule/lemma in one direction at one path; nullopt if no match.
inline std::optional<Term> try_move(const Term& t, const RewriteRule& rule, const Path& p,
                                    Direction dir) {
  try {
    return apply_rule(rule, t, p, dir, /*privileged=*/true);
  } catch (const Error&) {
    return std::nullopt;
  }
}

struct Frontier {
  std::deque<int> queue;
  std::vector<NodeRec> nodes;
  std::multimap<uint64_t, int> seen;

  int find(const Term& t) const {
    uint64_t h = term_hash(t);
    for (auto [it, end] = seen.equal_range(h); it != end; ++it)
      if (alpha_equal(nodes[static_cast<size_t>(it->second)].term, t)) return it->second;
    return -1;
  }
  int add(const Term& t, int parent, Move via) {
    int id = static_cast<int>(nodes.size());
    nodes.push_back(NodeRec{t, parent, std::move(via)});
    seen.emplace(term_hash(t), id);
    queue.push_back(id);
    return id;
  }
};

inline std::vector<ProofStep> chain_steps(const Frontier& f, int id, int side) {
  std::vector<ProofStep> rev;
  while (id >= 0) {
    const NodeRec& n = f.nodes[static_cast<size_t>(id)];
    if (n.parent < 0) break;
    ProofStep st;
    st.kind = n.via.is_lemma ? StepKind::UseLemma
              : n.via.name == "beta" ? StepKind::Beta
              : n.via.name == "eta" ? StepKind::Eta
                                    : StepKind::Rewrite;
    st.name = n.via.name;
    st.side = side;
    st.path = n.via.path;
    st.dir = n.via.dir;
    st.subst = n.via.subst;
    rev.push_back(std::move(st));
    id = n.parent;
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

}  // namespace searchdetail

// Lemmas usable as search moves, wrapped with their metavariable typing.
struct SearchEquation {
  std::string name;
  Term lhs;
  Term rhs;
  std::map<std::string, Type> metavars;
};

inline std::optional<ProofScript> prove_equal(const Term& t1, const Term& t2,
                                              const Calculus& calc, size_t budget = 50000,
                                              const std::vector<SearchEquation>& equations = {},
                                              SearchStats* stats = nullptr) {
  using namespace searchdetail;
  Term lhs = t1.with_calc(calc.id);
  Term rhs = t2.with_calc(calc.id);

  ProofScript out;
  out.calculus = calc.id;
  out.lhs = lhs;
  out.rhs = rhs;
  for (const auto& [n, ty] : free_vars(lhs)) out.metavars.emplace(n, ty);
  for (const auto& [n, ty] : free_vars(rhs)) out.metavars.emplace(n, ty);

  // Fast path: normalize and compare, emitting both traces.
  NormResult ln = normalize_traced(lhs, calc, budget);
  NormResult rn = normalize_traced(rhs, calc, budget);
  auto trace_to_steps = [](const NormResult& nr, int side) {
    std::vector<ProofStep> steps;
    for (const auto& ts : nr.trace) {
      ProofStep st;
      st.kind = ts.rule == "beta" ? StepKind::Beta : ts.rule == "eta" ? StepKind::Eta
                                                                      : StepKind::Rewrite;
      st.name = ts.rule;
      st.side = side;
      st.path = ts.path;
      steps.push_back(std::move(st));
    }
    return steps;
  };
  auto finish = [&](std::vector<ProofStep> steps) {
    ProofStep refl;
    refl.kind = StepKind::Refl;
    steps.push_back(refl);
    out.steps = std::move(steps);
    std::set<std::string> used;
    for (const auto& st : out.steps)
      if (st.kind == StepKind::UseLemma) used.insert(st.name);
    out.deps.assign(used.begin(), used.end());
    return out;
  };

  if (alpha_equal(ln.term, rn.term)) {
    std::vector<ProofStep> steps = trace_to_steps(ln, 0);
    auto r = trace_to_steps(rn, 1);
    steps.insert(steps.end(), r.begin(), r.end());
    return finish(std::move(steps));
  }

  // Two-ended BFS from the normal forms.
  Frontier sides[2];
  sides[0].add(ln.term, -1, Move{});
  sides[1].add(rn.term, -1, Move{});

  // Wrap lemmas as bidirectional equations.
  std::vector<RewriteRule> lemma_rules;
  for (const auto& eq : equations)
    lemma_rules.push_back(RewriteRule::make(eq.name, eq.lhs, eq.rhs, eq.metavars, true, false));

  size_t expanded = 0;
  auto meet = [&](int side, int my_id, const Term& candidate) -> std::optional<ProofScript> {
    int other = sides[1 - side].find(candidate);
    if (other < 0) return std::nullopt;
    std::vector<ProofStep> steps = trace_to_steps(ln, 0);
    auto rtrace = trace_to_steps(rn, 1);
    steps.insert(steps.end(), rtrace.begin(), rtrace.end());
    auto mine = chain_steps(sides[side], my_id, side);
    auto theirs = chain_steps(sides[1 - side], other, 1 - side);
    if (side == 0) {
      steps.insert(steps.end(), mine.begin(), mine.end());
      steps.insert(steps.end(), theirs.begin(), theirs.end());
    } else {
      steps.insert(steps.end(), theirs.begin(), theirs.end());
      steps.insert(steps.end(), mine.begin(), mine.end());
    }
    return finish(std::move(steps));
  };

  while (expanded < budget && (!sides[0].queue.empty() || !sides[1].queue.empty())) {
    int side;
    if (sides[0].queue.empty())
      side = 1;
    else if (sides[1].queue.empty())
      side = 0;
    else
      side = sides[0].queue.size() <= sides[1].queue.size() ? 0 : 1;
    Frontier& f = sides[side];
    int id = f.queue.front();
    f.queue.pop_front();
    ++expanded;
    Term cur = f.nodes[static_cast<size_t>(id)].term;

    std::vector<Path> paths;
    Path scratch;
    all_paths(cur, scratch, paths);
    for (const Path& p : paths) {
      auto consider = [&](const RewriteRule& rule, Direction dir,
                          bool lemma) -> std::optional<ProofScript> {
        auto next = try_move(cur, rule, p, dir);
        if (!next) return std::nullopt;
        if (f.find(*next) >= 0) return std::nullopt;
        Move mv;
        mv.is_lemma = lemma;
        mv.name = rule.name;
        mv.path = p;
        mv.dir = dir;
        if (lemma) {
          // Recover the instantiation for the kernel's UseLemma check.
          const Term& from = dir == Direction::Forward ? rule.lhs : rule.rhs;
          auto bind = match_pattern(from, subterm_at(cur, p), rule.metavars);
          if (!bind) return std::nullopt;
          for (const auto& [n, inst] : *bind) mv.subst.emplace_back(n, inst);
          for (const auto& [n, ty] : rule.metavars)
            if (!bind->count(n)) return std::nullopt;  // underdetermined
        }
        int nid = f.add(*next, id, std::move(mv));
        return meet(side, nid, *next);
      };
      for (const auto& rule : calc.rules) {
        if (rule.special == RewriteRule::Special::Beta) {
          if (auto hit = consider(rule, Direction::Forward, false)) return hit;
          continue;
        }
        if (auto hit = consider(rule, Direction::Forward, false)) return hit;
        if (rule.name == "C") continue;  // symmetric: backward adds nothing
        if (auto hit = consider(rule, Direction::Backward, false)) return hit;
      }
      for (const auto& rule : lemma_rules) {
        if (auto hit = consider(rule, Direction::Forward, true)) return hit;
        if (auto hit = consider(rule, Direction::Backward, true)) return hit;
      }
    }
  }
  if (stats) {
    stats->expanded = expanded;
    stats->budget_exhausted = expanded >= budget;
  }
  return std::nullopt;
}

}  // namespace emcx

#endif  // EMCX_SEARCH_HPP
