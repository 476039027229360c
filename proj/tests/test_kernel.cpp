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

#include <doctest.h>

#include "emcx/parser.hpp"
#include "emcx/proof.hpp"
#include "emcx/script_io.hpp"

using namespace emcx;

namespace {

const Lemma* no_deps(const std::string&) { return nullptr; }

ProofStep rewrite_step(const std::string& rule, int side, Path p, Direction d) {
  ProofStep st;
  st.kind = StepKind::Rewrite;
  st.name = rule;
  st.side = side;
  st.path = std::move(p);
  st.dir = d;
  return st;
}

ProofStep simple(StepKind k) {
  ProofStep st;
  st.kind = k;
  return st;
}

}  // namespace

TEST_CASE("kernel replays Prop 2.4's involution proof") {
  // star (star A) = A via (ext) and the two (in) equations.
  ProofScript s;
  s.name = "inv-involutive";
  s.calculus = Calc::BaseEm;
  s.metavars = {{"A", Type::n()}};
  s.lhs = parse_term("star (star A)", {{"A", Type::n()}});
  s.rhs = parse_term("A", {{"A", Type::n()}});
  ProofStep ext;
  ext.kind = StepKind::ExtInjective;
  ext.wrap_const = ConstName::Dil;
  s.steps.push_back(ext);
  s.steps.push_back(rewrite_step("in", 0, {}, Direction::Backward));   // circ(star X) <= bullet X
  s.steps.push_back(rewrite_step("in-star", 0, {}, Direction::Forward));  // bullet(star A) => circ A
  s.steps.push_back(simple(StepKind::Refl));
  Verdict v = check_script(s, no_deps);
  CAPTURE(v.failed_step);
  CAPTURE(v.reason);
  CHECK(v.ok);
}

TEST_CASE("a failing rewrite reports the step index") {
  ProofScript s;
  s.name = "bad";
  s.calculus = Calc::BaseEm;
  s.lhs = parse_term("circ a e x");
  s.rhs = parse_term("circ a e x");
  s.steps.push_back(rewrite_step("R2", 0, {}, Direction::Forward));
  s.steps.push_back(simple(StepKind::Refl));
  Verdict v = check_script(s, no_deps);
  CHECK_FALSE(v.ok);
  CHECK(v.failed_step == 0);
}

TEST_CASE("ext-injective rejects adversarial shapes") {
  // wrap over edge-typed sides must fail
  {
    ProofScript s;
    s.calculus = Calc::BaseEm;
    s.lhs = parse_term("e");
    s.rhs = parse_term("x");
    ProofStep st;
    st.kind = StepKind::ExtInjective;
    st.wrap_const = ConstName::Dil;
    s.steps.push_back(st);
    CHECK_FALSE(check_script(s, no_deps).ok);
  }
  // peel requires the heads to be literally the same dilation constant
  {
    ProofScript s;
    s.calculus = Calc::BaseEm;
    s.lhs = parse_term("circ a");
    s.rhs = parse_term("bullet a");
    ProofStep st;
    st.kind = StepKind::ExtInjective;
    st.wrap_const = ConstName::Dil;
    s.steps.push_back(st);
    CHECK_FALSE(check_script(s, no_deps).ok);
  }
  // bullet wrap needs node-typed (not extended) sides
  {
    ProofScript s;
    s.calculus = Calc::Emergent;
    s.lhs = parse_term("m");
    s.rhs = parse_term("m");
    ProofStep st;
    st.kind = StepKind::ExtInjective;
    st.wrap_const = ConstName::Idil;
    s.steps.push_back(st);
    s.steps.push_back(simple(StepKind::Refl));
    CHECK_FALSE(check_script(s, no_deps).ok);
  }
}

TEST_CASE("apply-both demands freshness, abstract-both inverts it") {
  ProofScript s;
  s.calculus = Calc::BaseEm;
  s.lhs = parse_term("\\e:E. \\x:E. circ 1 e x");
  s.rhs = parse_term("\\e:E. \\x:E. x");
  {
    ProofStep st;
    st.kind = StepKind::ApplyBoth;
    st.term = Term::var("u", Type::e());
    s.steps.push_back(st);
  }
  {
    ProofStep st;
    st.kind = StepKind::ApplyBoth;
    st.term = Term::var("v", Type::e());
    s.steps.push_back(st);
  }
  s.steps.push_back(rewrite_step("id-circ", 0, {0, 0}, Direction::Forward));
  {
    ProofStep st;
    st.kind = StepKind::Beta;
    st.side = 0;
    st.path = {0};
    s.steps.push_back(st);
  }
  {
    ProofStep st;
    st.kind = StepKind::Beta;
    st.side = 0;
    s.steps.push_back(st);
  }
  s.steps.push_back(simple(StepKind::Refl));
  Verdict v = check_script(s, no_deps);
  CAPTURE(v.failed_step);
  CAPTURE(v.reason);
  CHECK(v.ok);

  // non-fresh variable is rejected
  ProofScript bad = s;
  bad.steps.clear();
  bad.lhs = parse_term("\\e:E. x");
  bad.rhs = parse_term("\\e:E. x");
  ProofStep st;
  st.kind = StepKind::ApplyBoth;
  st.term = Term::var("x", Type::e());
  bad.steps.push_back(st);
  CHECK_FALSE(check_script(bad, no_deps).ok);
}

TEST_CASE("use-lemma instantiates schematic lemmas") {
  Lemma aab;
  aab.name = "demo-r1";
  aab.calculus = Calc::BaseEm;
  aab.metavars = {{"A", Type::n()}, {"B", Type::e()}};
  aab.lhs = parse_term("circ A B B", {{"A", Type::n()}, {"B", Type::e()}});
  aab.rhs = parse_term("B", {{"A", Type::n()}, {"B", Type::e()}});

  ProofScript s;
  s.calculus = Calc::BaseEm;
  s.lhs = parse_term("circ (dot a b) y y");
  s.rhs = parse_term("y");
  s.deps = {"demo-r1"};
  ProofStep st;
  st.kind = StepKind::UseLemma;
  st.name = "demo-r1";
  st.side = 0;
  st.dir = Direction::Forward;
  st.subst = {{"A", parse_term("dot a b")}, {"B", parse_term("y")}};
  s.steps.push_back(st);
  s.steps.push_back(simple(StepKind::Refl));
  auto resolver = [&aab](const std::string& n) -> const Lemma* {
    return n == "demo-r1" ? &aab : nullptr;
  };
  CHECK(check_script(s, resolver).ok);

  // undeclared dependency is refused even if resolvable
  ProofScript t = s;
  t.deps.clear();
  CHECK_FALSE(check_script(t, resolver).ok);

  // ill-typed instantiation is refused
  ProofScript u = s;
  u.steps[0].subst = {{"A", parse_term("m")}, {"B", parse_term("y")}};
  CHECK_FALSE(check_script(u, resolver).ok);
}

TEST_CASE("em-extend moves a goal to its finite preimage") {
  // Goal: ext(\a:N. circ a e e) = ext(\a:N. \e:E. e) pointwise shapes.
  Term fin_l = parse_term("\\a:N. \\e:E. circ a e e");
  Term fin_r = parse_term("\\a:N. \\e:E. e");
  Term ext_l = ext(fin_l).extended;
  Term ext_r = ext(fin_r).extended;
  ProofScript s;
  s.calculus = Calc::Emergent;
  s.lhs = ext_l;
  s.rhs = ext_r;
  s.steps.push_back(simple(StepKind::EmExtend));
  s.steps.push_back(rewrite_step("R1", 0, {0, 0}, Direction::Forward));
  s.steps.push_back(simple(StepKind::Refl));
  Verdict v = check_script(s, no_deps);
  CAPTURE(v.failed_step);
  CAPTURE(v.reason);
  CHECK(v.ok);

  // em-extend refuses terms outside the image of Ext
  ProofScript bad;
  bad.calculus = Calc::Emergent;
  bad.lhs = parse_term("SigB");
  bad.rhs = parse_term("SigB");
  bad.steps.push_back(simple(StepKind::EmExtend));
  bad.steps.push_back(simple(StepKind::Refl));
  CHECK_FALSE(check_script(bad, no_deps).ok);
}

TEST_CASE("script files round-trip bit-exactly") {
  ProofScript s;
  s.name = "demo";
  s.calculus = Calc::BaseEm;
  s.metavars = {{"A", Type::n()}};
  s.lhs = parse_term("star (star A)", {{"A", Type::n()}});
  s.rhs = parse_term("A", {{"A", Type::n()}});
  ProofStep ext;
  ext.kind = StepKind::ExtInjective;
  ext.wrap_const = ConstName::Dil;
  s.steps.push_back(ext);
  s.steps.push_back(rewrite_step("in", 0, {}, Direction::Backward));
  s.steps.push_back(rewrite_step("in-star", 0, {}, Direction::Forward));
  s.steps.push_back(simple(StepKind::Refl));
  std::string text = print_script(s);
  ProofScript back = parse_script(text);
  CHECK(print_script(back) == text);
  CHECK(check_script(back, no_deps).ok);
  // parse . print = id up to whitespace: reparse of a reformatted text
  std::string squashed;
  for (char c : text) squashed += (c == '\n') ? ' ' : c;
  CHECK(print_script(parse_script(squashed)) == text);
}
