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

#include "emcx/combinators.hpp"
#include "emcx/model.hpp"
#include "emcx/parser.hpp"
#include "emcx/rewrite.hpp"
#include "emcx/rules.hpp"
#include "emcx/search.hpp"

using namespace emcx;

TEST_CASE("rules_for exposes the paper's rule set") {
  const Calculus& base = rules_for("base-em");
  CHECK(base.find_rule("R2") != nullptr);
  CHECK(base.find_rule("beta") != nullptr);
  CHECK(base.find_rule("C")->bidirectional);
  CHECK(rules_for("emergent").find_rule("circ-zero") != nullptr);
  CHECK(rules_for("em-convex").find_rule("convex")->bidirectional);
  CHECK_FALSE(rules_for("em-convex").find_rule("convex")->in_normalize);
  CHECK(rules_for("n-convex").find_rule("R2-cvx") != nullptr);
  CHECK_THROWS_AS(rules_for("frobnitz"), Error);
  // every rule's patterns stay inside the calculus's constants
  for (const char* name : {"base-em", "emergent", "em-convex", "n-convex"}) {
    const Calculus& c = rules_for(name);
    for (const auto& r : c.rules) {
      if (r.special != RewriteRule::Special::None) continue;
      for (const Term* side : {&r.lhs, &r.rhs}) {
        std::function<void(const Term&)> walk = [&](const Term& t) {
          if (t.is_const()) {
            CAPTURE(name);
            CAPTURE(r.name);
            CHECK(c.constants.count(t.const_name()));
          } else if (t.is_app()) {
            walk(t.fun());
            walk(t.arg());
          } else if (t.is_lam()) {
            walk(t.body());
          }
        };
        walk(*side);
      }
    }
  }
}

TEST_CASE("apply_rule on the contract examples") {
  const Calculus& base = rules_for(Calc::BaseEm);
  Context ctx{{"B", Type::e()}};
  // R1 at the root
  Term t = parse_term("circ 1 B B", ctx);
  CHECK(alpha_equal(apply_rule(*base.find_rule("R1"), t, {}), parse_term("B", ctx)));
  // beta at the root
  Term b = parse_term("(\\x:E. x) y");
  CHECK(alpha_equal(apply_rule(*base.find_rule("beta"), b, {}), parse_term("y")));
  // no redex shape
  CHECK_THROWS_AS(apply_rule(*base.find_rule("R2"), parse_term("circ a e x"), {}), Error);
  // invalid path
  CHECK_THROWS_AS(apply_rule(*base.find_rule("R1"), t, {0, 0, 0, 0, 0}), Error);
  // backward use of a forward rule is kernel-only
  CHECK_THROWS_AS(apply_rule(*base.find_rule("in"), parse_term("circ (star a)"), {},
                             Direction::Backward),
                  Error);
  Term back = apply_rule(*base.find_rule("in"), parse_term("circ (star a)"), {},
                         Direction::Backward, /*privileged=*/true);
  CHECK(alpha_equal(back, parse_term("bullet a")));
  // R1 must not fire for an extended-node scale
  Term zero_scale = parse_term("circ 0 x x").with_calc(Calc::Emergent);
  CHECK_THROWS_AS(apply_rule(*base.find_rule("R1"), zero_scale, {}), Error);
}

TEST_CASE("normalize on the contract examples") {
  const Calculus& base = rules_for(Calc::BaseEm);
  CHECK(alpha_equal(normalize(parse_term("circ 1 e x"), base).term, parse_term("x")));
  CHECK(alpha_equal(normalize(parse_term("dot a (star a)"), base).term, parse_term("1")));
  CHECK(alpha_equal(normalize(parse_term("circ a e (bullet a e y)"), base).term,
                    parse_term("y")));
  // idempotent on normal results
  Term n = normalize(parse_term("circ a e (bullet a e y)"), base).term;
  CHECK(alpha_equal(normalize(n, base).term, n));
  // deterministic
  Term big = Term::app(comb_sigma(), {parse_term("a"), parse_term("e"), parse_term("x"),
                                      parse_term("y")});
  CHECK(alpha_equal(normalize(big, base).term, normalize(big, base).term));
  // fuel exhaustion is a status
  NormResult r = normalize(big, base, 1);
  CHECK(r.status == NormStatus::FuelExhausted);
}

TEST_CASE("node-group canonicalization inside normalize") {
  const Calculus& base = rules_for(Calc::BaseEm);
  CHECK(alpha_equal(normalize(parse_term("dot (star a) a"), base).term, parse_term("1")));
  CHECK(alpha_equal(normalize(parse_term("star (star a)"), base).term, parse_term("a")));
  CHECK(alpha_equal(normalize(parse_term("star 1"), base).term, parse_term("1")));
  CHECK(alpha_equal(normalize(parse_term("dot b a"), base).term,
                    normalize(parse_term("dot a b"), base).term));
  CHECK(alpha_equal(normalize(parse_term("dot (dot a b) (star b)"), base).term,
                    parse_term("a")));
  const Calculus& em = rules_for(Calc::Emergent);
  CHECK(alpha_equal(normalize(parse_term("dot m 0"), em).term, parse_term("0")));
}

TEST_CASE("emergent zero rules") {
  const Calculus& em = rules_for(Calc::Emergent);
  Term sig0 = Term::app(comb_sigma(), parse_term("0"));
  CHECK(alpha_equal(normalize(sig0, em).term, parse_term("SigB")));
  CHECK(alpha_equal(normalize(parse_term("circ 0 e x"), em).term, parse_term("e")));
  // Sigma applied to an Nb variable is stuck (neither beta nor sig-zero)
  Term sigm = Term::app(comb_sigma(), parse_term("m"));
  CHECK(alpha_equal(normalize(sigm, em).term, sigm));
  // but applied to a node term it unfolds by beta
  Term siga = Term::app(comb_sigma(), parse_term("a"));
  CHECK(normalize(siga, em).term.is_lam());
}

TEST_CASE("n-convex rules mirror the base ones") {
  const Calculus& nc = rules_for(Calc::NConvex);
  CHECK(alpha_equal(normalize(parse_term("cvx 1 p q"), nc).term, parse_term("q")));
  CHECK(alpha_equal(normalize(parse_term("cvx a p (icvx a p q)"), nc).term, parse_term("q")));
  CHECK(alpha_equal(normalize(parse_term("cvx 0 p q"), nc).term, parse_term("p")));
  Term j0 = Term::app(comb_j(), parse_term("0"));
  CHECK(alpha_equal(normalize(j0, nc).term, parse_term("jB")));
}

TEST_CASE("naturals normalize to the paper's closed forms") {
  const Calculus& em = rules_for(Calc::Emergent);
  CHECK(alpha_equal(normalize(natural(1), em).term, parse_term("\\e:E. \\x:E. x")));
  CHECK(alpha_equal(normalize(natural(2), em).term, parse_term("\\e:E. \\x:E. iotB x e")));
}

TEST_CASE("prove_equal basics") {
  const Calculus& base = rules_for(Calc::BaseEm);
  // reflexivity gives an (almost) empty proof
  Term t = parse_term("circ a e x");
  auto p = prove_equal(t, t, base, 1000);
  REQUIRE(p);
  CHECK(p->steps.size() == 1);  // just refl
  // Prop 2.7 (0a): bar0 . A = bar0 by normalization
  Context ctx{{"A", parse_type("E -> E -> E")}};
  Term lhs = build(CombinatorName::MulE, {build(CombinatorName::Bar0), parse_term("A", ctx)});
  auto q = prove_equal(lhs, build(CombinatorName::Bar0), base, 1000);
  REQUIRE(q);
  // separation: bar0 = bar1 must not be provable
  SearchStats stats;
  auto sep = prove_equal(build(CombinatorName::Bar0), build(CombinatorName::Bar1), base, 3000,
                         {}, &stats);
  CHECK_FALSE(sep);
}

TEST_CASE("prove_equal uses backward moves when needed") {
  const Calculus& base = rules_for(Calc::BaseEm);
  // iota a e e = e needs only forward steps
  Term l = Term::app(comb_iota(), {parse_term("a"), parse_term("e"), parse_term("e")});
  auto p = prove_equal(l, parse_term("e"), base, 2000);
  REQUIRE(p);
  // circ (star a) (circ a e x) e = iota-body: needs in backward + R2
  Term lhs = parse_term("circ a (circ a e x) (circ (star a) (circ a e x) e)");
  auto q = prove_equal(lhs, parse_term("e"), base, 20000);
  REQUIRE(q);
}

TEST_CASE("search proofs replay through the kernel") {
  const Calculus& base = rules_for(Calc::BaseEm);
  Term lhs = parse_term("circ a (circ a e x) (circ (star a) (circ a e x) e)");
  auto p = prove_equal(lhs, parse_term("e"), base, 20000);
  REQUIRE(p);
  p->name = "search-result";
  Verdict v = check_script(*p, [](const std::string&) -> const Lemma* { return nullptr; });
  CAPTURE(v.reason);
  CHECK(v.ok);
}

TEST_CASE("model soundness of search proofs") {
  const Calculus& base = rules_for(Calc::BaseEm);
  Term l = Term::app(comb_iota(), {parse_term("a"), parse_term("e"), parse_term("e")});
  auto p = prove_equal(l, parse_term("e"), base, 2000);
  REQUIRE(p);
  CHECK(oracle_equal(l, parse_term("e"), 100, 0));
}

TEST_CASE("type preservation along single rewrite steps") {
  // Randomized terms are exercised in the acceptance suite; here the spec's
  // named edge case: beta may refine Nb to N.
  const Calculus& em = rules_for(Calc::Emergent);
  Term t = parse_term("(\\m:Nb. m) a");
  CHECK(infer_type(t) == Type::nb());
  Term stepped = apply_rule(*em.find_rule("beta"), t, {});
  CHECK(subtype_le(infer_type(stepped), Type::nb()));
}
