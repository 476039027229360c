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

using namespace emcx;

namespace {

Rational scalar_eval(const std::string& s, const ModelEnv& env) {
  ModelValue v = eval(parse_term(s), env);
  if (v.kind() == ModelValue::Kind::Func) FAIL("function value");
  return v.vec()[0];
}

ModelEnv env1(std::initializer_list<std::pair<const char*, Rational>> xs) {
  ModelEnv e;
  for (const auto& [n, r] : xs) e.set(n, ModelValue::edge({r}));
  return e;
}

}  // namespace

TEST_CASE("eval matches the affine formulas") {
  ModelEnv env;
  env.set("a", Rational(2));
  env.set("e", ModelValue::edge({Rational(1)}));
  env.set("x", ModelValue::edge({Rational(3)}));
  CHECK(scalar_eval("circ a e x", env) == Rational(5));  // (1-2)*1 + 2*3
  CHECK(scalar_eval("bullet a e x", env) == Rational(2));
  ModelEnv env2 = env1({{"e", Rational(7)}, {"x", Rational(9)}});
  CHECK(eval(Term::app(build(CombinatorName::Bar1), {parse_term("e"), parse_term("x")}), env2)
            .vec()[0] == Rational(9));
  // cvx c a b = a + c(b - a)
  ModelEnv env3;
  env3.set("c", Rational(1, 2)).set("a", Rational(0)).set("b", Rational(1));
  CHECK(scalar_eval("cvx c a b", env3) == Rational(1, 2));
  CHECK_THROWS_AS(scalar_eval("star a", [] {
                    ModelEnv e;
                    e.set("a", Rational(0));
                    return e;
                  }()),
                  Error);
}

TEST_CASE("barred constants equal the a -> 0 extrapolation of the combinators") {
  // Each combinator is affine in its node parameter, so two sample points
  // extrapolate exactly to 0. This pins the hardcoded denotations to the
  // combinator definitions rather than to transcription.
  struct Case {
    Term comb;
    ConstName bar;
    int args;
  };
  const Case cases[] = {
      {comb_sigma(), ConstName::SigBar, 3},   {comb_delta(), ConstName::DelBar, 3},
      {comb_iota(), ConstName::IotBar, 2},    {comb_sigma_c(), ConstName::SigbBar, 3},
      {comb_delta_c(), ConstName::DelbBar, 3}, {comb_j(), ConstName::JBar, 2},
  };
  Rng rng(42);
  for (const auto& c : cases) {
    bool scalar_world = c.bar == ConstName::SigbBar || c.bar == ConstName::DelbBar ||
                        c.bar == ConstName::JBar;
    for (int rep = 0; rep < 25; ++rep) {
      Rational a1(1, 3), a2(2, 5);
      std::vector<ModelValue> args;
      for (int i = 0; i < c.args; ++i) {
        long long num = rng.range(-9, 9);
        long long den = rng.range(1, 9);
        Rational r(num, den);
        args.push_back(scalar_world ? ModelValue::node(r) : ModelValue::edge({r}));
      }
      ModelEnv env;
      auto at = [&](Rational a) {
        ModelValue v = eval(c.comb, env).apply(ModelValue::node(a));
        for (const auto& arg : args) v = v.apply(arg);
        return v.vec()[0];
      };
      Rational v1 = at(a1), v2 = at(a2);
      // linear extrapolation to a = 0
      Rational v0 = v1 - a1 * (v2 - v1) / (a2 - a1);
      ModelValue bar = modeldetail::const_value(c.bar);
      for (const auto& arg : args) bar = bar.apply(arg);
      CHECK(bar.vec()[0] == v0);
    }
  }
}

TEST_CASE("oracle_equal separates and accepts") {
  Term bar0 = build(CombinatorName::Bar0);
  Term bar1 = build(CombinatorName::Bar1);
  CHECK_FALSE(oracle_equal(bar0, bar1, 1, 0));
  CHECK(oracle_equal(bar0, bar0, 1, 0));
  // Prop 4.2 (c): the approximate sum is approximately associative.
  Term lhs = parse_term(
      "\\e:E. \\x:E. \\y:E. \\z:E. SIG a e (SIG a e x y) z");
  (void)lhs;  // built below with real combinators
  Term sig = comb_sigma();
  Term a = parse_term("a"), e = parse_term("e"), x = parse_term("x"), y = parse_term("y"),
       z = parse_term("z");
  Term l = Term::app(sig, {a, e, Term::app(sig, {a, e, x, y}), z});
  Term r = Term::app(sig, {a, e, x, Term::app(sig, {a, Term::app(Term::con(ConstName::Dil), {a, e, x}), y, z})});
  CHECK(oracle_equal(l, r, 100, 0));
}

TEST_CASE("oracle samples function-typed metavariables") {
  Context ctx{{"B", parse_type("E -> E -> E")}};
  // (0a): bar0 . B = bar0
  Term lhs = build(CombinatorName::MulE, {build(CombinatorName::Bar0), parse_term("B", ctx)});
  CHECK(oracle_equal(lhs, build(CombinatorName::Bar0), 50, 1));
  // and a false equation is refuted
  CHECK_FALSE(oracle_equal(parse_term("B", ctx), build(CombinatorName::Bar0), 20, 1));
}

TEST_CASE("irq and N-irq axioms hold in the model") {
  // Def 2.1: R1 and R2, 100 exact trials each.
  Context ctx{{"a", Type::n()}, {"b", Type::n()}, {"e", Type::e()}, {"x", Type::e()}};
  CHECK(oracle_equal(parse_term("circ a e e", ctx), parse_term("e", ctx), 100, 0));
  CHECK(oracle_equal(parse_term("circ a e (bullet a e x)", ctx), parse_term("x", ctx), 100, 0));
  CHECK(oracle_equal(parse_term("bullet a e (circ a e x)", ctx), parse_term("x", ctx), 100, 0));
  // Def 2.2: (a) identity, (b) inverse, (c) composition.
  CHECK(oracle_equal(parse_term("circ 1 e x", ctx), parse_term("x", ctx), 100, 0));
  CHECK(oracle_equal(parse_term("circ (star a) e x", ctx), parse_term("bullet a e x", ctx), 100, 0));
  CHECK(oracle_equal(parse_term("circ a e (circ b e x)", ctx),
                     parse_term("circ (dot a b) e x", ctx), 100, 0));
}

TEST_CASE("field laws of Prop 8.6 hold exactly") {
  Context ctx{{"A", Type::nb()}, {"B", Type::nb()}, {"C", Type::nb()}, {"a", Type::n()}};
  auto plus = [&](const std::string& l, const std::string& r) {
    return "sigB 0 " + l + " " + r;
  };
  CHECK(oracle_equal(parse_term(plus("A", "B"), ctx), parse_term(plus("B", "A"), ctx), 100, 0));
  CHECK(oracle_equal(parse_term(plus(plus("A", "B"), "C"), ctx),
                     parse_term(plus("A", plus("B", "C")), ctx), 100, 0));
  CHECK(oracle_equal(parse_term(plus("A", "(jB 0 A)"), ctx), parse_term("0", ctx), 100, 0));
  CHECK(oracle_equal(parse_term("cvx A 0 (sigB 0 B C)", ctx),
                     parse_term("sigB 0 (cvx A 0 B) (cvx A 0 C)", ctx), 100, 0));
  CHECK(oracle_equal(parse_term("cvx a 0 (star a)", ctx), parse_term("1", ctx), 100, 0));
  CHECK(oracle_equal(parse_term("cvx A 0 B", ctx), parse_term("dot B A", ctx), 100, 0));
}

TEST_CASE("model dimension is configurable") {
  // dim 2: componentwise affine maps
  Term lhs = parse_term("circ a e (circ b e x)");
  Term rhs = parse_term("circ (dot a b) e x");
  CHECK(oracle_equal(lhs, rhs, 25, 3, /*dim=*/2));
  CHECK_FALSE(oracle_equal(build(CombinatorName::Bar0), build(CombinatorName::Bar1), 1, 0, 2));
}

TEST_CASE("naturals evaluate to e + n(x - e)") {
  Rng rng(9);
  for (int n = 0; n <= 8; ++n) {
    Term nat = natural(n);
    for (int rep = 0; rep < 20; ++rep) {
      Rational e(rng.range(-20, 20), rng.range(1, 20));
      Rational x(rng.range(-20, 20), rng.range(1, 20));
      ModelEnv env;
      ModelValue v = eval(nat, env).apply(ModelValue::edge({e})).apply(ModelValue::edge({x}));
      CHECK(v.vec()[0] == e + Rational(n) * (x - e));
    }
  }
}
