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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "emcx/combinators.hpp"
#include "emcx/extension.hpp"
#include "emcx/finite.hpp"
#include "emcx/parser.hpp"
#include "emcx/rational.hpp"
#include "emcx/term.hpp"
#include "emcx/typecheck.hpp"

using namespace emcx;

TEST_CASE("rational arithmetic normalizes and guards") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK((Rational(-3, 9)).str() == "-1/3");
  CHECK(Rational::parse("-7/14") == Rational(-1, 2));
  CHECK_THROWS_AS(Rational(1, 0), Error);
  CHECK_THROWS_AS(Rational(1, 2).reciprocal() / Rational(0), Error);
}

TEST_CASE("alpha equality") {
  CHECK(alpha_equal(parse_term("\\e:E. \\x:E. x"), parse_term("\\u:E. \\v:E. v")));
  CHECK_FALSE(alpha_equal(parse_term("\\e:E. \\x:E. e"), parse_term("\\e:E. \\x:E. x")));
  CHECK(alpha_equal(parse_term("x"), parse_term("x")));
  CHECK_FALSE(alpha_equal(parse_term("\\e:E. \\x:E. x"), parse_term("\\a:N. \\x:E. x")));
}

TEST_CASE("substitution is capture avoiding") {
  // substitute a := 1 in \x:E. circ a e x
  Term t = parse_term("\\x:E. circ a e x");
  Term r = substitute(t, "a", Type::n(), parse_term("1"), Type::n());
  CHECK(alpha_equal(r, parse_term("\\x:E. circ 1 e x")));

  // substitute y := x in \x:E. y forces a rename
  Term u = parse_term("\\x:E. y", {{"y", Type::e()}});
  Term s = substitute(u, "y", Type::e(), parse_term("x"), Type::e());
  CHECK(s.is_lam());
  CHECK(s.name() != "x");
  CHECK(s.body().is_var());
  CHECK(s.body().name() == "x");

  // variable head
  Term v = substitute(parse_term("x"), "x", Type::e(),
                      parse_term("circ a b.1 c.1", {{"b.1", Type::e()}, {"c.1", Type::e()}}),
                      Type::e());
  CHECK(print_term(v) == "circ a b.1 c.1");
}

TEST_CASE("parser round trips") {
  const char* samples[] = {
      "circ 1 e x",
      "\\e:E. \\x:E. x",
      "dot a (star a)",
      "\\a:N. circ a",
      "\\u:(E -> E). u x",
      "SigB e x (iotB e y)",
      "cvx 0 p q",
      "\\a:Nb. sigB 0 a 1",
  };
  for (const char* s : samples) {
    Term t = parse_term(s);
    Term back = parse_term(print_term(t));
    CAPTURE(s);
    CHECK(alpha_equal(t, back));
  }
}

TEST_CASE("printer avoids spurious parens") {
  CHECK(print_term(parse_term("circ 1 e x")) == "circ 1 e x");
  CHECK(print_term(parse_term("dot a (star a)")) == "dot a (star a)");
  CHECK(print_term(parse_term("(\\e:E. e) x")) == "(\\e:E. e) x");
}

TEST_CASE("infer_type on the contract examples") {
  // identity-shaped abstraction
  CHECK(infer_type(Context{}, parse_term("\\e:E. \\x:E. x")).str() == "E -> E -> E");
  // circ 1 : E -> E -> E (eta consequence of the constant signature)
  CHECK(infer_type(Context{}, parse_term("circ 1")).str() == "E -> E -> E");
  // E -> E supplied where N expected
  CHECK_THROWS_AS(infer_type(Context{}, parse_term("(\\a:N. circ a) (\\e:E. e)")), Error);
  // context must bind free variables
  CHECK_THROWS_AS(infer_type(Context{}, parse_term("circ a e x")), Error);
  CHECK(infer_type(Context{{"a", Type::n()}, {"e", Type::e()}, {"x", Type::e()}},
                   parse_term("circ a e x")) == Type::e());
}

TEST_CASE("subtyping N <= Nb at application positions") {
  CHECK(infer_type(parse_term("circ a")).str() == "E -> E -> E");   // a : N fed to Nb slot
  CHECK(infer_type(parse_term("dot a b")) == Type::n());            // refinement keeps N
  CHECK(infer_type(parse_term("dot a m")) == Type::nb());
  CHECK(infer_type(parse_term("star (dot a b)")) == Type::n());
  CHECK_THROWS_AS(infer_type(parse_term("star (dot a m)")), Error);
  CHECK_THROWS_AS(infer_type(parse_term("bullet 0")), Error);       // bullet needs N
}

TEST_CASE("combinator generator applications accept Nb") {
  Term sig_m = Term::app(comb_sigma(), parse_term("m"));
  CHECK(infer_type(sig_m).str() == "E -> E -> E -> E");
  Term sig_zero = Term::app(comb_sigma(), parse_term("0"));
  CHECK(infer_type(sig_zero).str() == "E -> E -> E -> E");
  // but an arbitrary lambda head does not get the dispensation
  CHECK_THROWS_AS(infer_type(Term::app(parse_term("\\a:N. circ a"), parse_term("0"))), Error);
}

TEST_CASE("is_finite on the contract examples") {
  // the Sigma combinator applied to a node variable
  Term sig_a = Term::app(comb_sigma(), parse_term("a"));
  CHECK(is_finite(sig_a));
  // circ 0 is excluded
  CHECK_FALSE(is_finite(parse_term("circ 0").with_calc(Calc::Emergent)));
  // A - B with A : N and B = circ 1 (Prop 7.2's shape)
  Term diff = build(CombinatorName::DiffB, {parse_term("circ 1")});
  Term applied = Term::app(diff, parse_term("a"));
  CHECK(is_finite(applied));
  // bare combinators are not finite; their bodies mention star
  CHECK_FALSE(is_finite(comb_sigma()));
  CHECK_FALSE(is_finite(comb_delta()));
  // variables are finite, including arrow-typed metavariables
  CHECK(is_finite(parse_term("x")));
  CHECK(is_finite(Term::var("B", Type::arrows({Type::e(), Type::e()}, Type::e()))));
  CHECK_FALSE(is_finite(parse_term("m")));  // Nb variable is not a finite term
  // n-convex grammar
  Term sigc = Term::app(comb_sigma_c(), parse_term("a"));
  CHECK(is_finite_in(sigc, FiniteGrammar::NConvex));
  CHECK_FALSE(is_finite_in(parse_term("circ 0"), FiniteGrammar::NConvex));
  CHECK(is_finite_in(parse_term("cvx a p q"), FiniteGrammar::NConvex));
}

TEST_CASE("fold recovers generator form from beta images") {
  const Calculus& base = rules_for(Calc::BaseEm);
  Term sig = Term::app(comb_sigma(), {parse_term("a"), parse_term("e"), parse_term("x"),
                                      parse_term("y")});
  Term unfolded = normalize(sig, base).term;
  CHECK_FALSE(is_finite(unfolded));
  Term folded = fold_combinators(unfolded);
  CHECK(alpha_equal(folded, sig));
  CHECK(is_finite(folded));

  Term io = Term::app(comb_iota(), {parse_term("a"), parse_term("e"), parse_term("x")});
  Term io_unf = normalize(io, base).term;
  CHECK(alpha_equal(fold_combinators(io_unf), io));
}

TEST_CASE("ext follows Def 5.2") {
  // ext(\a:N. circ a) = \a:Nb. circ a
  ExtensionResult r = ext(parse_term("\\a:N. circ a"));
  CHECK(r.extended.is_lam());
  CHECK(r.extended.bound_type() == Type::nb());
  // ext(x) = x
  CHECK(alpha_equal(ext(parse_term("x")).extended, parse_term("x")));
  // Sigma combinator applied to a bound node variable keeps its literal head
  Term t = Term::lam("a", Type::n(), Term::app(comb_sigma(), Term::var("a", Type::n())));
  Term extended = ext(t).extended;
  CHECK(extended.bound_type() == Type::nb());
  CHECK(extended.body().is_app());
  CHECK(alpha_equal(extended.body().fun(), comb_sigma()));
  CHECK(extended.body().arg().var_type() == Type::nb());
  // ext rejects non-finite input
  CHECK_THROWS_AS(ext(parse_term("circ 0")), Error);
  // ext_c
  CHECK(alpha_equal(ext_c(parse_term("1")).extended, parse_term("1")));
  Term tc = Term::lam("a", Type::n(), Term::app(comb_sigma_c(), Term::var("a", Type::n())));
  CHECK(ext_c(tc).extended.bound_type() == Type::nb());
  CHECK_THROWS_AS(ext_c(parse_term("circ 0")), Error);
  // unext inverts ext
  Term back = unext_in(extended, FiniteGrammar::Base);
  CHECK(alpha_equal(back, t));
}

TEST_CASE("ext commutes with substitution of finite terms") {
  Term t = parse_term("\\x:E. circ a x (circ b x x)");
  Term repl = parse_term("dot c c");
  Term lhs = ext(substitute(t, "a", Type::n(), repl, Type::n())).extended;
  Term ext_t = ext(t).extended;
  Term ext_r = ext(repl).extended;
  Term rhs = substitute(ext_t, "a", Type::nb(), ext_r, infer_type(ext_r));
  CHECK(alpha_equal(lhs, rhs));
}

TEST_CASE("build returns the documented closed combinators") {
  CHECK(print_term(build(CombinatorName::Bar0)) == "\\e:E. \\x:E. e");
  CHECK(print_term(build(CombinatorName::Bar1)) == "\\e:E. \\x:E. x");
  // iota = \a.\e.\x. circ (star a) (circ a e x) e
  CHECK(alpha_equal(build(CombinatorName::Iota),
                    parse_term("\\a:N. \\e:E. \\x:E. circ (star a) (circ a e x) e")));
  // mulE: A . B = \e.\x. A e (B e x)
  Context ctx{{"A", parse_type("E -> E -> E")}, {"B", parse_type("E -> E -> E")}};
  Term m = build(CombinatorName::MulE, {parse_term("A", ctx), parse_term("B", ctx)});
  CHECK(alpha_equal(m, parse_term("\\e:E. \\x:E. A e (B e x)", ctx)));
  // every closed combinator type-checks at its documented type
  CHECK(infer_type(build(CombinatorName::Diff)).str() == "N -> N -> E -> E -> E");
  CHECK(infer_type(build(CombinatorName::Sigma)).str() == "N -> E -> E -> E -> E");
  CHECK(infer_type(build(CombinatorName::Delta)).str() == "N -> E -> E -> E -> E");
  CHECK(infer_type(build(CombinatorName::Iota)).str() == "N -> E -> E -> E");
  CHECK(infer_type(build(CombinatorName::SigmaC)).str() == "N -> Nb -> Nb -> Nb -> Nb");
  CHECK(infer_type(build(CombinatorName::MinusOne)) == Type::nb());
  CHECK(infer_type(build(CombinatorName::Succ)).str() == "Nb -> Nb");
  CHECK(infer_type(build(CombinatorName::Infdil, {parse_term("m")})).str()
        == "N -> E -> E -> E -> E");
  CHECK_THROWS_AS(build(CombinatorName::MulE, {parse_term("1"), parse_term("1")}), Error);
  CHECK_THROWS_AS(build(CombinatorName::Bar0, {parse_term("1")}), Error);
}

TEST_CASE("alpha_equal is an equivalence and substitution-stable") {
  // spot-check with a few hand terms
  Term a = parse_term("\\e:E. \\x:E. circ c e x");
  Term b = parse_term("\\u:E. \\w:E. circ c u w");
  CHECK(alpha_equal(a, b));
  Term sub_a = substitute(a, "c", Type::n(), parse_term("dot d d"), Type::n());
  Term sub_b = substitute(b, "c", Type::n(), parse_term("dot d d"), Type::n());
  CHECK(alpha_equal(sub_a, sub_b));
}
