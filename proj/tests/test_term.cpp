#include "polyring/term.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "doctest.h"
#include "polyring/algebra.hpp"
#include "polyring/errors.hpp"
#include "polyring/rng.hpp"
#include "test_util.hpp"

using namespace polyring;
using testutil::sig_mf;
using testutil::term_family;
using testutil::zm_mf;

TEST_CASE("signature shorthand parsing") {
  Signature s = Signature::parse("m:2,f:1");
  CHECK(s.arity_of("m") == 2);
  CHECK(s.arity_of("f") == 1);
  CHECK(!s.arity_of("g").has_value());
  CHECK_THROWS_AS(Signature::parse("m"), ParseError);
  CHECK_THROWS_AS(Signature::parse("m:0"), ParseError);
  CHECK_THROWS_AS(Signature::parse(":2"), ParseError);
}

TEST_CASE("parser produces the unique AST") {
  Signature sig = sig_mf();
  TermPtr t = parse_term("(x1 + -x2)", sig);
  REQUIRE(t->kind() == TermKind::Sum);
  CHECK(t->args()[0]->kind() == TermKind::Var);
  CHECK(t->args()[0]->var_index() == 1);
  REQUIRE(t->args()[1]->kind() == TermKind::Neg);
  CHECK(t->args()[1]->args()[0]->var_index() == 2);

  TermPtr u = parse_term("m(x1, m(x1, x2))", sig);
  REQUIRE(u->kind() == TermKind::App);
  CHECK(u->name() == "m");
  CHECK(u->args()[0]->var_index() == 1);
  REQUIRE(u->args()[1]->kind() == TermKind::App);
  CHECK(u->args()[1]->args()[1]->var_index() == 2);

  CHECK_THROWS_AS(parse_term("m(x1)", sig), ParseError);
}

TEST_CASE("parser error cases") {
  Signature sig = sig_mf();
  CHECK_THROWS_AS(parse_term("g(x1)", sig), ParseError);      // unknown op
  CHECK_THROWS_AS(parse_term("m", sig), ParseError);          // op without args
  CHECK_THROWS_AS(parse_term("x0", sig), ParseError);         // 1-based indices
  CHECK_THROWS_AS(parse_term("x3", sig, 2), ParseError);      // beyond declared count
  CHECK_THROWS_AS(parse_term("x1 x2", sig), ParseError);      // trailing input
  CHECK_THROWS_AS(parse_term("(x1 + )", sig), ParseError);
  CHECK_THROWS_AS(parse_term("#", sig), ParseError);
  CHECK_THROWS_AS(parse_term("", sig), ParseError);
  // position is reported
  try {
    parse_term("m(x1, g(x2))", sig);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
}

TEST_CASE("printer round-trips through the parser") {
  Signature sig = sig_mf();
  for (const char* text : {"(x1 + -x2)", "m(x1,m(x1,x2))", "0", "#7", "c",
                           "-m(x1,(x2 + #3))", "f(-x1)"}) {
    TermPtr t = parse_term(text, sig);
    TermPtr again = parse_term(to_string(t), sig);
    CHECK(compare(*t, *again) == 0);
  }
}

TEST_CASE("normalize distributes one step") {
  Signature sig = sig_mf();
  Polynomial p = normalize(parse_term("m(x1, (x2 + x3))", sig));
  CHECK(to_string(p) == "m(x1,x2) + m(x1,x3)");
}

TEST_CASE("normalize drops the group identity") {
  Signature sig = sig_mf();
  Polynomial p = normalize(parse_term("(x1 + 0)", sig));
  REQUIRE(p.size() == 1);
  CHECK(p.monomials()[0].sign == 1);
  CHECK(to_string(p) == "x1");
}

TEST_CASE("normalize cancels opposite monomials to the zero polynomial") {
  Signature sig = sig_mf();
  TermPtr t = parse_term("f((x1 + -x1))", sig);
  Polynomial p = normalize(t);
  CHECK(p.is_zero());
  CHECK(to_string(p) == "0");
  // oracle: the term itself evaluates to 0 everywhere over Z_5 with f = doubling
  FinitePolyring k = zm_mf(5);
  for (int x = 0; x < 5; ++x) {
    CHECK(evaluate(t, k, {x}) == 0);
    CHECK(evaluate(to_term(p), k, {x}) == 0);
  }
}

TEST_CASE("degree counts occurrences, max over monomials") {
  Signature sig = sig_mf();
  CHECK(degree(parse_term("(m(x1,x2) + x1)", sig), {1, 2}).value == 2);
  CHECK(degree(parse_term("c", sig), {1, 2}).value == 0);
  CHECK(degree(parse_term("#5", sig), {1}).value == 0);
  CHECK(degree(parse_term("0", sig), {1}).value == 0);
  CHECK(degree(parse_term("(m(m(x1,x2),x1) + x2)", sig), {1}).value == 2);
  // w.r.t. all present variables
  CHECK(degree(parse_term("m(m(x1,x2),x1)", sig)).value == 3);
}

TEST_CASE("degree ignores duplicate designated indices") {
  Signature sig = sig_mf();
  CHECK(degree(parse_term("m(x1,x1)", sig), {1, 1}).value == 2);
}

TEST_CASE("substitute is simultaneous and capture-free") {
  Signature sig = sig_mf();
  std::map<int, TermPtr> b;
  b[1] = parse_term("(x2 + x3)", sig);
  TermPtr r = substitute(parse_term("x1", sig), b);
  CHECK(to_string(r) == "(x2 + x3)");

  std::map<int, TermPtr> c;
  c[1] = Term::sym_const("c");
  CHECK(to_string(substitute(parse_term("m(x1,x1)", sig), c)) == "m(c,c)");
  CHECK(to_string(substitute(Term::zero(), c)) == "0");

  // simultaneous: x1 -> x2, x2 -> x1 swaps rather than chains
  std::map<int, TermPtr> swap;
  swap[1] = Term::var(2);
  swap[2] = Term::var(1);
  CHECK(to_string(substitute(parse_term("m(x1,x2)", sig), swap)) == "m(x2,x1)");
}

TEST_CASE("monomial canonical order ranks vars before apps before constants") {
  Signature sig = sig_mf();
  Polynomial p = normalize(parse_term("(#2 + (m(x1,x2) + (c + x1)))", sig));
  CHECK(to_string(p) == "x1 + m(x1,x2) + #2 + c");
}

TEST_CASE("sum decomposition of a square") {
  Signature sig = sig_mf();
  TermPtr f = parse_term("m(x1,x1)", sig);
  Polynomial g = sum_decompose(f, 1);
  CHECK(to_string(g, 1) == "m(x1,y1) + m(y1,x1)");
  // verify pointwise over Z_6 with m = ring multiplication
  FinitePolyring k = zm_mf(6);
  TermPtr gt = to_term(g);
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) {
      int lhs = evaluate(f, k, {k.add(x, y)});
      int rhs = k.add(k.add(evaluate(f, k, {x}), evaluate(f, k, {y})),
                      evaluate(gt, k, {x, y}));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("sum decomposition of a group term is empty") {
  Signature sig = sig_mf();
  CHECK(sum_decompose(parse_term("x1", sig), 1).is_zero());
  CHECK(sum_decompose(parse_term("(x1 + -x2)", sig), 2).is_zero());
}

TEST_CASE("sum decomposition of a cube has six mixed monomials") {
  Signature sig = sig_mf();
  TermPtr f = parse_term("m(x1,m(x1,x1))", sig);
  Polynomial g = sum_decompose(f, 1);
  CHECK(g.size() == 6);
  CHECK(degree(g, {1}).value == 2);
  FinitePolyring k = zm_mf(7);
  TermPtr gt = to_term(g);
  for (int x = 0; x < 7; ++x)
    for (int y = 0; y < 7; ++y) {
      int lhs = evaluate(f, k, {k.add(x, y)});
      int rhs = k.add(k.add(evaluate(f, k, {x}), evaluate(f, k, {y})),
                      evaluate(gt, k, {x, y}));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("sum decomposition rejects degree-zero input") {
  Signature sig = sig_mf();
  CHECK_THROWS_AS(sum_decompose(parse_term("c", sig), 1), InvalidInput);
  CHECK_THROWS_AS(sum_decompose(parse_term("#3", sig), 1), InvalidInput);
}

TEST_CASE("normalization is sound on the exhaustive small family") {
  // every term of depth <= 2 in <= 2 variables, every carrier 2..6, every point
  std::vector<TermPtr> family = term_family(2, 2);
  for (int m = 2; m <= 6; ++m) {
    FinitePolyring k = zm_mf(m);
    for (const TermPtr& t : family) {
      TermPtr nt = to_term(normalize(t));
      for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
          if (evaluate(t, k, {x, y}) != evaluate(nt, k, {x, y})) {
            CAPTURE(to_string(t));
            CAPTURE(m);
            REQUIRE(evaluate(t, k, {x, y}) == evaluate(nt, k, {x, y}));
          }
        }
    }
  }
}

namespace {

TermPtr random_term(SplitMix64& rng, int depth, int var_count) {
  if (depth == 0 || rng.below(5) == 0) {
    switch (rng.below(3)) {
      case 0: return Term::var(1 + static_cast<int>(rng.below(var_count)));
      case 1: return Term::elem_const(static_cast<long long>(rng.below(3)));
      default: return Term::zero();
    }
  }
  switch (rng.below(4)) {
    case 0: return Term::neg(random_term(rng, depth - 1, var_count));
    case 1:
      return Term::sum(random_term(rng, depth - 1, var_count),
                       random_term(rng, depth - 1, var_count));
    case 2: return Term::app("f", {random_term(rng, depth - 1, var_count)});
    default:
      return Term::app("m", {random_term(rng, depth - 1, var_count),
                             random_term(rng, depth - 1, var_count)});
  }
}

}  // namespace

TEST_CASE("normalization is sound and idempotent on random deeper terms") {
  SplitMix64 rng(2026);
  FinitePolyring k = zm_mf(6);
  for (int trial = 0; trial < 300; ++trial) {
    TermPtr t = random_term(rng, 4, 2);
    Polynomial p = normalize(t);
    CHECK(normalize(to_term(p)) == p);
    TermPtr nt = to_term(p);
    for (int x = 0; x < 6; ++x)
      for (int y = 0; y < 6; ++y) CHECK(evaluate(t, k, {x, y}) == evaluate(nt, k, {x, y}));
  }
}

TEST_CASE("sum decomposition identity holds on random terms") {
  SplitMix64 rng(7);
  FinitePolyring k = zm_mf(6);
  int done = 0;
  for (int trial = 0; trial < 400 && done < 120; ++trial) {
    TermPtr f = random_term(rng, 3, 2);
    Polynomial fx = normalize(f);
    if (degree(fx, {1, 2}).value == 0) continue;
    Polynomial g = sum_decompose(f, 2);
    CHECK(degree(g, {1, 2}).value < degree(fx, {1, 2}).value);
    TermPtr gt = to_term(g);
    for (int x1 = 0; x1 < 6; ++x1)
      for (int x2 = 0; x2 < 6; ++x2)
        for (int y1 = 0; y1 < 6; ++y1)
          for (int y2 = 0; y2 < 6; ++y2) {
            int lhs = evaluate(f, k, {k.add(x1, y1), k.add(x2, y2)});
            int rhs = k.add(k.add(evaluate(f, k, {x1, x2}), evaluate(f, k, {y1, y2})),
                            evaluate(gt, k, {x1, x2, y1, y2}));
            if (lhs != rhs) {
              CAPTURE(to_string(f));
              REQUIRE(lhs == rhs);
            }
          }
    ++done;
  }
  CHECK(done >= 100);
}

TEST_CASE("degree is monotone under monomial deletion and blind to order") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    TermPtr t = random_term(rng, 3, 2);
    Polynomial p = normalize(t);
    const int full = degree(p, {1, 2}).value;
    std::vector<SignedMonomial> monos(p.monomials().begin(), p.monomials().end());
    // reordering: rebuild from reversed input
    std::vector<SignedMonomial> rev(monos.rbegin(), monos.rend());
    CHECK(degree(Polynomial::from_monomials(rev), {1, 2}).value == full);
    for (std::size_t drop = 0; drop < monos.size(); ++drop) {
      std::vector<SignedMonomial> rest;
      for (std::size_t i = 0; i < monos.size(); ++i)
        if (i != drop) rest.push_back(monos[i]);
      CHECK(degree(Polynomial::from_monomials(rest), {1, 2}).value <= full);
    }
  }
}

TEST_CASE("polynomial arithmetic cancels exactly") {
  Signature sig = sig_mf();
  Polynomial a = normalize(parse_term("(m(x1,x2) + x1)", sig));
  Polynomial b = normalize(parse_term("m(x1,x2)", sig));
  CHECK(to_string(a - b) == "x1");
  CHECK((a - a).is_zero());
  CHECK(a + Polynomial{} == a);
  // same-sign duplicates survive with multiplicity
  Polynomial twice = b + b;
  CHECK(twice.size() == 2);
  CHECK(to_string(twice) == "m(x1,x2) + m(x1,x2)");
  CHECK((twice - b) == b);
}

TEST_CASE("negative monomials print with a leading minus") {
  Signature sig = sig_mf();
  Polynomial p = normalize(parse_term("(x1 + -m(x2,x2))", sig));
  CHECK(to_string(p) == "x1 + - m(x2,x2)");
  Polynomial q = normalize(parse_term("-x1", sig));
  CHECK(to_string(q) == "- x1");
}
