#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "polyring/errors.hpp"
#include "polyring/ramsey.hpp"
#include "test_util.hpp"

using namespace polyring;
using namespace polyring::testutil;

namespace {

std::vector<BigInt> big(std::initializer_list<long long> xs) {
  std::vector<BigInt> out;
  for (long long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("finite sums of small sequences") {
  CHECK(fs_set(big({1, 3, 5})) == big({1, 3, 4, 5, 6, 8, 9}));
  CHECK(fs_set(big({7})) == big({7}));
  std::vector<BigInt> pow = fs_set(big({1, 2, 4, 8}));
  REQUIRE(pow.size() == 15);
  for (int i = 0; i < 15; ++i) CHECK(pow[std::size_t(i)] == i + 1);
  CHECK(fs_set(big({1, 3, 5}), BigInt(5)) == big({1, 3, 4, 5}));
  CHECK_THROWS_AS(fs_set({}), InvalidInput);
}

TEST_CASE("subset sums of distinct powers of two are all distinct") {
  for (int n : {3, 5, 8}) {
    std::vector<BigInt> seq;
    for (int i = 0; i < n; ++i) seq.push_back(BigInt(1) << i);
    CHECK(fs_set(seq).size() == (std::size_t(1) << n) - 1);
  }
}

TEST_CASE("finite products follow increasing index order") {
  CHECK(fp_set_integers(big({2, 3})) == big({2, 3, 6}));
  CHECK(fp_set_integers(big({2, 2, 2})) == big({2, 4, 8}));

  CHECK(fp_set_words({"a", "b"}) == std::vector<std::string>{"a", "ab", "b"});
  CHECK(fp_set_words({"b", "a"}) == std::vector<std::string>{"a", "b", "ba"});

  FiniteGroupoid z7 = zm_mul_groupoid(7);
  CHECK(fp_set({2, 2, 2}, z7) == std::vector<int>{1, 2, 4});

  FiniteGroupoid nul = null_groupoid(3);
  CHECK(fp_set({1, 2}, nul) == std::vector<int>{0, 1, 2});

  CHECK_THROWS_AS(fp_set({9}, z7), InvalidInput);
}

TEST_CASE("reversing a sequence changes finite products exactly when order matters") {
  // words are free: "ab" vs "ba" differ
  CHECK(fp_set_words({"a", "b"}) != fp_set_words({"b", "a"}));
  // integers commute: reversal never matters
  CHECK(fp_set_integers(big({3, 5, 2})) == fp_set_integers(big({2, 5, 3})));
}

TEST_CASE("colorings are validated and round-trip through csv") {
  Coloring c = Coloring::from_parts(5, {{1, 4}, {2, 3, 5}});
  CHECK(c.color_of(1) == 0);
  CHECK(c.color_of(5) == 1);
  CHECK_THROWS_AS(c.color_of(0), InvalidInput);
  CHECK_THROWS_AS(c.color_of(6), InvalidInput);

  Coloring back = Coloring::from_csv(c.to_csv());
  CHECK(back.n == c.n);
  CHECK(back.part == c.part);

  CHECK_THROWS_AS(Coloring::from_csv("1,0\n3,1\n"), InvalidInput);  // 2 missing
  CHECK_THROWS_AS(Coloring::from_csv("1,0\n1,1\n"), InvalidInput);  // colored twice
  CHECK_THROWS_AS(Coloring::from_csv("nope\n"), InvalidInput);
  CHECK_THROWS_AS(Coloring::from_csv(""), InvalidInput);
  CHECK_THROWS_AS(Coloring::from_parts(3, {{1, 2}}), InvalidInput);  // 3 uncolored

  Coloring p = Coloring::parity(6);
  CHECK(p.color_of(2) == 0);
  CHECK(p.color_of(3) == 1);
  Coloring m3 = Coloring::mod_k(7, 3);
  CHECK(m3.color_of(7) == 1);

  Coloring r1 = Coloring::random(20, 3, 42);
  Coloring r2 = Coloring::random(20, 3, 42);
  CHECK(r1.part == r2.part);
  CHECK(r1.part != Coloring::random(20, 3, 43).part);
}

TEST_CASE("monochromatic sum triples are found in documented positions") {
  Coloring two = Coloring::from_parts(5, {{1, 4}, {2, 3, 5}});
  auto w = schur_search(two);
  REQUIRE(w.has_value());
  CHECK(w->x == 2);
  CHECK(w->y == 3);
  CHECK(w->color == 1);

  CHECK_FALSE(schur_search(Coloring::from_parts(4, {{1, 4}, {2, 3}})).has_value());

  auto tiny = schur_search(Coloring::single(2));
  REQUIRE(tiny.has_value());
  CHECK(tiny->x == 1);
  CHECK(tiny->y == 1);

  CHECK_FALSE(schur_search(Coloring::single(2), true).has_value());
  auto d3 = schur_search(Coloring::single(3), true);
  REQUIRE(d3.has_value());
  CHECK(d3->x == 1);
  CHECK(d3->y == 2);
}

TEST_CASE("exhaustive oracle pins the one and two color sum-free maxima") {
  // one color: [1] is safe, [1..2] is not
  CHECK(schur_coloring_valid({-1, 0}));
  CHECK_FALSE(schur_coloring_valid({-1, 0, 0}));

  // two colors: the documented coloring of [1..4] works
  CHECK(schur_coloring_valid({-1, 0, 1, 1, 0}));
  // and all 2^5 colorings of [1..5] fail
  for (int bits = 0; bits < 32; ++bits) {
    std::vector<int> col{-1};
    for (int x = 0; x < 5; ++x) col.push_back((bits >> x) & 1);
    CHECK_FALSE(schur_coloring_valid(col));
  }
}

TEST_CASE("maximal sum-free interval lengths for up to three colors") {
  SchurNumberResult r1 = schur_number(1);
  CHECK(r1.n == 1);
  CHECK(r1.exact);

  SchurNumberResult r2 = schur_number(2);
  CHECK(r2.n == 4);
  CHECK(r2.exact);
  CHECK(schur_coloring_valid(r2.coloring));

  SchurNumberResult r3 = schur_number(3);
  CHECK(r3.n == 13);
  CHECK(r3.exact);
  CHECK(schur_coloring_valid(r3.coloring));
  CHECK(r3.coloring.size() == 14);

  SchurNumberResult starved = schur_number(3, 50);
  CHECK_FALSE(starved.exact);
  CHECK(starved.n < 13);

  CHECK_THROWS_AS(schur_number(0), InvalidInput);
}

TEST_CASE("monochromatic finite-sums tuples inside an interval") {
  // single color: some witness exists as soon as the window is long enough
  auto all = folkman_search(Coloring::single(7), 3);
  REQUIRE(all.has_value());
  CHECK(all->xs.size() == 3);
  for (int s : all->fs) CHECK(s <= 7);

  // length 2 is the sum-triple search again
  Coloring two = Coloring::from_parts(5, {{1, 4}, {2, 3, 5}});
  auto w = folkman_search(two, 2);
  REQUIRE(w.has_value());
  CHECK(w->xs == std::vector<int>{2, 3});
  CHECK(w->fs == std::vector<int>{2, 3, 5});
  CHECK(w->color == 1);

  // parity coloring of [1..10]: no three distinct elements work, but the
  // constant tuple (2,2,2) does once repeats are allowed
  Coloring po = Coloring::parity(10);
  CHECK_FALSE(folkman_search(po, 3).has_value());
  auto rep = folkman_search(po, 3, false);
  REQUIRE(rep.has_value());
  CHECK(rep->xs == std::vector<int>{2, 2, 2});
  CHECK(rep->fs == std::vector<int>{2, 4, 6});
  CHECK(rep->color == 0);

  CHECK_THROWS_AS(folkman_search(po, 0), InvalidInput);
}

TEST_CASE("folkman witnesses re-verify on random colorings") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Coloring c = Coloring::random(40, 2, seed);
    auto w = folkman_search(c, 2);
    if (!w) continue;
    for (int s : w->fs) CHECK(c.color_of(s) == w->color);
    CHECK(w->fs.front() >= 1);
    CHECK(w->fs.back() <= 40);
  }
}

TEST_CASE("translated cubes of sums land in one color class") {
  auto e = hilbert_cube_search(Coloring::parity(10), 1, 2);
  REQUIRE(e.has_value());
  CHECK(e->xs == std::vector<int>{1});
  CHECK(e->bs == std::vector<int>{1, 3});
  CHECK(e->color == 0);

  auto s = hilbert_cube_search(Coloring::single(4), 1, 2);
  REQUIRE(s.has_value());
  CHECK(s->xs == std::vector<int>{1});
  CHECK(s->bs == std::vector<int>{1, 2});

  CHECK_FALSE(hilbert_cube_search(Coloring::single(0), 1, 1).has_value());
  CHECK_FALSE(hilbert_cube_search(Coloring::single(3), 1, 3).has_value());
  CHECK_THROWS_AS(hilbert_cube_search(Coloring::single(3), 0, 1), InvalidInput);
}

TEST_CASE("hilbert witnesses re-verify by direct translation") {
  Coloring c = Coloring::mod_k(24, 3);
  auto w = hilbert_cube_search(c, 2, 2);
  REQUIRE(w.has_value());
  for (int b : w->bs) {
    for (std::size_t mask = 1; mask < 4; ++mask) {
      int acc = 0;
      for (int i = 0; i < 2; ++i)
        if (mask & (std::size_t(1) << i)) acc += w->xs[std::size_t(i)];
      CHECK(c.color_of(b + acc) == w->color);
    }
  }
}

TEST_CASE("joint sums-and-products witnesses") {
  auto s = simultaneous_fs_fp_search(Coloring::single(3), 2);
  REQUIRE(s.has_value());
  CHECK(s->xs == std::vector<int>{1, 2});
  CHECK(s->ys == std::vector<int>{1, 2});

  auto w = simultaneous_fs_fp_search(Coloring::parity(30), 2);
  REQUIRE(w.has_value());
  CHECK(w->xs == std::vector<int>{2, 4});
  CHECK(w->ys == std::vector<int>{2, 4});
  CHECK(w->color == 0);

  // 2, 4, 6, 8 in pairwise different colors starves both halves
  Coloring iso = Coloring::from_parts(9, {{1, 3, 5, 7, 9}, {2}, {4}, {6}, {8}});
  CHECK_FALSE(simultaneous_fs_fp_search(iso, 2).has_value());

  CHECK_THROWS_AS(simultaneous_fs_fp_search(iso, 0), InvalidInput);
}

TEST_CASE("grid colorings index row-major with validation") {
  GridColoring g = GridColoring::parity_sum({3, 4});
  CHECK(g.color_at({1, 1}) == 0);
  CHECK(g.color_at({1, 2}) == 1);
  CHECK(g.color_at({3, 4}) == 1);
  CHECK_THROWS_AS(g.color_at({0, 1}), InvalidInput);
  CHECK_THROWS_AS(g.color_at({1, 5}), InvalidInput);
  CHECK_THROWS_AS(g.color_at({1}), InvalidInput);

  GridColoring r1 = GridColoring::random({4, 4}, 3, 9);
  GridColoring r2 = GridColoring::random({4, 4}, 3, 9);
  CHECK(r1.part == r2.part);
}

TEST_CASE("product grids of finite sums in one color class") {
  auto s = product_fs_search(GridColoring::single({3, 3}), 1, 1);
  REQUIRE(s.has_value());
  CHECK(s->seqs == std::vector<std::vector<int>>{{1}, {1}});

  // parity of the sum: the lexicographically first witness is ((1),(1)),
  // and the documented pick ((2),(2)) is also a valid witness
  GridColoring par = GridColoring::parity_sum({4, 4});
  auto w = product_fs_search(par, 1, 1);
  REQUIRE(w.has_value());
  CHECK(w->seqs == std::vector<std::vector<int>>{{1}, {1}});
  CHECK(w->color == 0);
  CHECK(verify_product_fs(par, 1, 1, ProductFsWitness{{{2}, {2}}, 0}));
  CHECK_FALSE(verify_product_fs(par, 1, 1, ProductFsWitness{{{1}, {2}}, 0}));

  // longer sequences force both axes into the even residues
  GridColoring board = GridColoring::parity_sum({8, 8});
  auto b = product_fs_search(board, 2, 2);
  REQUIRE(b.has_value());
  CHECK(b->seqs == std::vector<std::vector<int>>{{2, 4}, {2, 4}});
  CHECK(b->color == 0);
  CHECK(verify_product_fs(board, 2, 2, *b));

  CHECK_FALSE(product_fs_search(GridColoring::parity_sum({5, 5}), 2, 2).has_value());

  GridColoring line = GridColoring::parity_sum({7});
  auto l = product_fs_search(line, 3, 2);
  REQUIRE(l.has_value());
  CHECK(l->seqs == std::vector<std::vector<int>>{{2, 4}});

  CHECK_THROWS_AS(product_fs_search(par, 0, 1), InvalidInput);
}

TEST_CASE("vanishing on a finite-sums tuple forces vanishing at zero, doubling map") {
  FinitePolyring z4 = zm_group(4);
  TermPtr two_x = parse_term("(x1 + x1)", Signature{});
  KeyLemmaReport r = verify_key_lemma(z4, two_x, 1, KeyLemmaMode::Exhaustive);
  CHECK(r.degree == 1);
  CHECK(r.examined == 16);
  CHECK(r.vacuous == 12);
  CHECK(r.confirming == 4);  // pairs from {0,2}
  CHECK_FALSE(r.counterexample.has_value());
}

TEST_CASE("an affine map with no roots on sums is all vacuous") {
  FinitePolyring z4 = zm_group(4);
  TermPtr f = parse_term("((x1 + x1) + #2)", Signature{});
  KeyLemmaReport r = verify_key_lemma(z4, f, 1, KeyLemmaMode::Exhaustive);
  CHECK(r.degree == 1);
  CHECK(r.examined == 16);
  CHECK(r.vacuous == 16);
  CHECK(r.confirming == 0);
  CHECK_FALSE(r.counterexample.has_value());
}

TEST_CASE("degree zero terms use singleton tuples") {
  FinitePolyring z4 = zm_group(4);
  KeyLemmaReport c1 = verify_key_lemma(z4, parse_term("#1", Signature{}), 1,
                                       KeyLemmaMode::Exhaustive);
  CHECK(c1.degree == 0);
  CHECK(c1.examined == 4);
  CHECK(c1.vacuous == 4);

  KeyLemmaReport c0 = verify_key_lemma(z4, parse_term("#0", Signature{}), 1,
                                       KeyLemmaMode::Exhaustive);
  CHECK(c0.examined == 4);
  CHECK(c0.confirming == 4);
}

TEST_CASE("random tuple sampling is deterministic and finds no counterexamples") {
  FinitePolyring k = zm_mf(6);
  TermPtr f = parse_term("m(x1,x2)", sig_mf());
  KeyLemmaReport a = verify_key_lemma(k, f, 2, KeyLemmaMode::Random, 2000, 17);
  KeyLemmaReport b = verify_key_lemma(k, f, 2, KeyLemmaMode::Random, 2000, 17);
  CHECK(a.degree == 2);
  CHECK(a.examined == 2000);
  CHECK(a.vacuous == b.vacuous);
  CHECK(a.confirming == b.confirming);
  CHECK(a.vacuous + a.confirming == 2000);
  CHECK_FALSE(a.counterexample.has_value());
  CHECK(a.confirming > 0);  // (0,0) tuples do occur in 2000 draws

  CHECK_THROWS_AS(verify_key_lemma(k, f, 2, KeyLemmaMode::Random, 0, 1), InvalidInput);
  CHECK_THROWS_AS(verify_key_lemma(k, f, 1, KeyLemmaMode::Exhaustive), InvalidInput);
  CHECK_THROWS_AS(verify_key_lemma(k, f, 0, KeyLemmaMode::Exhaustive), InvalidInput);
}

TEST_CASE("exhaustive lemma sweeps on two-variable terms") {
  FinitePolyring k = zm_mf(4);
  TermPtr f = parse_term("(m(x1,x2) + f(x1))", sig_mf());
  KeyLemmaReport r = verify_key_lemma(k, f, 2, KeyLemmaMode::Exhaustive);
  CHECK(r.degree == 2);
  CHECK(r.examined == 4096);  // (4^2)^3 tuples
  CHECK(r.vacuous + r.confirming == 4096);
  CHECK_FALSE(r.counterexample.has_value());
}
