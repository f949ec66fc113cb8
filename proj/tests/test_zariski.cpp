#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "polyring/errors.hpp"
#include "polyring/rng.hpp"
#include "polyring/zariski.hpp"
#include "test_util.hpp"

using namespace polyring;
using namespace polyring::testutil;

namespace {

PointSet bits(std::size_t universe, std::initializer_list<std::size_t> on) {
  PointSet s(universe);
  for (std::size_t i : on) s.set(i);
  return s;
}

BigVec vec1(long long v) { return BigVec{BigInt(v)}; }

FiniteSpace sierpinski() {
  // closed sets {}, {1}, {0,1}
  return FiniteSpace::from_closed_family(
      2, {PointSet(2), bits(2, {1}), PointSet(2, true)});
}

}  // namespace

TEST_CASE("term clones of small instances have the documented sizes") {
  FinitePolyring z2 = zm_group(2);
  Clone c2 = term_clone(z2, 1, 1000);
  CHECK(c2.functions.size() == 4);
  CHECK(c2.complete);

  FinitePolyring z3 = zm_group(3);
  Clone c3 = term_clone(z3, 1, 1000);
  CHECK(c3.functions.size() == 9);  // a*x + c for a, c mod 3

  FinitePolyring f2 = zm_ring(2);
  Clone r2 = term_clone(f2, 1, 1000);
  CHECK(r2.functions.size() == 4);  // every unary map on two points
}

TEST_CASE("clone generators carry their defining terms") {
  FinitePolyring z2 = zm_group(2);
  Clone c = term_clone(z2, 1, 1000);
  bool saw_projection = false;
  for (const TermFunction& f : c.functions)
    if (f.table == std::vector<int>{0, 1}) {
      REQUIRE(f.provenance != nullptr);
      CHECK(to_string(f.provenance) == "x1");
      saw_projection = true;
    }
  CHECK(saw_projection);
}

TEST_CASE("clone cap stops the fixpoint and clears the completeness flag") {
  Clone c = term_clone(zm_ring(3), 1, 5);
  CHECK(c.functions.size() == 5);
  CHECK_FALSE(c.complete);
}

TEST_CASE("tabulation is row-major with x1 most significant") {
  FinitePolyring f2 = zm_ring(2);
  TermPtr t = Term::app("m", {Term::var(1), Term::var(2)});
  TermFunction f = tabulate(t, f2, 2);
  CHECK(f.table == std::vector<int>{0, 0, 0, 1});
  CHECK(root_set(f, 4) == bits(4, {0, 1, 2}));
}

TEST_CASE("cylinders over the cube of F_2 are root sets") {
  std::vector<FinitePolyring> fs{zm_ring(2), zm_ring(2), zm_ring(2)};
  std::vector<const FinitePolyring*> ptrs{&fs[0], &fs[1], &fs[2]};
  FinitePolyring cube = direct_product(ptrs);
  // a = (1,0,0) is element 4; a*b kills every coordinate where a is 0
  TermPtr t = Term::app("m", {Term::elem_const(4), Term::var(1)});
  TermFunction f = tabulate(t, cube, 1);
  CHECK(root_set(f, 8) == bits(8, {0, 1, 2, 3}));
}

TEST_CASE("the two point group generates the full powerset base") {
  Clone c = term_clone(zm_group(2), 1, 1000);
  FiniteSpace space = FiniteSpace::from_clone(c, zm_group(2));
  BaseReport base = closed_base(space, 0, 1000);
  CHECK(base.sets.size() == 4);
  CHECK(base.saturated);
  CHECK_FALSE(base.capped);
  CHECK(std::count(base.sets.begin(), base.sets.end(), PointSet(2)) == 1);
  CHECK(std::count(base.sets.begin(), base.sets.end(), PointSet(2, true)) == 1);
}

TEST_CASE("a family with only the everywhere-zero function gives the one-set base") {
  FiniteSpace space = FiniteSpace::from_root_sets(3, {PointSet(3, true)});
  BaseReport base = closed_base(space, 0, 100);
  CHECK(base.sets.size() == 1);
  CHECK(base.sets[0] == PointSet(3, true));
  CHECK(base.saturated);
}

TEST_CASE("the square of the two element ring has all sixteen subsets algebraic") {
  std::vector<FinitePolyring> fs{zm_ring(2), zm_ring(2)};
  std::vector<const FinitePolyring*> ptrs{&fs[0], &fs[1]};
  FinitePolyring k4 = direct_product(ptrs);
  Clone c = term_clone(k4, 1, 100000);
  FiniteSpace space = FiniteSpace::from_clone(c, k4);
  BaseReport base = closed_base(space, 0, 100000);
  CHECK(base.sets.size() == 16);
  CHECK(base.saturated);
}

TEST_CASE("the parabola sample is dense for the plain root-set family over Z_7") {
  FinitePolyring z7 = zm_group(7);
  Clone c = term_clone(z7, 2, 100000);
  CHECK(c.complete);
  CHECK(c.functions.size() == 343);  // k*x + l*y + c
  FiniteSpace space = FiniteSpace::from_clone(c, z7);
  REQUIRE(space.size() == 49);

  CHECK(space.closure(PointSet(49)).empty());

  // (0,0), (1,1), (2,4) at indices 7x + y; no nonzero k*x + l*y + c kills all
  // three (the linear system has full rank mod 7), so the only root set
  // containing them is the whole plane
  PointSet pts = bits(49, {0, 8, 18});
  CHECK(closure_in_family(49, space.roots(), pts) == PointSet(49, true));

  // with unions allowed the affine functions separate points and the sample
  // is already closed
  CHECK(space.closure(pts) == pts);
}

TEST_CASE("family closure with the saturated base matches the topological closure") {
  FiniteSpace space = sierpinski();
  BaseReport base = closed_base(space, 0, 1000);
  REQUIRE(base.saturated);
  SplitMix64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    PointSet s(space.size());
    for (std::size_t p = 0; p < space.size(); ++p)
      if (rng.below(2)) s.set(p);
    CHECK(closure_in_family(space.size(), base.sets, s) == space.closure(s));
  }
}

TEST_CASE("spaces from complete clones of rings with unit behave discretely") {
  Clone c = term_clone(zm_ring(2), 1, 1000);
  FiniteSpace space = FiniteSpace::from_clone(c, zm_ring(2));
  SpaceAnalysis a = analyze(space);
  CHECK(a.discrete);
  CHECK(a.isolated == std::vector<int>{0, 1});
  CHECK(a.psi == std::vector<long long>{1, 1});
  CHECK(a.psi_space == 1);
  CHECK(a.ind == 0);
  REQUIRE(a.components.size() == 2);
  CHECK(a.components[0] == std::vector<int>{0});
  CHECK(a.components[1] == std::vector<int>{1});
}

TEST_CASE("the indiscrete two point space is connected with no isolated points") {
  FiniteSpace space =
      FiniteSpace::from_closed_family(2, {PointSet(2), PointSet(2, true)});
  SpaceAnalysis a = analyze(space);
  CHECK_FALSE(a.discrete);
  CHECK(a.isolated.empty());
  CHECK(a.psi == std::vector<long long>{-1, -1});
  CHECK(a.psi_space == -1);
  REQUIRE(a.components.size() == 1);
  CHECK(a.components[0] == std::vector<int>{0, 1});
  CHECK(a.ind == 0);  // the only neighbourhood is the whole space, with empty boundary
}

TEST_CASE("the connected two point space with one closed point has dimension one") {
  FiniteSpace space = sierpinski();
  CHECK(space.point_closure(0) == PointSet(2, true));
  CHECK(space.point_closure(1) == bits(2, {1}));
  CHECK(space.min_open(0) == bits(2, {0}));
  CHECK(space.min_open(1) == PointSet(2, true));

  SpaceAnalysis a = analyze(space);
  CHECK_FALSE(a.discrete);
  CHECK(a.isolated == std::vector<int>{0});
  CHECK(a.psi == std::vector<long long>{1, -1});
  CHECK(a.psi_space == -1);
  REQUIRE(a.components.size() == 1);
  CHECK(a.components[0] == std::vector<int>{0, 1});
  CHECK(a.ind == 1);
}

TEST_CASE("inductive dimension of the empty and discrete spaces") {
  CHECK(ind_dimension(FiniteSpace::from_closed_family(0, {})) == -1);
  Clone c = term_clone(zm_ring(2), 1, 1000);
  CHECK(ind_dimension(FiniteSpace::from_clone(c, zm_ring(2))) == 0);
}

TEST_CASE("an isolated point of a discrete space is not nowhere dense") {
  Clone c = term_clone(zm_ring(2), 1, 1000);
  FiniteSpace space = FiniteSpace::from_clone(c, zm_ring(2));
  SubsetAnalysis s = analyze_subset(space, bits(2, {0}));
  CHECK(s.is_closed);
  CHECK(s.closure == bits(2, {0}));
  CHECK(s.interior == bits(2, {0}));
  CHECK_FALSE(s.nowhere_dense);
}

TEST_CASE("the closed point of the two point connected space is nowhere dense") {
  FiniteSpace space = sierpinski();
  SubsetAnalysis closed_pt = analyze_subset(space, bits(2, {1}));
  CHECK(closed_pt.is_closed);
  CHECK(closed_pt.interior.empty());
  CHECK(closed_pt.nowhere_dense);

  SubsetAnalysis open_pt = analyze_subset(space, bits(2, {0}));
  CHECK_FALSE(open_pt.is_closed);
  CHECK(open_pt.closure == PointSet(2, true));
  CHECK(open_pt.interior == bits(2, {0}));
  CHECK_FALSE(open_pt.nowhere_dense);  // its closure is everything
}

TEST_CASE("closure is a closure operator on random subsets") {
  std::vector<FiniteSpace> spaces;
  spaces.push_back(sierpinski());
  {
    Clone c = term_clone(zm_mf(6), 1, 5000);
    spaces.push_back(FiniteSpace::from_clone(c, zm_mf(6)));
  }
  {
    Clone c = term_clone(zm_group(3), 2, 5000);
    spaces.push_back(FiniteSpace::from_clone(c, zm_group(3)));
  }

  SplitMix64 rng(99);
  for (const FiniteSpace& space : spaces) {
    for (int trial = 0; trial < 40; ++trial) {
      PointSet a(space.size()), b(space.size());
      for (std::size_t p = 0; p < space.size(); ++p) {
        if (rng.below(2)) a.set(p);
        if (rng.below(2)) b.set(p);
      }
      PointSet ca = space.closure(a);
      CHECK(a.is_subset_of(ca));
      CHECK(space.closure(ca) == ca);
      CHECK(space.closure(a | b) == (ca | space.closure(b)));
      // duality: dropping the interior of a set is closing its complement
      CHECK(space.interior(a).complement() == space.closure(a.complement()));
    }
    CHECK(space.closure(PointSet(space.size())).empty());
  }
}

TEST_CASE("minimal open sets are open and minimal among base opens") {
  std::vector<FiniteSpace> spaces;
  spaces.push_back(sierpinski());
  {
    Clone c = term_clone(zm_group(2), 1, 1000);
    spaces.push_back(FiniteSpace::from_clone(c, zm_group(2)));
  }
  for (const FiniteSpace& space : spaces) {
    BaseReport base = closed_base(space, 0, 100000);
    for (std::size_t x = 0; x < space.size(); ++x) {
      PointSet u = space.min_open(int(x));
      CHECK(u.test(x));
      CHECK(space.interior(u) == u);
      for (const PointSet& closed : base.sets) {
        PointSet open = closed.complement();
        if (open.test(x)) CHECK(u.is_subset_of(open));
      }
    }
  }
}

TEST_CASE("the componentwise F_2 product check holds through eight components") {
  CantorReport r1 = verify_cantor_example(1);
  CHECK(r1.carrier == 2);
  CHECK(r1.characterizations_hold);
  CHECK(r1.complement_on_weight_one);
  CHECK(r1.complement_exactly_weight_one);
  CHECK(r1.complement_valid_as == std::vector<int>{1});
  CHECK(r1.cylinders_algebraic);
  CHECK(r1.singletons_algebraic);
  CHECK(r1.algebraic_count == "4");
  CHECK(r1.base_crosschecked);

  CantorReport r2 = verify_cantor_example(2);
  CHECK(r2.algebraic_count == "16");
  CHECK(r2.complement_valid_as == std::vector<int>{1, 2});
  CHECK(r2.base_crosschecked);

  CantorReport r3 = verify_cantor_example(3);
  CHECK(r3.characterizations_hold);
  CHECK(r3.complement_exactly_weight_one);
  CHECK(r3.algebraic_count == "256");
  CHECK_FALSE(r3.base_crosschecked);  // materialization stays at two components

  CHECK_THROWS_AS(verify_cantor_example(0), InvalidInput);
}

TEST_CASE("a last-axis projection certifies against the empty avoid set") {
  SymbolicPolyring K = z_group_symbolic(1);
  std::vector<TermPtr> terms{parse_term("x2", K.signature(), 2)};
  CertificateSearch s =
      nowhere_dense_certificate(K, terms, AvoidSet{}, 1, 1, 1, 0, 0);
  REQUIRE(s.certificate.has_value());
  CHECK(s.candidates == 1);
  CHECK_FALSE(s.cover_too_tight);
  const Certificate& c = *s.certificate;
  CHECK(c.witness_term == 0);
  CHECK(c.sequences.size() == 2);
  CHECK(c.sequences[0] == std::vector<BigVec>{vec1(0), vec1(1)});
  CHECK(c.sequences[1] == std::vector<BigVec>{vec1(0)});
  std::string why;
  CHECK(verify_certificate(c, &why));
}

TEST_CASE("certificates route around explicit forbidden points") {
  SymbolicPolyring K = z_group_symbolic(1);
  std::vector<TermPtr> terms{parse_term("x2", K.signature(), 2)};
  AvoidSet avoid;
  avoid.kind = AvoidSet::Kind::Points;
  avoid.points = {{vec1(0), vec1(0)}};
  CertificateSearch s = nowhere_dense_certificate(K, terms, avoid, 1, 1, 1, 0, 0);
  REQUIRE(s.certificate.has_value());
  const Certificate& c = *s.certificate;
  // the leading finite-sums set must miss 0 now
  for (const BigVec& v : c.sequences[0]) CHECK(v != vec1(0));
  std::string why;
  CHECK(verify_certificate(c, &why));
}

TEST_CASE("a root set equal to the avoid set is reported as a tight cover") {
  SymbolicPolyring K = z_ring_symbolic(1);
  TermPtr parab = parse_term("m(x1,x1)", K.signature(), 1);
  std::vector<TermPtr> terms{parse_term("(m(x1,x1) + - x2)", K.signature(), 2)};
  AvoidSet avoid;
  avoid.kind = AvoidSet::Kind::Graph;
  avoid.graph_term = parab;
  CertificateSearch s = nowhere_dense_certificate(K, terms, avoid, 1, 1, 1, 200, 7);
  CHECK_FALSE(s.certificate.has_value());
  CHECK(s.budget_exhausted);
  CHECK(s.candidates == 200);
  CHECK(s.cover_too_tight);
}

TEST_CASE("vanishing on a full grid but not at zero is flagged as a broken invariant") {
  SymbolicPolyring K = z_group_symbolic(1);
  std::vector<TermPtr> terms{parse_term("(x2 + - #1)", K.signature(), 2)};
  CHECK_THROWS_AS(
      nowhere_dense_certificate(K, terms, AvoidSet{}, 1, 1, 1, 0, 0),
      InvariantViolation);
}

TEST_CASE("searches are deterministic for a fixed seed") {
  SymbolicPolyring K = z_ring_symbolic(1);
  std::vector<TermPtr> terms{parse_term("(m(x1,x1) + - x2)", K.signature(), 2)};
  AvoidSet avoid;
  avoid.kind = AvoidSet::Kind::Graph;
  avoid.graph_term = parse_term("m(x1,x1)", K.signature(), 1);
  CertificateSearch a = nowhere_dense_certificate(K, terms, avoid, 1, 1, 1, 60, 3);
  CertificateSearch b = nowhere_dense_certificate(K, terms, avoid, 1, 1, 1, 60, 3);
  CHECK(a.candidates == b.candidates);
  CHECK(a.certificate.has_value() == b.certificate.has_value());
  CHECK(a.cover_too_tight == b.cover_too_tight);
}

TEST_CASE("search input contracts are enforced") {
  SymbolicPolyring K = z_group_symbolic(1);
  std::vector<TermPtr> terms{parse_term("x2", K.signature(), 2)};
  CHECK_THROWS_AS(nowhere_dense_certificate(K, {}, AvoidSet{}, 1, 1, 1, 0, 0),
                  InvalidInput);
  CHECK_THROWS_AS(nowhere_dense_certificate(K, terms, AvoidSet{}, 0, 1, 1, 0, 0),
                  InvalidInput);
  CHECK_THROWS_AS(nowhere_dense_certificate(K, terms, AvoidSet{}, 1, 0, 1, 0, 0),
                  InvalidInput);
  CHECK_THROWS_AS(nowhere_dense_certificate(K, terms, AvoidSet{}, 1, 1, 0, 0, 0),
                  InvalidInput);
  std::vector<TermPtr> deep{parse_term("x3", K.signature(), 3)};
  CHECK_THROWS_AS(nowhere_dense_certificate(K, deep, AvoidSet{}, 1, 1, 1, 0, 0),
                  InvalidInput);
}

TEST_CASE("certificate verification rejects tampering") {
  SymbolicPolyring K = z_group_symbolic(1);
  std::vector<TermPtr> terms{parse_term("x2", K.signature(), 2)};
  CertificateSearch s =
      nowhere_dense_certificate(K, terms, AvoidSet{}, 1, 1, 1, 0, 0);
  REQUIRE(s.certificate.has_value());

  Certificate tampered = *s.certificate;
  tampered.sequences[1][0] = vec1(7);  // grid no longer sits inside the root set
  std::string why;
  CHECK_FALSE(verify_certificate(tampered, &why));
  CHECK(why == "the witness term does not vanish on the grid");

  Certificate dup = *s.certificate;
  dup.sequences[0][1] = dup.sequences[0][0];
  CHECK_THROWS_AS(verify_certificate(dup, &why), InvalidInput);

  Certificate bad_witness = *s.certificate;
  bad_witness.witness_term = 5;
  CHECK_THROWS_AS(verify_certificate(bad_witness, &why), InvalidInput);

  Certificate short_seq = *s.certificate;
  short_seq.sequences.pop_back();
  CHECK_THROWS_AS(verify_certificate(short_seq, &why), InvalidInput);
}

TEST_CASE("verification rejects grids that touch the avoid set") {
  SymbolicPolyring K = z_group_symbolic(1);
  std::vector<TermPtr> terms{parse_term("x2", K.signature(), 2)};
  CertificateSearch s =
      nowhere_dense_certificate(K, terms, AvoidSet{}, 1, 1, 1, 0, 0);
  REQUIRE(s.certificate.has_value());
  Certificate c = *s.certificate;
  c.avoid.kind = AvoidSet::Kind::Points;
  c.avoid.points = {{vec1(1), vec1(0)}};  // a real grid point
  std::string why;
  CHECK_FALSE(verify_certificate(c, &why));
  CHECK(why == "a grid point lies inside the avoid set");
}

TEST_CASE("window validation names the first uncovered point") {
  SymbolicPolyring K = z_ring_symbolic(1);
  std::vector<TermPtr> terms{parse_term("(m(x1,x1) + - x2)", K.signature(), 2)};
  bool threw = false;
  try {
    validate_cover_window(K, terms, AvoidSet{}, 1, 2);
  } catch (const InvalidInput& e) {
    threw = true;
    CHECK(std::string(e.what()).find("window point") != std::string::npos);
  }
  CHECK(threw);

  // x2 = 0 alone covers the zero-radius window
  SymbolicPolyring G = z_group_symbolic(1);
  std::vector<TermPtr> proj{parse_term("x2", G.signature(), 2)};
  CHECK_NOTHROW(validate_cover_window(G, proj, AvoidSet{}, 1, 0));
}

TEST_CASE("the three parabola points force the trivial line only") {
  ParabolaReport r = parabola_density_check(5, 6);
  CHECK(r.determinant == "2");
  CHECK(r.only_trivial);
  CHECK(r.trivial_in_box);
  CHECK(r.window_closure_full);
  // the same determinant is invertible mod 7
  CHECK(2 % 7 != 0);

  CHECK_THROWS_AS(parabola_density_check(0, 6), InvalidInput);
  CHECK_THROWS_AS(parabola_density_check(5, 3), InvalidInput);
}
