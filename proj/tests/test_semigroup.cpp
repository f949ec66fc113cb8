#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "polyring/errors.hpp"
#include "polyring/semigroup.hpp"
#include "test_util.hpp"

using namespace polyring;

namespace {

FiniteGroupoid zm_add_groupoid(int m) {
  FiniteGroupoid g;
  g.size = m;
  g.mul.resize(std::size_t(m) * std::size_t(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) g.mul[std::size_t(a) * m + b] = (a + b) % m;
  return g;
}

// 0*0=1 breaks associativity at (0,0,1)
const FiniteGroupoid kSkew{2, {1, 0, 0, 0}};
// x*x != x everywhere
const FiniteGroupoid kFixedPointFree{2, {1, 1, 0, 0}};

}  // namespace

TEST_CASE("associativity scan reports the first bad triple") {
  CHECK(is_associative(zm_mul_groupoid(6)));
  CHECK(is_associative(left_zero_groupoid(3)));
  CHECK(is_associative(null_groupoid(4)));

  auto w = associativity_failure(kSkew);
  REQUIRE(w.has_value());
  CHECK(w->a == 0);
  CHECK(w->b == 0);
  CHECK(w->c == 1);

  CHECK_THROWS_AS(is_associative(FiniteGroupoid{2, {0, 1}}), InvalidInput);
  CHECK_THROWS_AS(is_associative(FiniteGroupoid{0, {}}), InvalidInput);
  CHECK_THROWS_AS(is_associative(FiniteGroupoid{1, {3}}), InvalidInput);
}

TEST_CASE("repeated multiplication settles on an idempotent") {
  CHECK(idempotent_power(zm_mul_groupoid(6), 2) == 4);
  CHECK(idempotent_power(zm_mul_groupoid(4), 2) == 0);
  CHECK(idempotent_power(zm_mul_groupoid(6), 1) == 1);
  CHECK(idempotent_power(zm_mul_groupoid(6), 5) == 1);  // 5^2 = 25 = 1

  // in a group the only idempotent is the identity
  FiniteGroupoid z5 = zm_add_groupoid(5);
  for (int x = 0; x < 5; ++x) CHECK(idempotent_power(z5, x) == 0);

  CHECK_THROWS_AS(idempotent_power(kSkew, 0), InvalidInput);
  CHECK_THROWS_AS(idempotent_power(zm_mul_groupoid(4), 4), InvalidInput);
}

TEST_CASE("idempotent listing certifies non-associativity when empty") {
  IdempotentsReport r6 = find_idempotents(zm_mul_groupoid(6));
  CHECK(r6.elements == std::vector<int>{0, 1, 3, 4});
  CHECK_FALSE(r6.forced_non_associative);

  CHECK(find_idempotents(left_zero_groupoid(2)).elements == std::vector<int>{0, 1});

  IdempotentsReport none = find_idempotents(kFixedPointFree);
  CHECK(none.elements.empty());
  CHECK(none.forced_non_associative);
  CHECK_FALSE(is_associative(kFixedPointFree));
}

TEST_CASE("left solution counts flag cancellativity") {
  CancellativityReport grp = weak_left_cancellativity(zm_add_groupoid(5));
  CHECK(grp.max_solutions == 1);
  CHECK(grp.left_cancellative);

  CancellativityReport z6 = weak_left_cancellativity(zm_mul_groupoid(6));
  CHECK(z6.max_solutions == 6);  // 0*x = 0 always
  CHECK_FALSE(z6.left_cancellative);

  CancellativityReport one = weak_left_cancellativity(null_groupoid(1));
  CHECK(one.max_solutions == 1);
  CHECK(one.left_cancellative);
}

TEST_CASE("ideal structure of the stock instances") {
  SemigroupReport grp = ideal_structure(zm_add_groupoid(5));
  CHECK(grp.associative);
  CHECK(grp.idempotents == std::vector<int>{0});
  CHECK(grp.minimal_left_ideals ==
        std::vector<std::vector<int>>{{0, 1, 2, 3, 4}});
  CHECK(grp.smallest_two_sided_ideal == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(grp.max_left_solutions == 1);

  SemigroupReport z6 = ideal_structure(zm_mul_groupoid(6));
  CHECK(z6.minimal_left_ideals == std::vector<std::vector<int>>{{0}});
  CHECK(z6.smallest_two_sided_ideal == std::vector<int>{0});

  // left-zero: S*x = S, so the only left ideal is everything
  SemigroupReport lz = ideal_structure(left_zero_groupoid(2));
  CHECK(lz.minimal_left_ideals == std::vector<std::vector<int>>{{0, 1}});
  CHECK(lz.smallest_two_sided_ideal == std::vector<int>{0, 1});

  // right-zero: s*x = x, so every singleton is a minimal left ideal
  SemigroupReport rz = ideal_structure(right_zero_groupoid(2));
  CHECK(rz.minimal_left_ideals == std::vector<std::vector<int>>{{0}, {1}});
  CHECK(rz.smallest_two_sided_ideal == std::vector<int>{0, 1});

  CHECK(principal_left_ideal(zm_mul_groupoid(6), 3) == std::vector<int>{0, 3});
  CHECK_THROWS_AS(ideal_structure(kSkew), InvalidInput);
}

TEST_CASE("exhaustive table corpus has the known sizes") {
  CHECK(all_semigroups(1).size() == 1);
  CHECK(all_semigroups(2).size() == 8);
  CHECK(all_semigroups(3).size() == 113);
  CHECK(all_semigroups(4).size() == 3492);

  CHECK(semigroups_up_to_iso(1).size() == 1);
  CHECK(semigroups_up_to_iso(2).size() == 5);
  CHECK(semigroups_up_to_iso(3).size() == 24);
  CHECK(semigroups_up_to_iso(4).size() == 188);

  CHECK_THROWS_AS(all_semigroups(0), InvalidInput);
  CHECK_THROWS_AS(all_semigroups(5), InvalidInput);
}

TEST_CASE("every corpus table is associative with an idempotent, and powers land there") {
  for (int n = 1; n <= 4; ++n) {
    for (const FiniteGroupoid& g : all_semigroups(n)) {
      CHECK(is_associative(g));
      IdempotentsReport idem = find_idempotents(g);
      REQUIRE_FALSE(idem.elements.empty());
      for (int x = 0; x < n; ++x) {
        int e = idempotent_power(g, x);
        CHECK(std::binary_search(idem.elements.begin(), idem.elements.end(), e));
        CHECK(idempotent_power(g, e) == e);
      }
    }
  }
}

TEST_CASE("the union of minimal left ideals is the smallest two-sided ideal") {
  for (int n = 1; n <= 3; ++n) {
    for (const FiniteGroupoid& g : all_semigroups(n)) {
      SemigroupReport rep = ideal_structure(g);
      const auto& k = rep.smallest_two_sided_ideal;
      std::set<int> kern(k.begin(), k.end());
      REQUIRE_FALSE(kern.empty());

      for (int x : k)
        for (int s = 0; s < n; ++s) {
          CHECK(kern.count(g.at(s, x)) == 1);
          CHECK(kern.count(g.at(x, s)) == 1);
        }

      // contained in every principal two-sided ideal
      for (int x = 0; x < n; ++x) {
        std::set<int> tx{x};
        for (int s = 0; s < n; ++s) {
          tx.insert(g.at(s, x));
          tx.insert(g.at(x, s));
          for (int t = 0; t < n; ++t) tx.insert(g.at(s, g.at(x, t)));
        }
        for (int e : kern) CHECK(tx.count(e) == 1);
      }
    }
  }
}

TEST_CASE("isomorphism representatives are lex-least relabelings") {
  for (int n = 2; n <= 3; ++n) {
    for (const FiniteGroupoid& g : semigroups_up_to_iso(n)) {
      std::vector<int> perm(static_cast<std::size_t>(n));
      std::iota(perm.begin(), perm.end(), 0);
      do {
        std::vector<int> relab(std::size_t(n) * std::size_t(n));
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            relab[std::size_t(perm[std::size_t(a)]) * n + perm[std::size_t(b)]] =
                perm[std::size_t(g.at(a, b))];
        CHECK_FALSE(relab < g.mul);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
}
