#pragma once

#include <optional>
#include <vector>

#include "polyring/algebra.hpp"

namespace polyring {

// First triple with (a*b)*c != a*(b*c), scanned in lex order.
struct AssocFailure {
  int a = 0;
  int b = 0;
  int c = 0;
};

std::optional<AssocFailure> associativity_failure(const FiniteGroupoid& g);
bool is_associative(const FiniteGroupoid& g);

struct IdempotentsReport {
  std::vector<int> elements;  // sorted
  // set only when no idempotent exists: a finite associative table always
  // has one, so an empty result certifies non-associativity
  bool forced_non_associative = false;
};

IdempotentsReport find_idempotents(const FiniteGroupoid& g);

// The unique idempotent among the powers x, x*x, (x*x)*x, ...
// Requires an associative table; throws InvalidInput otherwise.
int idempotent_power(const FiniteGroupoid& g, int x);

struct CancellativityReport {
  // max over pairs (a,b) of the number of x with a*x = b
  int max_solutions = 0;
  bool left_cancellative = false;  // every such count is exactly 1
};

CancellativityReport weak_left_cancellativity(const FiniteGroupoid& g);

// S*x together with x itself, sorted.
std::vector<int> principal_left_ideal(const FiniteGroupoid& g, int x);

struct SemigroupReport {
  bool associative = false;
  std::vector<int> idempotents;
  std::vector<std::vector<int>> minimal_left_ideals;  // each sorted, list lex-sorted
  std::vector<int> smallest_two_sided_ideal;          // union of the minimal left ideals
  int max_left_solutions = 0;
};

// Full structural report; throws InvalidInput on a non-associative table.
SemigroupReport ideal_structure(const FiniteGroupoid& g);

// Every associative table on {0..n-1}, n <= 4, in lex order of the flattened
// table. Sizes 1,8,113,3492 match OEIS A023814.
std::vector<FiniteGroupoid> all_semigroups(int n);

// One representative per isomorphism class (the lex-least relabeling), in lex
// order. Sizes 1,5,24,188 match OEIS A027851.
std::vector<FiniteGroupoid> semigroups_up_to_iso(int n);

}  // namespace polyring
