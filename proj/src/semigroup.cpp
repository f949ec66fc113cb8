#include "polyring/semigroup.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "polyring/errors.hpp"
#include "polyring/parallel.hpp"

namespace polyring {

namespace {

void require_carrier(const FiniteGroupoid& g) {
  if (g.size < 1) throw InvalidInput("groupoid carrier is empty");
  if (g.mul.size() != std::size_t(g.size) * std::size_t(g.size))
    throw InvalidInput("multiplication table size does not match carrier");
  for (int v : g.mul)
    if (v < 0 || v >= g.size) throw InvalidInput("table entry outside carrier");
}

void require_associative(const FiniteGroupoid& g) {
  if (auto w = associativity_failure(g))
    throw InvalidInput("multiplication is not associative, e.g. at (" +
                       std::to_string(w->a) + "," + std::to_string(w->b) + "," +
                       std::to_string(w->c) + ")");
}

}  // namespace

std::optional<AssocFailure> associativity_failure(const FiniteGroupoid& g) {
  require_carrier(g);
  for (int a = 0; a < g.size; ++a)
    for (int b = 0; b < g.size; ++b)
      for (int c = 0; c < g.size; ++c)
        if (g.at(g.at(a, b), c) != g.at(a, g.at(b, c))) return AssocFailure{a, b, c};
  return std::nullopt;
}

bool is_associative(const FiniteGroupoid& g) { return !associativity_failure(g); }

IdempotentsReport find_idempotents(const FiniteGroupoid& g) {
  require_carrier(g);
  IdempotentsReport rep;
  for (int x = 0; x < g.size; ++x)
    if (g.at(x, x) == x) rep.elements.push_back(x);
  rep.forced_non_associative = rep.elements.empty();
  return rep;
}

int idempotent_power(const FiniteGroupoid& g, int x) {
  require_carrier(g);
  if (x < 0 || x >= g.size) throw InvalidInput("element outside carrier");
  require_associative(g);

  // walk x, x^2, x^3, ... until the first repeat; the power sequence then
  // consists of a tail of length s-1 and a cycle of length L, and the cyclic
  // part contains exactly one idempotent, at the first exponent >= s
  // divisible by L
  std::vector<int> seen_at(std::size_t(g.size), 0);  // exponent of first visit
  std::vector<int> powers{x};                        // powers[e-1] = x^e
  seen_at[std::size_t(x)] = 1;
  int cycle_start = 0, cycle_len = 0;
  for (int e = 2;; ++e) {
    int v = g.at(powers.back(), x);
    if (seen_at[std::size_t(v)] != 0) {
      cycle_start = seen_at[std::size_t(v)];
      cycle_len = e - cycle_start;
      break;
    }
    seen_at[std::size_t(v)] = e;
    powers.push_back(v);
  }
  int e = cycle_len;
  while (e < cycle_start) e += cycle_len;
  return powers[std::size_t(e) - 1];
}

CancellativityReport weak_left_cancellativity(const FiniteGroupoid& g) {
  require_carrier(g);
  CancellativityReport rep;
  bool all_one = true;
  for (int a = 0; a < g.size; ++a) {
    std::vector<int> hits(std::size_t(g.size), 0);
    for (int x = 0; x < g.size; ++x) ++hits[std::size_t(g.at(a, x))];
    for (int h : hits) {
      rep.max_solutions = std::max(rep.max_solutions, h);
      if (h != 1) all_one = false;
    }
  }
  rep.left_cancellative = all_one;
  return rep;
}

std::vector<int> principal_left_ideal(const FiniteGroupoid& g, int x) {
  require_carrier(g);
  if (x < 0 || x >= g.size) throw InvalidInput("element outside carrier");
  std::set<int> out{x};
  for (int s = 0; s < g.size; ++s) out.insert(g.at(s, x));
  return {out.begin(), out.end()};
}

SemigroupReport ideal_structure(const FiniteGroupoid& g) {
  require_carrier(g);
  require_associative(g);

  SemigroupReport rep;
  rep.associative = true;
  rep.idempotents = find_idempotents(g).elements;
  rep.max_left_solutions = weak_left_cancellativity(g).max_solutions;

  std::vector<std::vector<int>> principal(std::size_t(g.size));
  for (int x = 0; x < g.size; ++x)
    principal[std::size_t(x)] = principal_left_ideal(g, x);

  // L(y) <= L(x) for every y in L(x), so L(x) is minimal exactly when all its
  // members generate it back
  std::set<std::vector<int>> minimal;
  for (int x = 0; x < g.size; ++x) {
    const auto& lx = principal[std::size_t(x)];
    bool min = true;
    for (int y : lx)
      if (principal[std::size_t(y)] != lx) {
        min = false;
        break;
      }
    if (min) minimal.insert(lx);
  }
  rep.minimal_left_ideals.assign(minimal.begin(), minimal.end());

  std::set<int> kernel;
  for (const auto& ideal : rep.minimal_left_ideals)
    kernel.insert(ideal.begin(), ideal.end());
  rep.smallest_two_sided_ideal.assign(kernel.begin(), kernel.end());
  return rep;
}

namespace {

// Checks every triple whose intermediate products are already assigned.
bool partial_associative(const std::vector<int>& t, int n) {
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ab = t[std::size_t(a) * n + b];
      for (int c = 0; c < n; ++c) {
        int bc = t[std::size_t(b) * n + c];
        if (ab < 0 && bc < 0) continue;
        int left = ab < 0 ? -1 : t[std::size_t(ab) * n + c];
        int right = bc < 0 ? -1 : t[std::size_t(a) * n + bc];
        if (left >= 0 && right >= 0 && left != right) return false;
      }
    }
  return true;
}

void fill_tables(std::vector<int>& t, int n, std::size_t cell,
                 std::vector<FiniteGroupoid>& out) {
  std::size_t cells = std::size_t(n) * std::size_t(n);
  while (cell < cells && t[cell] >= 0) ++cell;
  if (cell == cells) {
    out.push_back(FiniteGroupoid{n, t});
    return;
  }
  for (int v = 0; v < n; ++v) {
    t[cell] = v;
    if (partial_associative(t, n)) fill_tables(t, n, cell + 1, out);
  }
  t[cell] = -1;
}

std::vector<int> canonical_table(const FiniteGroupoid& g) {
  int n = g.size;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best;
  std::vector<int> relab(std::size_t(n) * std::size_t(n));
  do {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        relab[std::size_t(perm[std::size_t(a)]) * n + perm[std::size_t(b)]] =
            perm[std::size_t(g.at(a, b))];
    if (best.empty() || relab < best) best = relab;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::vector<FiniteGroupoid> all_semigroups(int n) {
  if (n < 1) throw InvalidInput("order must be positive");
  if (n > 4) throw InvalidInput("exhaustive corpus is capped at order 4");

  // split on the first row; each prefix explores independently and results
  // concatenate in prefix order, so the output is deterministic
  std::size_t prefixes = 1;
  for (int i = 0; i < n; ++i) prefixes *= std::size_t(n);
  std::vector<std::vector<FiniteGroupoid>> buckets(prefixes);
  parallel_for(prefixes, [&](std::size_t job) {
    std::vector<int> t(std::size_t(n) * std::size_t(n), -1);
    std::size_t rest = job;
    for (int b = n - 1; b >= 0; --b) {
      t[std::size_t(b)] = int(rest % std::size_t(n));
      rest /= std::size_t(n);
    }
    if (partial_associative(t, n))
      fill_tables(t, n, std::size_t(n), buckets[job]);
  });

  std::vector<FiniteGroupoid> out;
  for (auto& b : buckets)
    for (auto& g : b) out.push_back(std::move(g));
  return out;
}

std::vector<FiniteGroupoid> semigroups_up_to_iso(int n) {
  std::set<std::vector<int>> canon;
  for (const FiniteGroupoid& g : all_semigroups(n)) canon.insert(canonical_table(g));
  std::vector<FiniteGroupoid> out;
  for (const auto& t : canon) out.push_back(FiniteGroupoid{n, t});
  return out;
}

}  // namespace polyring
