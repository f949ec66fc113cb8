#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polyring/algebra.hpp"
#include "polyring/symbolic.hpp"
#include "polyring/term.hpp"

namespace polyring {

// All sums over non-empty index subsets (index-increasing), exact integers,
// sorted and deduplicated. With a bound, sums above it are dropped.
std::vector<BigInt> fs_set(const std::vector<BigInt>& seq,
                           const std::optional<BigInt>& bound = std::nullopt);

// Finite-products analogues. Products run over increasing indices,
// left-associated; the index order is part of the definition.
std::vector<int> fp_set(const std::vector<int>& seq, const FiniteGroupoid& g);
std::vector<BigInt> fp_set_integers(const std::vector<BigInt>& seq);
std::vector<std::string> fp_set_words(const std::vector<std::string>& seq);

// r-coloring of the interval [1..n]; colors are 0-based.
struct Coloring {
  int n = 0;
  int colors = 1;
  std::vector<int> part;  // size n+1, part[0] = -1

  int color_of(int x) const;

  static Coloring single(int n);
  static Coloring parity(int n);                 // color = x mod 2
  static Coloring mod_k(int n, int k);           // color = x mod k
  static Coloring random(int n, int colors, std::uint64_t seed);
  static Coloring from_parts(int n, const std::vector<std::vector<int>>& parts);
  static Coloring from_csv(const std::string& text);  // lines "element,color"
  std::string to_csv() const;
};

struct SchurWitness {
  int x = 0, y = 0, color = 0;  // x <= y, x + y <= n, all three one color
};
std::optional<SchurWitness> schur_search(const Coloring& c, bool distinct = false);

struct SchurNumberResult {
  int n = 0;                  // largest interval length found colorable
  std::vector<int> coloring;  // a valid coloring of [1..n] (index 0 unused)
  bool exact = false;         // the failure of n+1 was proved within budget
  std::uint64_t nodes = 0;
};
// budget_ms > 0 adds a wall-clock cap; hitting it returns exact = false, and
// the result is then timing-dependent rather than a pure function of (r,
// node_budget)
SchurNumberResult schur_number(int r, std::uint64_t node_budget = 0,
                               std::uint64_t budget_ms = 0);

// true when the coloring (of [1..n], 0-based colors, index 0 ignored) has no
// monochromatic {x, y, x+y}
bool schur_coloring_valid(const std::vector<int>& coloring);

struct FsWitness {
  std::vector<int> xs;
  int color = 0;
  std::vector<int> fs;  // the realized finite-sums set
};
// Monochromatic FS(x_1..x_count) inside the interval; distinct elements by
// default, repeats opt-in.
std::optional<FsWitness> folkman_search(const Coloring& c, int count, bool distinct = true);

struct HilbertWitness {
  std::vector<int> xs;  // repeats allowed
  std::vector<int> bs;  // distinct translate bases
  int color = 0;
};
std::optional<HilbertWitness> hilbert_cube_search(const Coloring& c, int count, int b_count);

struct SimulWitness {
  std::vector<int> xs;  // FS over +
  std::vector<int> ys;  // FP over *, left-associated
  int color = 0;
};
std::optional<SimulWitness> simultaneous_fs_fp_search(const Coloring& c, int len);

// Coloring of the grid [1..N_1] x ... x [1..N_k], row-major, first axis most
// significant.
struct GridColoring {
  std::vector<int> axes;
  int colors = 1;
  std::vector<int> part;

  int color_at(const std::vector<int>& pt) const;

  static GridColoring single(std::vector<int> axes);
  static GridColoring parity_sum(std::vector<int> axes);
  static GridColoring mod_sum(std::vector<int> axes, int k);
  static GridColoring random(std::vector<int> axes, int colors, std::uint64_t seed);
};

struct ProductFsWitness {
  std::vector<std::vector<int>> seqs;  // one per axis, distinct per axis
  int color = 0;
};
// Per-axis additive FS sets whose product grid is monochromatic: the leading
// axes carry sequences of length m, the last axis length last_len.
// Lexicographically first witness.
std::optional<ProductFsWitness> product_fs_search(const GridColoring& c, int m, int last_len);
bool verify_product_fs(const GridColoring& c, int m, int last_len, const ProductFsWitness& w);

enum class KeyLemmaMode { Exhaustive, Random };

struct KeyLemmaReport {
  int degree = 0;
  std::uint64_t examined = 0;
  std::uint64_t vacuous = 0;     // some subset sum escapes the root set
  std::uint64_t confirming = 0;  // F vanished on the whole FS set (and at 0)
  // tuples (a_0 .. a_d), each a point of K^var_count; set only on failure
  std::optional<std::vector<std::vector<int>>> counterexample;
};

// For tuples of length deg(F)+1 over K^var_count: whenever F vanishes on all
// 2^(d+1)-1 subset sums of the tuple, F must vanish at 0. Exhaustive mode
// sweeps every tuple; random mode draws `trials` tuples deterministically
// from the seed (and parallelizes over chunks).
KeyLemmaReport verify_key_lemma(const FinitePolyring& k, const TermPtr& f, int var_count,
                                KeyLemmaMode mode, std::uint64_t trials = 0,
                                std::uint64_t seed = 0);

}  // namespace polyring
