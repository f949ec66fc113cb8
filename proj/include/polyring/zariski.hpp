#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polyring/algebra.hpp"
#include "polyring/bitset.hpp"
#include "polyring/symbolic.hpp"
#include "polyring/term.hpp"

namespace polyring {

// A function K^n -> K as a dense table, row-major with x1 most significant.
struct TermFunction {
  std::vector<int> table;
  TermPtr provenance;  // set for clone generators, empty for derived functions

  bool operator==(const TermFunction& o) const { return table == o.table; }
  bool operator<(const TermFunction& o) const { return table < o.table; }
};

struct Clone {
  int carrier = 0;
  int vars = 0;
  std::vector<TermFunction> functions;  // sorted by table, no duplicates
  bool complete = true;                 // false when the cap cut the fixpoint
};

std::size_t space_size(const FinitePolyring& k, int n);
TermFunction tabulate(const TermPtr& t, const FinitePolyring& k, int n);

// Least set of functions containing the projections, all constants, and zero,
// closed under pointwise +, -, and every op of the instance.
Clone term_clone(const FinitePolyring& k, int n, std::size_t cap);

PointSet root_set(const TermFunction& f, std::size_t points);

// K^n with the topology whose closed sets are intersections of finite unions
// of the generating family ("roots"). Point closures are precomputed; closure
// of a finite set is the union of its point closures, which never needs the
// union-closed base materialized.
class FiniteSpace {
 public:
  static FiniteSpace from_root_sets(std::size_t points, std::vector<PointSet> roots,
                                    bool complete_family = true);
  static FiniteSpace from_clone(const Clone& c, const FinitePolyring& k);
  // hand-built spaces: the family is used verbatim as the generating closed sets
  static FiniteSpace from_closed_family(std::size_t points, std::vector<PointSet> family);

  std::size_t size() const { return points_; }
  const std::vector<PointSet>& roots() const { return roots_; }
  bool complete_family() const { return complete_family_; }

  const PointSet& point_closure(int p) const { return cl_[p]; }
  PointSet closure(const PointSet& s) const;
  PointSet interior(const PointSet& s) const;
  PointSet min_open(int x) const;  // smallest open set containing x

 private:
  std::size_t points_ = 0;
  std::vector<PointSet> roots_;
  std::vector<PointSet> cl_;
  bool complete_family_ = true;

  void build_point_closures();
};

// Closure with respect to an explicit family of closed sets: the intersection
// of all members containing S (full space when none does). With the saturated
// union-closed base this equals FiniteSpace::closure; with a restricted base
// (union_arity 1 keeps just the root sets) it computes the coarser
// algebraic-set closure.
PointSet closure_in_family(std::size_t points, const std::vector<PointSet>& family,
                           const PointSet& s);

// Materialized algebraic sets: all unions of at most union_arity root sets.
struct BaseReport {
  std::vector<PointSet> sets;  // sorted, deduplicated
  bool saturated = false;      // union closure reached its fixpoint
  bool capped = false;         // stopped early at the cap
};
BaseReport closed_base(const FiniteSpace& space, std::uint64_t union_arity, std::size_t cap);

struct SpaceAnalysis {
  bool discrete = false;
  std::vector<int> isolated;                 // sorted
  std::vector<std::vector<int>> components;  // sorted by first member
  std::vector<long long> psi;                // per point; -1 encodes undefined/infinite
  long long psi_space = 1;                   // max over points, -1 if any is -1
  int ind = 0;                               // small inductive dimension
};
SpaceAnalysis analyze(const FiniteSpace& space);

struct SubsetAnalysis {
  PointSet closure;
  PointSet interior;
  bool is_closed = false;
  bool nowhere_dense = false;  // closure has empty interior
};
SubsetAnalysis analyze_subset(const FiniteSpace& space, const PointSet& s);

// ind(empty) = -1; ind(X) = 1 + max over points x of ind(boundary of the
// minimal open around x), computed on subspaces and memoized. In a finite
// space every base contains the minimal opens, so the recursion over them is
// exact, not an approximation.
int ind_dimension(const FiniteSpace& space);

// The F_2^m ring check: per-a root characterizations, the complement identity
// on its exact validity set, cylinder algebraicity, singleton root sets, and
// the resulting algebraic-set count.
struct CantorReport {
  int m = 0;
  std::size_t carrier = 0;
  bool characterizations_hold = false;       // S_{ax} and S_{ax+a} match the b-patterns for every a
  bool complement_on_weight_one = false;     // S_{ax+a} = ~S_{ax} for every weight-1 a
  bool complement_exactly_weight_one = false;  // identity valid for a iff weight(a) = 1
  std::vector<int> complement_valid_as;      // sorted list of a with the identity
  bool cylinders_algebraic = false;          // all 2m cylinders are root sets
  bool singletons_algebraic = false;         // every {b} is a root set
  std::string algebraic_count;               // exact 2^(2^m), decimal
  bool base_crosschecked = false;            // union closure materialized and counted
};
CantorReport verify_cantor_example(int m, int crosscheck_limit = 2);

// Finite-valued avoid sets for certificates. The finite-valued coordinate is
// the last axis: Graph pins it to one value per leading tuple, Points is a
// finite list, Empty is trivially fine.
struct AvoidSet {
  enum class Kind { Empty, Graph, Points };

  Kind kind = Kind::Empty;
  TermPtr graph_term;  // Graph: over x1..xn; A = {(v, g(v))}
  std::vector<std::vector<BigVec>> points;

  bool contains(const SymbolicPolyring& K, const std::vector<BigVec>& pt) const;
};

struct Certificate {
  int dimension = 1;
  std::vector<SymbolicOp> instance_ops;
  std::vector<std::string> term_texts;  // over x1..x(n+1); x(n+1) is the last axis
  int n = 1;                            // leading axes
  int degree_bound = 1;                 // the m of the search
  int tail_len = 1;
  std::vector<std::vector<BigVec>> sequences;  // n of length degree_bound+1, then the tail
  int witness_term = -1;
  AvoidSet avoid;
};

struct CertificateSearch {
  std::optional<Certificate> certificate;
  bool cover_too_tight = false;  // not-found and every sampled root point sat inside A
  std::uint64_t candidates = 0;
  bool budget_exhausted = false;
};

// Searches lexicographically over pools 0, 1, -1, 2, -2, ... (diagonal
// vectors for d > 1), then randomized under the remaining node budget.
// Sequence elements are distinct per axis by construction.
// budget_ms > 0 adds a wall-clock cap checked between candidates; results
// after a timeout stop are timing-dependent, unlike pure node-budget runs.
CertificateSearch nowhere_dense_certificate(const SymbolicPolyring& K,
                                            const std::vector<TermPtr>& terms,
                                            const AvoidSet& avoid, int n, int degree_bound,
                                            int tail_len, std::uint64_t node_budget,
                                            std::uint64_t seed, std::uint64_t budget_ms = 0);

// Opt-in consistency check of the covering hypothesis on a finite window;
// throws InvalidInput naming the first uncovered point.
void validate_cover_window(const SymbolicPolyring& K, const std::vector<TermPtr>& terms,
                           const AvoidSet& avoid, int n, long long radius);

// Replays every claim in the certificate. False means a recheck failed (the
// reason lands in *why); malformed shapes throw InvalidInput instead.
bool verify_certificate(const Certificate& c, std::string* why);

struct ParabolaReport {
  std::string determinant;        // 3x3 system determinant, exact
  bool only_trivial = false;      // full rank: only the zero term vanishes on the points
  long long coeff_bound = 0;
  bool trivial_in_box = false;    // box scan found no nonzero vanishing term
  long long window_radius = 0;
  bool window_closure_full = false;
};
ParabolaReport parabola_density_check(long long coeff_bound, long long window_radius);

}  // namespace polyring
