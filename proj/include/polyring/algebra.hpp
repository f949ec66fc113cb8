#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "polyring/rng.hpp"
#include "polyring/term.hpp"

namespace polyring {

// Dense row-major table of one extra operation. For args (a1,...,an) the
// cell index is ((a1*m + a2)*m + a3)*m + ... with a1 most significant.
struct OpTable {
  int arity = 0;
  std::vector<int> table;

  bool operator==(const OpTable&) const = default;
  bool operator<(const OpTable& o) const {
    if (arity != o.arity) return arity < o.arity;
    return table < o.table;
  }
};

// Finite instance: elements 0..m-1, zero element 0, plus op tables.
// Construction validates shapes and value ranges only; the algebraic axioms
// are a checkable predicate (check_axioms), so broken candidates are legal
// values here.
class FinitePolyring {
 public:
  FinitePolyring(int size, std::vector<int> add, std::vector<int> neg,
                 std::map<std::string, OpTable> ops);

  int size() const { return m_; }
  int add(int a, int b) const { return add_[static_cast<std::size_t>(a) * m_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int op(const OpTable& t, const std::vector<int>& args) const;
  int op(const std::string& name, const std::vector<int>& args) const;
  const std::map<std::string, OpTable>& ops() const { return ops_; }
  const std::vector<int>& add_table() const { return add_; }
  const std::vector<int>& neg_table() const { return neg_; }
  Signature signature() const;

  int scalar(long long k, int a) const;  // k * a in the additive group

 private:
  int m_;
  std::vector<int> add_, neg_;
  std::map<std::string, OpTable> ops_;
};

// Named instances used all over the tests and docs.
FinitePolyring zm_group(int m);                       // (Z_m, +)
FinitePolyring zm_ring(int m);                        // Z_m with op "m" = multiplication
FinitePolyring zm_with_op(int m, const std::string& name, const OpTable& t);

struct AxiomFailure {
  std::string axiom;          // "add-assoc", "add-comm", "zero-identity", "neg-inverse", "op-additive"
  std::string op;             // for op-additive
  int coordinate = -1;        // for op-additive
  std::vector<int> witness;   // the offending elements, in scan order
};

struct AxiomReport {
  std::vector<AxiomFailure> failures;  // capped at kMaxFailures per axiom kind
  long long checks_run = 0;
  bool truncated = false;
  bool all_hold() const { return failures.empty(); }
  static constexpr int kMaxFailures = 32;
};

AxiomReport check_axioms(const FinitePolyring& k);

int evaluate(const TermPtr& t, const FinitePolyring& k, const std::vector<int>& point);

// Maps K^arity -> K additive in every coordinate, deterministically ordered.
// complete == false means the result was cut at cap.
struct EnumOpsResult {
  std::vector<OpTable> ops;
  bool complete = true;
  std::uint64_t total = 0;  // count that exists, even when capped
};

// brute scans all m^(m^arity) tables (refused above 2^24 candidates);
// the default walks an independent-generator basis of the additive group and
// extends admissible basis assignments multilinearly. Both orders are fixed.
EnumOpsResult enumerate_distributive_ops(const FinitePolyring& group, int arity,
                                         std::uint64_t cap, bool brute = false);

// One uniformly random coordinatewise-additive op (basis-assignment method).
OpTable random_distributive_op(const FinitePolyring& group, int arity, SplitMix64& rng);

bool is_multiadditive(const FinitePolyring& group, const OpTable& t);

struct FiniteGroupoid {
  int size = 0;
  std::vector<int> mul;  // row-major

  int at(int a, int b) const { return mul[static_cast<std::size_t>(a) * size + b]; }
};

FiniteGroupoid left_zero_groupoid(int n);   // a*b = a
FiniteGroupoid right_zero_groupoid(int n);  // a*b = b
FiniteGroupoid null_groupoid(int n);        // a*b = 0
FiniteGroupoid zm_mul_groupoid(int m);      // (Z_m, *)

// Functions g -> Z_m under pointwise addition with convolution as the extra
// binary op "conv". Element index encodes the coefficient vector in base m,
// digit j (least significant first) = coefficient of g's element j.
// support_bound > |g| violates the contract; the value is otherwise unused.
FinitePolyring groupoid_ring(const FiniteGroupoid& g, int mod, int support_bound = 0,
                             int size_limit = 1024);

std::size_t groupoid_ring_size(const FiniteGroupoid& g, int mod);
std::size_t delta_index(const FiniteGroupoid& g, int mod, int element);

FinitePolyring direct_product(const std::vector<const FinitePolyring*>& factors);

// H with F(x+a) = F(x) + H(x) pointwise over the instance; ground monomials
// are folded through the tables into at most one trailing #constant.
// deg(H) < deg(F). Throws InvalidInput when deg(F) = 0 or |point| != var_count.
Polynomial shift_decompose(const TermPtr& f, int var_count, const FinitePolyring& k,
                           const std::vector<int>& point);

}  // namespace polyring
