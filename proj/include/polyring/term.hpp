#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polyring/errors.hpp"

namespace polyring {

// Operation symbols usable in terms: name -> arity (>= 1).
struct Signature {
  std::map<std::string, int> ops;

  std::optional<int> arity_of(const std::string& name) const {
    auto it = ops.find(name);
    if (it == ops.end()) return std::nullopt;
    return it->second;
  }

  // CLI shorthand "m:2,f:1".
  static Signature parse(const std::string& text);
};

enum class TermKind { Zero, Var, ConstElem, ConstSym, Neg, Sum, App };

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable tree over the grammar
//   term := var | const | "0" | "(" term "+" term ")" | "-" term
//         | op "(" term ("," term)* ")"
//   var  := "x" digits (1-based)     const := "#" digits | identifier
class Term {
 public:
  TermKind kind() const { return kind_; }
  int var_index() const { return var_; }          // Var
  long long elem() const { return elem_; }        // ConstElem
  const std::string& name() const { return name_; }  // ConstSym / App
  const std::vector<TermPtr>& args() const { return args_; }

  static TermPtr zero();
  static TermPtr var(int index);
  static TermPtr elem_const(long long value);
  static TermPtr sym_const(std::string name);
  static TermPtr neg(TermPtr t);
  static TermPtr sum(TermPtr lhs, TermPtr rhs);
  static TermPtr app(std::string op, std::vector<TermPtr> args);

 private:
  explicit Term(TermKind k) : kind_(k) {}

  TermKind kind_;
  int var_ = 0;
  long long elem_ = 0;
  std::string name_;
  std::vector<TermPtr> args_;
};

// Fixed total order on ASTs. Within monomial bodies the kind rank is
// Var < App < #elem < symbolic, which is also the printing order of
// canceled polynomials.
int compare(const Term& a, const Term& b);
inline bool equal(const Term& a, const Term& b) { return compare(a, b) == 0; }

// Variable indices above y_split print as y1, y2, ... (used to display
// decomposition results in 2n variables); y_split == 0 keeps plain x-names,
// which re-parse under the same signature.
std::string to_string(const Term& t, int y_split = 0);
std::string to_string(const TermPtr& t, int y_split = 0);

// var_count < 0 lifts the variable-index bound.
TermPtr parse_term(const std::string& text, const Signature& sig, int var_count = -1);

int max_var_index(const Term& t);
std::vector<int> vars_of(const Term& t);  // sorted, unique
bool is_ground(const Term& t);            // no Var nodes

TermPtr substitute(const TermPtr& t, const std::map<int, TermPtr>& bindings);

// A +-free, 0-free, Neg-free body carrying a sign.
struct SignedMonomial {
  int sign = 1;  // +1 or -1
  TermPtr body;
};

// Canceled multiset of signed monomials in canonical order: the image of a
// term in the free abelian group on monomial bodies. Multiplicity is kept as
// repeated entries (the group is written additively; there is no integer
// scaling in the signature). Opposite signs on equal bodies never survive.
class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial from_monomials(std::vector<SignedMonomial> monos);

  const std::vector<SignedMonomial>& monomials() const { return monos_; }
  bool is_zero() const { return monos_.empty(); }
  std::size_t size() const { return monos_.size(); }

  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-() const;
  Polynomial operator-(const Polynomial& rhs) const;
  bool operator==(const Polynomial& rhs) const;
  bool operator!=(const Polynomial& rhs) const { return !(*this == rhs); }

 private:
  std::vector<SignedMonomial> monos_;  // sorted by body, canceled
};

// Distributes every op over + and -, drops annihilated monomials, cancels.
// Sound: evaluates equal to the input term over every instance.
Polynomial normalize(const TermPtr& t);

TermPtr to_term(const Polynomial& p);  // right-nested sum; zero() when empty
std::string to_string(const Polynomial& p, int y_split = 0);

// Syntactic degree: occurrences of the designated variables, max over the
// canceled monomials. An upper bound for the representation-minimal degree
// (which is what every downstream use needs).
struct Degree {
  int value = 0;
  std::vector<int> vars;
};
Degree degree(const Polynomial& p, std::vector<int> vars);
Degree degree(const TermPtr& t, std::vector<int> vars);
Degree degree(const TermPtr& t);  // w.r.t. all variables present

// G with F(x+y) = F(x) + F(y) + G(x,y) as canceled polynomials, where F uses
// variables 1..var_count and y_i is variable var_count+i. deg_x(G) < deg(F).
// Throws InvalidInput when deg(F) = 0.
Polynomial sum_decompose(const TermPtr& f, int var_count);

// shift_decompose needs an instance to fold ground monomials; see algebra.hpp.

}  // namespace polyring
