#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "polyring/rng.hpp"
#include "polyring/term.hpp"

namespace polyring {

using BigInt = boost::multiprecision::cpp_int;
using BigVec = std::vector<BigInt>;

// One operation of a Z^d instance, additive in every coordinate by shape:
//   Product: componentwise product of all arguments (any arity >= 1)
//   Matrix:  arity 1, integer d x d matrix acting on the vector
//   Zero:    constant zero map (any arity >= 1)
struct SymbolicOp {
  enum class Kind { Product, Matrix, Zero };

  std::string name;
  Kind kind = Kind::Zero;
  int arity = 1;
  std::vector<std::vector<long long>> matrix;  // Matrix only, d rows of d
};

// Exact-integer instance on Z^d. Everything is arbitrary precision; there is
// no overflow anywhere in the evaluation path.
class SymbolicPolyring {
 public:
  SymbolicPolyring(int dimension, std::vector<SymbolicOp> ops);

  int dimension() const { return d_; }
  const std::vector<SymbolicOp>& ops() const { return ops_; }
  Signature signature() const;

  BigVec zero() const { return BigVec(d_); }
  BigVec add(const BigVec& a, const BigVec& b) const;
  BigVec neg(const BigVec& a) const;
  BigVec op(const std::string& name, const std::vector<BigVec>& args) const;

  // Element constants #k embed diagonally as (k,...,k).
  BigVec evaluate(const TermPtr& t, const std::vector<BigVec>& point) const;

  // Spot-checks additivity of every op in every coordinate at random small
  // vectors. The op shapes are additive by construction; this is the
  // executable form of that claim.
  bool additivity_probe(SplitMix64& rng, int trials) const;

 private:
  const SymbolicOp& find(const std::string& name) const;

  int d_;
  std::vector<SymbolicOp> ops_;
};

// The instances the density and certificate checks run on.
SymbolicPolyring z_group_symbolic(int dimension);          // no ops
SymbolicPolyring z_ring_symbolic(int dimension);           // op "m" = componentwise product

}  // namespace polyring
