#include "polyring/symbolic.hpp"

#include <set>

#include "polyring/errors.hpp"

namespace polyring {

SymbolicPolyring::SymbolicPolyring(int dimension, std::vector<SymbolicOp> ops)
    : d_(dimension), ops_(std::move(ops)) {
  if (d_ < 1) throw InvalidInput("symbolic dimension must be at least 1");
  std::set<std::string> names;
  for (const auto& o : ops_) {
    if (o.name.empty()) throw InvalidInput("symbolic op needs a name");
    if (!names.insert(o.name).second)
      throw InvalidInput("duplicate symbolic op name '" + o.name + "'");
    if (o.arity < 1) throw InvalidInput("symbolic op '" + o.name + "' must have arity >= 1");
    if (o.kind == SymbolicOp::Kind::Matrix) {
      if (o.arity != 1)
        throw InvalidInput("matrix op '" + o.name + "' must be unary");
      if (static_cast<int>(o.matrix.size()) != d_)
        throw InvalidInput("matrix op '" + o.name + "' needs " + std::to_string(d_) + " rows");
      for (const auto& row : o.matrix)
        if (static_cast<int>(row.size()) != d_)
          throw InvalidInput("matrix op '" + o.name + "' rows must have " +
                             std::to_string(d_) + " entries");
    }
  }
}

Signature SymbolicPolyring::signature() const {
  Signature s;
  for (const auto& o : ops_) s.ops[o.name] = o.arity;
  return s;
}

BigVec SymbolicPolyring::add(const BigVec& a, const BigVec& b) const {
  BigVec r(d_);
  for (int i = 0; i < d_; ++i) r[i] = a[i] + b[i];
  return r;
}

BigVec SymbolicPolyring::neg(const BigVec& a) const {
  BigVec r(d_);
  for (int i = 0; i < d_; ++i) r[i] = -a[i];
  return r;
}

const SymbolicOp& SymbolicPolyring::find(const std::string& name) const {
  for (const auto& o : ops_)
    if (o.name == name) return o;
  throw EvalError("symbolic instance has no operation '" + name + "'");
}

BigVec SymbolicPolyring::op(const std::string& name, const std::vector<BigVec>& args) const {
  const SymbolicOp& o = find(name);
  if (static_cast<int>(args.size()) != o.arity)
    throw EvalError("op '" + name + "' applied to " + std::to_string(args.size()) +
                    " arguments, arity is " + std::to_string(o.arity));
  for (const auto& a : args)
    if (static_cast<int>(a.size()) != d_) throw EvalError("argument dimension mismatch");
  switch (o.kind) {
    case SymbolicOp::Kind::Zero:
      return zero();
    case SymbolicOp::Kind::Product: {
      BigVec r = args[0];
      for (std::size_t i = 1; i < args.size(); ++i)
        for (int j = 0; j < d_; ++j) r[j] *= args[i][j];
      return r;
    }
    case SymbolicOp::Kind::Matrix: {
      BigVec r(d_);
      for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) r[i] += BigInt(o.matrix[i][j]) * args[0][j];
      return r;
    }
  }
  throw EvalError("unknown symbolic op kind");
}

BigVec SymbolicPolyring::evaluate(const TermPtr& t, const std::vector<BigVec>& point) const {
  if (!t) throw EvalError("empty term");
  switch (t->kind()) {
    case TermKind::Zero:
      return zero();
    case TermKind::Var: {
      const int i = t->var_index();
      if (i < 1 || static_cast<std::size_t>(i) > point.size())
        throw EvalError("term uses x" + std::to_string(i) + " but the point has " +
                        std::to_string(point.size()) + " coordinates");
      if (static_cast<int>(point[i - 1].size()) != d_)
        throw EvalError("point coordinate dimension mismatch");
      return point[i - 1];
    }
    case TermKind::ConstElem:
      return BigVec(d_, BigInt(t->elem()));
    case TermKind::ConstSym:
      throw EvalError("unresolved symbolic constant '" + t->name() + "'");
    case TermKind::Neg:
      return neg(evaluate(t->args()[0], point));
    case TermKind::Sum:
      return add(evaluate(t->args()[0], point), evaluate(t->args()[1], point));
    case TermKind::App: {
      std::vector<BigVec> args;
      args.reserve(t->args().size());
      for (const auto& a : t->args()) args.push_back(evaluate(a, point));
      return op(t->name(), args);
    }
  }
  throw EvalError("unknown term node");
}

bool SymbolicPolyring::additivity_probe(SplitMix64& rng, int trials) const {
  auto small = [&] {
    BigVec v(d_);
    for (int i = 0; i < d_; ++i) v[i] = static_cast<long long>(rng.below(21)) - 10;
    return v;
  };
  for (const auto& o : ops_) {
    for (int trial = 0; trial < trials; ++trial) {
      std::vector<BigVec> args(o.arity);
      for (auto& a : args) a = small();
      for (int coord = 0; coord < o.arity; ++coord) {
        const BigVec x = small(), y = small();
        std::vector<BigVec> ax = args, ay = args, axy = args;
        ax[coord] = x;
        ay[coord] = y;
        axy[coord] = add(x, y);
        if (op(o.name, axy) != add(op(o.name, ax), op(o.name, ay))) return false;
      }
    }
  }
  return true;
}

SymbolicPolyring z_group_symbolic(int dimension) { return SymbolicPolyring(dimension, {}); }

SymbolicPolyring z_ring_symbolic(int dimension) {
  SymbolicOp mul;
  mul.name = "m";
  mul.kind = SymbolicOp::Kind::Product;
  mul.arity = 2;
  return SymbolicPolyring(dimension, {std::move(mul)});
}

}  // namespace polyring
