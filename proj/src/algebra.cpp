#include "polyring/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

#include "polyring/errors.hpp"

namespace polyring {

namespace {

std::size_t checked_pow(std::size_t base, int exp, std::size_t limit,
                        const char* what) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > limit / base) {
      throw InvalidInput(std::string(what) + " would exceed " + std::to_string(limit) +
                         " entries");
    }
    r *= base;
  }
  return r;
}

}  // namespace

FinitePolyring::FinitePolyring(int size, std::vector<int> add, std::vector<int> neg,
                               std::map<std::string, OpTable> ops)
    : m_(size), add_(std::move(add)), neg_(std::move(neg)), ops_(std::move(ops)) {
  if (m_ < 1) throw InvalidInput("carrier must have at least one element");
  const std::size_t m = static_cast<std::size_t>(m_);
  if (add_.size() != m * m) {
    throw InvalidInput("add table has " + std::to_string(add_.size()) +
                       " entries, expected " + std::to_string(m * m));
  }
  if (neg_.size() != m) {
    throw InvalidInput("neg table has " + std::to_string(neg_.size()) +
                       " entries, expected " + std::to_string(m));
  }
  auto in_range = [&](int v) { return v >= 0 && v < m_; };
  for (int v : add_)
    if (!in_range(v)) throw InvalidInput("add table value out of range: " + std::to_string(v));
  for (int v : neg_)
    if (!in_range(v)) throw InvalidInput("neg table value out of range: " + std::to_string(v));
  for (const auto& [name, t] : ops_) {
    if (t.arity < 1) throw InvalidInput("op '" + name + "' must have arity >= 1");
    std::size_t want = checked_pow(m, t.arity, std::size_t(1) << 40,
                                   ("op table for '" + name + "'").c_str());
    if (t.table.size() != want) {
      throw InvalidInput("op '" + name + "' table has " + std::to_string(t.table.size()) +
                         " entries, expected " + std::to_string(want));
    }
    for (int v : t.table)
      if (!in_range(v))
        throw InvalidInput("op '" + name + "' value out of range: " + std::to_string(v));
  }
}

int FinitePolyring::op(const OpTable& t, const std::vector<int>& args) const {
  if (static_cast<int>(args.size()) != t.arity) {
    throw EvalError("operation applied to " + std::to_string(args.size()) +
                    " arguments, arity is " + std::to_string(t.arity));
  }
  std::size_t idx = 0;
  for (int a : args) {
    if (a < 0 || a >= m_) throw EvalError("argument out of carrier range: " + std::to_string(a));
    idx = idx * static_cast<std::size_t>(m_) + static_cast<std::size_t>(a);
  }
  return t.table[idx];
}

int FinitePolyring::op(const std::string& name, const std::vector<int>& args) const {
  auto it = ops_.find(name);
  if (it == ops_.end()) throw EvalError("instance has no operation '" + name + "'");
  return op(it->second, args);
}

Signature FinitePolyring::signature() const {
  Signature s;
  for (const auto& [name, t] : ops_) s.ops[name] = t.arity;
  return s;
}

namespace {

// Additive order of g, guarded so a non-group add table cannot loop forever.
int order_of(const FinitePolyring& k, int g) {
  int acc = g, n = 1;
  while (acc != 0) {
    acc = k.add(acc, g);
    if (++n > k.size()) throw InvalidInput("add table is not a group: no multiple of an element returns to 0");
  }
  return n;
}

}  // namespace

int FinitePolyring::scalar(long long c, int a) const {
  int base = a;
  if (c < 0) {
    base = neg_[a];
    c = -c;
  }
  int ord = order_of(*this, base);
  c %= ord;
  int acc = 0;
  for (long long i = 0; i < c; ++i) acc = add(acc, base);
  return acc;
}

FinitePolyring zm_group(int m) {
  if (m < 1) throw InvalidInput("modulus must be positive");
  std::vector<int> add(static_cast<std::size_t>(m) * m), neg(m);
  for (int a = 0; a < m; ++a) {
    neg[a] = (m - a) % m;
    for (int b = 0; b < m; ++b) add[static_cast<std::size_t>(a) * m + b] = (a + b) % m;
  }
  return FinitePolyring(m, std::move(add), std::move(neg), {});
}

FinitePolyring zm_with_op(int m, const std::string& name, const OpTable& t) {
  FinitePolyring g = zm_group(m);
  std::map<std::string, OpTable> ops;
  ops[name] = t;
  return FinitePolyring(m, g.add_table(), g.neg_table(), std::move(ops));
}

FinitePolyring zm_ring(int m) {
  if (m < 1) throw InvalidInput("modulus must be positive");
  OpTable mul;
  mul.arity = 2;
  mul.table.resize(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) mul.table[static_cast<std::size_t>(a) * m + b] = (a * b) % m;
  return zm_with_op(m, "m", mul);
}

AxiomReport check_axioms(const FinitePolyring& k) {
  AxiomReport r;
  const int m = k.size();
  const int cap = AxiomReport::kMaxFailures;

  int found = 0;
  for (int a = 0; a < m && found < cap; ++a)
    for (int b = 0; b < m && found < cap; ++b)
      for (int c = 0; c < m && found < cap; ++c) {
        ++r.checks_run;
        if (k.add(k.add(a, b), c) != k.add(a, k.add(b, c))) {
          r.failures.push_back({"add-assoc", "", -1, {a, b, c}});
          ++found;
        }
      }
  if (found >= cap) r.truncated = true;

  found = 0;
  for (int a = 0; a < m && found < cap; ++a)
    for (int b = 0; b < m && found < cap; ++b) {
      ++r.checks_run;
      if (k.add(a, b) != k.add(b, a)) {
        r.failures.push_back({"add-comm", "", -1, {a, b}});
        ++found;
      }
    }
  if (found >= cap) r.truncated = true;

  found = 0;
  for (int a = 0; a < m && found < cap; ++a) {
    ++r.checks_run;
    if (k.add(a, 0) != a || k.add(0, a) != a) {
      r.failures.push_back({"zero-identity", "", -1, {a}});
      ++found;
    }
  }
  if (found >= cap) r.truncated = true;

  found = 0;
  for (int a = 0; a < m && found < cap; ++a) {
    ++r.checks_run;
    if (k.add(a, k.neg(a)) != 0 || k.add(k.neg(a), a) != 0) {
      r.failures.push_back({"neg-inverse", "", -1, {a}});
      ++found;
    }
  }
  if (found >= cap) r.truncated = true;

  // Coordinatewise additivity of every extra op. Witness layout: the full
  // argument tuple with x sitting at `coordinate`, then y appended.
  for (const auto& [name, t] : k.ops()) {
    const int n = t.arity;
    std::vector<int> strides(n, 1);
    for (int i = n - 2; i >= 0; --i) strides[i] = strides[i + 1] * m;
    found = 0;
    for (int i = 0; i < n && found < cap; ++i) {
      std::vector<int> args(n, 0);
      std::size_t cell = 0;
      bool done = false;
      while (!done && found < cap) {
        const int x = args[i];
        const std::size_t base = cell - static_cast<std::size_t>(x) * strides[i];
        for (int y = 0; y < m && found < cap; ++y) {
          ++r.checks_run;
          const int sum_cell = t.table[base + static_cast<std::size_t>(k.add(x, y)) * strides[i]];
          const int split = k.add(t.table[cell], t.table[base + static_cast<std::size_t>(y) * strides[i]]);
          if (sum_cell != split) {
            AxiomFailure f{"op-additive", name, i, args};
            f.witness.push_back(y);
            r.failures.push_back(std::move(f));
            ++found;
          }
        }
        // odometer step, last coordinate fastest
        done = true;
        for (int j = n - 1; j >= 0; --j) {
          if (++args[j] < m) {
            cell += strides[j];
            done = false;
            break;
          }
          cell -= static_cast<std::size_t>(m - 1) * strides[j];
          args[j] = 0;
        }
      }
      if (found >= cap) r.truncated = true;
    }
  }
  return r;
}

int evaluate(const TermPtr& t, const FinitePolyring& k, const std::vector<int>& point) {
  if (!t) throw EvalError("empty term");
  switch (t->kind()) {
    case TermKind::Zero:
      return 0;
    case TermKind::Var: {
      const int i = t->var_index();
      if (i < 1 || static_cast<std::size_t>(i) > point.size()) {
        throw EvalError("term uses x" + std::to_string(i) + " but the point has " +
                        std::to_string(point.size()) + " coordinates");
      }
      const int v = point[i - 1];
      if (v < 0 || v >= k.size())
        throw EvalError("point coordinate out of carrier range: " + std::to_string(v));
      return v;
    }
    case TermKind::ConstElem: {
      const long long v = t->elem();
      if (v < 0 || v >= k.size())
        throw EvalError("element constant outside carrier: #" + std::to_string(v));
      return static_cast<int>(v);
    }
    case TermKind::ConstSym:
      throw EvalError("unresolved symbolic constant '" + t->name() + "'");
    case TermKind::Neg:
      return k.neg(evaluate(t->args()[0], k, point));
    case TermKind::Sum:
      return k.add(evaluate(t->args()[0], k, point), evaluate(t->args()[1], k, point));
    case TermKind::App: {
      std::vector<int> argv;
      argv.reserve(t->args().size());
      for (const auto& a : t->args()) argv.push_back(evaluate(a, k, point));
      return k.op(t->name(), argv);
    }
  }
  throw EvalError("unknown term node");
}

namespace {

// Independent-generator decomposition of the additive group: elements
// g_1..g_r with orders d_1..d_r such that every element is uniquely
// sum(c_i * g_i) with 0 <= c_i < d_i. Found by depth-first search over
// candidate generators in element order, so the result is deterministic.
struct AdditiveBasis {
  std::vector<int> gens;
  std::vector<int> orders;
  std::vector<std::vector<int>> coeff;  // element -> (c_1..c_r)
};

bool extend_basis(const FinitePolyring& k, std::vector<char>& span, int spanned,
                  AdditiveBasis& out) {
  const int m = k.size();
  if (spanned == m) return true;
  for (int g = 1; g < m; ++g) {
    if (span[g]) continue;
    const int ord = order_of(k, g);
    bool independent = true;
    {
      int acc = g;
      for (int c = 1; c < ord; ++c) {
        if (span[acc]) {
          independent = false;
          break;
        }
        acc = k.add(acc, g);
      }
    }
    if (!independent) continue;
    std::vector<char> next(m, 0);
    int count = 0;
    for (int s = 0; s < m; ++s) {
      if (!span[s]) continue;
      int t = s;
      for (int c = 0; c < ord; ++c) {
        if (!next[t]) {
          next[t] = 1;
          ++count;
        }
        t = k.add(t, g);
      }
    }
    if (count != spanned * ord) throw InvalidInput("add table is not an abelian group");
    out.gens.push_back(g);
    out.orders.push_back(ord);
    if (extend_basis(k, next, count, out)) return true;
    out.gens.pop_back();
    out.orders.pop_back();
  }
  return false;
}

AdditiveBasis additive_basis(const FinitePolyring& k) {
  AdditiveBasis b;
  const int m = k.size();
  std::vector<char> span(m, 0);
  span[0] = 1;
  if (m > 1 && !extend_basis(k, span, 1, b)) {
    throw InvalidInput("add table is not an abelian group: no generator decomposition exists");
  }
  const int r = static_cast<int>(b.gens.size());
  b.coeff.assign(m, {});
  std::vector<char> seen(m, 0);
  std::vector<int> c(r, 0);
  while (true) {
    int e = 0;
    for (int i = 0; i < r; ++i) e = k.add(e, k.scalar(c[i], b.gens[i]));
    if (seen[e]) throw InvalidInput("add table is not an abelian group: generator sums collide");
    seen[e] = 1;
    b.coeff[e] = c;
    int j = r - 1;
    for (; j >= 0; --j) {
      if (++c[j] < b.orders[j]) break;
      c[j] = 0;
    }
    if (j < 0) break;
  }
  for (int e = 0; e < m; ++e)
    if (!seen[e]) throw InvalidInput("add table is not an abelian group: decomposition misses elements");
  return b;
}

// Values a coordinatewise-additive op may take on one basis tuple: exactly
// those killed by the gcd of the tuple's generator orders.
std::vector<int> admissible_values(const FinitePolyring& k, const AdditiveBasis& b,
                                   const std::vector<int>& tuple) {
  long long g = 0;
  for (int i : tuple) g = std::gcd(g, static_cast<long long>(b.orders[i]));
  std::vector<int> vals;
  for (int v = 0; v < k.size(); ++v)
    if (k.scalar(g, v) == 0) vals.push_back(v);
  return vals;
}

std::vector<std::vector<int>> basis_tuples(int r, int arity) {
  std::vector<std::vector<int>> tuples;
  std::vector<int> t(arity, 0);
  while (true) {
    tuples.push_back(t);
    int j = arity - 1;
    for (; j >= 0; --j) {
      if (++t[j] < r) break;
      t[j] = 0;
    }
    if (j < 0) break;
  }
  return tuples;
}

// Multilinear extension of one assignment of basis-tuple values.
OpTable extend_assignment(const FinitePolyring& k, const AdditiveBasis& b, int arity,
                          const std::vector<std::vector<int>>& tuples,
                          const std::vector<int>& tau) {
  const int m = k.size();
  OpTable op;
  op.arity = arity;
  op.table.assign(checked_pow(static_cast<std::size_t>(m), arity, std::size_t(1) << 28,
                              "enumerated op table"),
                  0);
  std::vector<int> args(arity, 0);
  for (std::size_t cell = 0; cell < op.table.size(); ++cell) {
    int v = 0;
    for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
      if (tau[ti] == 0) continue;
      long long c = 1;
      for (int j = 0; j < arity && c != 0; ++j) c *= b.coeff[args[j]][tuples[ti][j]];
      if (c != 0) v = k.add(v, k.scalar(c, tau[ti]));
    }
    op.table[cell] = v;
    for (int j = arity - 1; j >= 0; --j) {
      if (++args[j] < m) break;
      args[j] = 0;
    }
  }
  return op;
}

}  // namespace

bool is_multiadditive(const FinitePolyring& group, const OpTable& t) {
  const int m = group.size();
  const int n = t.arity;
  std::vector<std::size_t> strides(n, 1);
  for (int i = n - 2; i >= 0; --i) strides[i] = strides[i + 1] * static_cast<std::size_t>(m);
  std::vector<int> args(n, 0);
  for (std::size_t cell = 0; cell < t.table.size();) {
    for (int i = 0; i < n; ++i) {
      const std::size_t base = cell - static_cast<std::size_t>(args[i]) * strides[i];
      for (int y = 0; y < m; ++y) {
        const int lhs = t.table[base + static_cast<std::size_t>(group.add(args[i], y)) * strides[i]];
        const int rhs = group.add(t.table[cell], t.table[base + static_cast<std::size_t>(y) * strides[i]]);
        if (lhs != rhs) return false;
      }
    }
    ++cell;
    for (int j = n - 1; j >= 0; --j) {
      if (++args[j] < m) break;
      args[j] = 0;
    }
  }
  return true;
}

EnumOpsResult enumerate_distributive_ops(const FinitePolyring& group, int arity,
                                         std::uint64_t cap, bool brute) {
  if (arity < 1) throw InvalidInput("arity must be at least 1");
  const int m = group.size();
  EnumOpsResult res;

  if (brute) {
    const std::size_t cells = checked_pow(static_cast<std::size_t>(m), arity,
                                          std::size_t(1) << 28, "op table");
    // refuse above 2^24 candidate tables
    double log2_candidates = static_cast<double>(cells) * std::log2(static_cast<double>(m));
    if (m > 1 && log2_candidates > 24.0) {
      throw InvalidInput("brute enumeration would scan more than 2^24 candidate tables; "
                         "use the structural mode");
    }
    OpTable t;
    t.arity = arity;
    t.table.assign(cells, 0);
    while (true) {
      if (is_multiadditive(group, t)) {
        ++res.total;
        if (res.ops.size() < cap) res.ops.push_back(t);
      }
      int j = static_cast<int>(cells) - 1;
      for (; j >= 0; --j) {
        if (++t.table[j] < m) break;
        t.table[j] = 0;
      }
      if (j < 0) break;
    }
    res.complete = res.total <= cap;
    std::sort(res.ops.begin(), res.ops.end());
    return res;
  }

  const AdditiveBasis b = additive_basis(group);
  const int r = static_cast<int>(b.gens.size());
  if (r == 0) {
    // one-element group: the unique op is constantly 0
    OpTable t;
    t.arity = arity;
    t.table.assign(1, 0);  // 1^arity cells
    res.total = 1;
    if (cap >= 1) res.ops.push_back(std::move(t));
    res.complete = cap >= 1;
    return res;
  }
  const auto tuples = basis_tuples(r, arity);
  std::vector<std::vector<int>> choices;
  choices.reserve(tuples.size());
  bool saturated = false;
  res.total = 1;
  for (const auto& tp : tuples) {
    choices.push_back(admissible_values(group, b, tp));
    const std::uint64_t s = choices.back().size();
    if (!saturated) {
      if (res.total > std::numeric_limits<std::uint64_t>::max() / s) {
        saturated = true;
        res.total = std::numeric_limits<std::uint64_t>::max();
      } else {
        res.total *= s;
      }
    }
  }
  // walk assignments in odometer order over the admissible lists
  std::vector<std::size_t> pick(tuples.size(), 0);
  std::vector<int> tau(tuples.size());
  std::uint64_t made = 0;
  while (made < cap) {
    for (std::size_t i = 0; i < tuples.size(); ++i) tau[i] = choices[i][pick[i]];
    OpTable op = extend_assignment(group, b, arity, tuples, tau);
    if (!is_multiadditive(group, op)) {
      throw InvariantViolation("basis-extended op fails coordinatewise additivity");
    }
    res.ops.push_back(std::move(op));
    ++made;
    int j = static_cast<int>(tuples.size()) - 1;
    for (; j >= 0; --j) {
      if (++pick[j] < choices[j].size()) break;
      pick[j] = 0;
    }
    if (j < 0) break;
  }
  res.complete = !saturated && made == res.total;
  std::sort(res.ops.begin(), res.ops.end());
  for (std::size_t i = 1; i < res.ops.size(); ++i) {
    if (res.ops[i] == res.ops[i - 1])
      throw InvariantViolation("distinct basis assignments produced equal op tables");
  }
  return res;
}

OpTable random_distributive_op(const FinitePolyring& group, int arity, SplitMix64& rng) {
  if (arity < 1) throw InvalidInput("arity must be at least 1");
  const AdditiveBasis b = additive_basis(group);
  const int r = static_cast<int>(b.gens.size());
  if (r == 0) {
    OpTable t;
    t.arity = arity;
    t.table.assign(1, 0);
    return t;
  }
  const auto tuples = basis_tuples(r, arity);
  std::vector<int> tau;
  tau.reserve(tuples.size());
  for (const auto& tp : tuples) {
    const auto vals = admissible_values(group, b, tp);
    tau.push_back(vals[rng.below(vals.size())]);
  }
  return extend_assignment(group, b, arity, tuples, tau);
}

FiniteGroupoid left_zero_groupoid(int n) {
  if (n < 1) throw InvalidInput("groupoid needs at least one element");
  FiniteGroupoid g;
  g.size = n;
  g.mul.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.mul[static_cast<std::size_t>(a) * n + b] = a;
  return g;
}

FiniteGroupoid right_zero_groupoid(int n) {
  if (n < 1) throw InvalidInput("groupoid needs at least one element");
  FiniteGroupoid g;
  g.size = n;
  g.mul.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.mul[static_cast<std::size_t>(a) * n + b] = b;
  return g;
}

FiniteGroupoid null_groupoid(int n) {
  if (n < 1) throw InvalidInput("groupoid needs at least one element");
  FiniteGroupoid g;
  g.size = n;
  g.mul.assign(static_cast<std::size_t>(n) * n, 0);
  return g;
}

FiniteGroupoid zm_mul_groupoid(int m) {
  if (m < 1) throw InvalidInput("modulus must be positive");
  FiniteGroupoid g;
  g.size = m;
  g.mul.resize(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) g.mul[static_cast<std::size_t>(a) * m + b] = (a * b) % m;
  return g;
}

std::size_t groupoid_ring_size(const FiniteGroupoid& g, int mod) {
  if (g.size < 1) throw InvalidInput("groupoid needs at least one element");
  if (mod < 2) throw InvalidInput("coefficient modulus must be at least 2");
  return checked_pow(static_cast<std::size_t>(mod), g.size, std::size_t(1) << 40,
                     "groupoid ring carrier");
}

std::size_t delta_index(const FiniteGroupoid& g, int mod, int element) {
  if (element < 0 || element >= g.size)
    throw InvalidInput("element outside the groupoid carrier: " + std::to_string(element));
  (void)groupoid_ring_size(g, mod);
  return checked_pow(static_cast<std::size_t>(mod), element, std::size_t(1) << 40,
                     "delta index");
}

FinitePolyring groupoid_ring(const FiniteGroupoid& g, int mod, int support_bound,
                             int size_limit) {
  if (support_bound < 0 || support_bound > g.size)
    throw InvalidInput("support bound exceeds the groupoid carrier");
  const std::size_t M = groupoid_ring_size(g, mod);
  if (M > static_cast<std::size_t>(size_limit)) {
    throw InvalidInput("groupoid ring would have " + std::to_string(M) +
                       " elements, over the limit of " + std::to_string(size_limit));
  }
  const int n = g.size;
  std::vector<std::size_t> pw(n + 1, 1);
  for (int j = 0; j < n; ++j) pw[j + 1] = pw[j] * static_cast<std::size_t>(mod);
  auto digit = [&](std::size_t e, int j) { return static_cast<int>((e / pw[j]) % mod); };

  std::vector<int> add(M * M), neg(M);
  OpTable conv;
  conv.arity = 2;
  conv.table.resize(M * M);
  std::vector<long long> acc(n);
  for (std::size_t a = 0; a < M; ++a) {
    std::size_t e = 0;
    for (int j = 0; j < n; ++j) e += pw[j] * static_cast<std::size_t>((mod - digit(a, j)) % mod);
    neg[a] = static_cast<int>(e);
    for (std::size_t b = 0; b < M; ++b) {
      e = 0;
      for (int j = 0; j < n; ++j)
        e += pw[j] * static_cast<std::size_t>((digit(a, j) + digit(b, j)) % mod);
      add[a * M + b] = static_cast<int>(e);

      std::fill(acc.begin(), acc.end(), 0);
      for (int s = 0; s < n; ++s) {
        const int fa = digit(a, s);
        if (fa == 0) continue;
        for (int t = 0; t < n; ++t) {
          const int hb = digit(b, t);
          if (hb == 0) continue;
          acc[g.at(s, t)] += static_cast<long long>(fa) * hb;
        }
      }
      e = 0;
      for (int j = 0; j < n; ++j) e += pw[j] * static_cast<std::size_t>(acc[j] % mod);
      conv.table[a * M + b] = static_cast<int>(e);
    }
  }
  std::map<std::string, OpTable> ops;
  ops["conv"] = std::move(conv);
  return FinitePolyring(static_cast<int>(M), std::move(add), std::move(neg), std::move(ops));
}

FinitePolyring direct_product(const std::vector<const FinitePolyring*>& factors) {
  if (factors.empty()) throw InvalidInput("product needs at least one factor");
  const Signature sig0 = factors[0]->signature();
  for (std::size_t i = 1; i < factors.size(); ++i) {
    if (factors[i]->signature().ops != sig0.ops)
      throw InvalidInput("product factors must share one signature");
  }
  const int nf = static_cast<int>(factors.size());
  std::size_t M = 1;
  for (const auto* f : factors) {
    if (M > (std::size_t(1) << 20) / static_cast<std::size_t>(f->size()))
      throw InvalidInput("product carrier would exceed 2^20 elements");
    M *= static_cast<std::size_t>(f->size());
  }
  // first factor most significant
  std::vector<std::size_t> strides(nf, 1);
  for (int j = nf - 2; j >= 0; --j)
    strides[j] = strides[j + 1] * static_cast<std::size_t>(factors[j + 1]->size());
  auto part = [&](std::size_t e, int j) {
    return static_cast<int>((e / strides[j]) % static_cast<std::size_t>(factors[j]->size()));
  };

  if (M > (std::size_t(1) << 13))
    throw InvalidInput("product add table would exceed 2^26 entries");
  std::vector<int> add(M * M), neg(M);
  for (std::size_t a = 0; a < M; ++a) {
    std::size_t e = 0;
    for (int j = 0; j < nf; ++j)
      e += strides[j] * static_cast<std::size_t>(factors[j]->neg(part(a, j)));
    neg[a] = static_cast<int>(e);
    for (std::size_t b = 0; b < M; ++b) {
      e = 0;
      for (int j = 0; j < nf; ++j)
        e += strides[j] * static_cast<std::size_t>(factors[j]->add(part(a, j), part(b, j)));
      add[a * M + b] = static_cast<int>(e);
    }
  }

  std::map<std::string, OpTable> ops;
  for (const auto& [name, arity] : sig0.ops) {
    OpTable t;
    t.arity = arity;
    t.table.resize(checked_pow(M, arity, std::size_t(1) << 26,
                               ("product op table for '" + name + "'").c_str()));
    std::vector<std::size_t> args(arity, 0);
    std::vector<int> sub(arity);
    for (std::size_t cell = 0; cell < t.table.size(); ++cell) {
      std::size_t e = 0;
      for (int j = 0; j < nf; ++j) {
        for (int i = 0; i < arity; ++i) sub[i] = part(args[i], j);
        e += strides[j] * static_cast<std::size_t>(factors[j]->op(name, sub));
      }
      t.table[cell] = static_cast<int>(e);
      for (int i = arity - 1; i >= 0; --i) {
        if (++args[i] < M) break;
        args[i] = 0;
      }
    }
    ops[name] = std::move(t);
  }
  return FinitePolyring(static_cast<int>(M), std::move(add), std::move(neg), std::move(ops));
}

namespace {

// Collapses fully-ground subtrees through the instance tables. Returns
// nullopt when the subtree evaluates to 0: a zero argument annihilates the
// enclosing op, and a zero monomial body contributes nothing.
std::optional<TermPtr> fold_ground(const TermPtr& t, const FinitePolyring& k) {
  switch (t->kind()) {
    case TermKind::Var:
      return t;
    case TermKind::ConstElem: {
      const long long v = t->elem();
      if (v < 0 || v >= k.size())
        throw EvalError("element constant outside carrier: #" + std::to_string(v));
      if (v == 0) return std::nullopt;
      return t;
    }
    case TermKind::ConstSym:
      throw EvalError("unresolved symbolic constant '" + t->name() + "' cannot be folded");
    case TermKind::App: {
      std::vector<TermPtr> folded;
      folded.reserve(t->args().size());
      bool ground = true;
      for (const auto& a : t->args()) {
        auto f = fold_ground(a, k);
        if (!f) return std::nullopt;
        ground = ground && (*f)->kind() == TermKind::ConstElem;
        folded.push_back(std::move(*f));
      }
      if (ground) {
        std::vector<int> argv;
        argv.reserve(folded.size());
        for (const auto& a : folded) argv.push_back(static_cast<int>(a->elem()));
        const int v = k.op(t->name(), argv);
        if (v == 0) return std::nullopt;
        return Term::elem_const(v);
      }
      return Term::app(t->name(), std::move(folded));
    }
    default:
      throw InvariantViolation("monomial body contains a sum, negation, or zero node");
  }
}

}  // namespace

Polynomial shift_decompose(const TermPtr& f, int var_count, const FinitePolyring& k,
                           const std::vector<int>& point) {
  if (var_count < 1) throw InvalidInput("variable count must be at least 1");
  if (static_cast<int>(point.size()) != var_count)
    throw InvalidInput("shift point has " + std::to_string(point.size()) +
                       " coordinates, expected " + std::to_string(var_count));
  for (int v : point) {
    if (v < 0 || v >= k.size())
      throw InvalidInput("shift point coordinate outside carrier: " + std::to_string(v));
  }
  if (max_var_index(*f) > var_count)
    throw InvalidInput("term uses a variable beyond x" + std::to_string(var_count));

  const Polynomial fx = normalize(f);
  std::vector<int> all_vars(var_count);
  std::iota(all_vars.begin(), all_vars.end(), 1);
  const Degree d = degree(fx, all_vars);
  if (d.value == 0)
    throw InvalidInput("degree-zero term: shifting leaves no lower-degree remainder");

  std::map<int, TermPtr> shift;
  for (int i = 1; i <= var_count; ++i)
    shift[i] = Term::sum(Term::var(i), Term::elem_const(point[i - 1]));
  const Polynomial h0 = normalize(substitute(f, shift)) - fx;

  std::vector<SignedMonomial> kept;
  int ground_acc = 0;
  for (const auto& sm : h0.monomials()) {
    auto body = fold_ground(sm.body, k);
    if (!body) continue;
    if ((*body)->kind() == TermKind::ConstElem) {
      const int v = static_cast<int>((*body)->elem());
      ground_acc = k.add(ground_acc, sm.sign > 0 ? v : k.neg(v));
    } else {
      kept.push_back({sm.sign, std::move(*body)});
    }
  }
  if (ground_acc != 0) kept.push_back({1, Term::elem_const(ground_acc)});
  Polynomial h = Polynomial::from_monomials(std::move(kept));
  if (degree(h, all_vars).value >= d.value)
    throw InvariantViolation("shift remainder does not drop the degree");
  return h;
}

}  // namespace polyring
