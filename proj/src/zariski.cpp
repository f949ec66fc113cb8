#include "polyring/zariski.hpp"

#include <chrono>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "polyring/errors.hpp"
#include "polyring/rng.hpp"

namespace polyring {

namespace {

constexpr std::size_t kMaxSpacePoints = std::size_t(1) << 20;

std::size_t pow_guarded(std::size_t base, int exp, std::size_t limit, const char* what) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > limit / base) throw InvalidInput(std::string(what) + " is too large");
    r *= base;
  }
  return r;
}

std::vector<int> point_args(std::size_t p, int m, int n) {
  std::vector<int> args(n);
  for (int i = n - 1; i >= 0; --i) {
    args[i] = int(p % std::size_t(m));
    p /= std::size_t(m);
  }
  return args;
}

}  // namespace

std::size_t space_size(const FinitePolyring& k, int n) {
  if (n < 1) throw InvalidInput("need at least one coordinate");
  return pow_guarded(std::size_t(k.size()), n, kMaxSpacePoints, "point space");
}

TermFunction tabulate(const TermPtr& t, const FinitePolyring& k, int n) {
  std::size_t total = space_size(k, n);
  TermFunction f;
  f.provenance = t;
  f.table.resize(total);
  for (std::size_t p = 0; p < total; ++p)
    f.table[p] = evaluate(t, k, point_args(p, k.size(), n));
  return f;
}

Clone term_clone(const FinitePolyring& k, int n, std::size_t cap) {
  std::size_t total = space_size(k, n);
  if (cap == 0) throw InvalidInput("clone cap must be positive");

  Clone clone;
  clone.carrier = k.size();
  clone.vars = n;

  std::set<std::vector<int>> seen;
  std::vector<TermFunction> fns;
  bool room = true;

  auto push = [&](std::vector<int> tbl, TermPtr prov) {
    if (!room) return;
    if (!seen.insert(tbl).second) return;
    if (fns.size() >= cap) {
      room = false;
      clone.complete = false;
      return;
    }
    fns.push_back(TermFunction{std::move(tbl), std::move(prov)});
  };

  push(std::vector<int>(total, 0), Term::zero());
  for (int c = 0; c < k.size(); ++c)
    push(std::vector<int>(total, c), Term::elem_const(c));
  for (int i = 1; i <= n; ++i) {
    std::vector<int> tbl(total);
    for (std::size_t p = 0; p < total; ++p) tbl[p] = point_args(p, k.size(), n)[i - 1];
    push(std::move(tbl), Term::var(i));
  }

  // Fixpoint under pointwise +, -, and each instance op. Each pass scans all
  // combinations of the functions present when the pass started; a pass that
  // adds nothing ends the loop.
  while (room) {
    std::size_t before = fns.size();

    for (std::size_t i = 0; i < before && room; ++i) {
      std::vector<int> tbl(total);
      for (std::size_t p = 0; p < total; ++p) tbl[p] = k.neg(fns[i].table[p]);
      push(std::move(tbl), nullptr);
    }
    for (std::size_t i = 0; i < before && room; ++i)
      for (std::size_t j = 0; j <= i && room; ++j) {
        std::vector<int> tbl(total);
        for (std::size_t p = 0; p < total; ++p)
          tbl[p] = k.add(fns[i].table[p], fns[j].table[p]);
        push(std::move(tbl), nullptr);
      }
    for (const auto& [name, op] : k.ops()) {
      if (!room) break;
      std::vector<std::size_t> idx(op.arity, 0);
      bool done = before == 0;
      while (!done && room) {
        std::vector<int> tbl(total);
        std::vector<int> args(op.arity);
        for (std::size_t p = 0; p < total; ++p) {
          for (int a = 0; a < op.arity; ++a) args[a] = fns[idx[a]].table[p];
          tbl[p] = k.op(name, args);
        }
        push(std::move(tbl), nullptr);
        int pos = op.arity - 1;
        while (pos >= 0 && ++idx[pos] == before) idx[pos--] = 0;
        done = pos < 0;
      }
    }

    if (fns.size() == before) break;
  }

  std::sort(fns.begin(), fns.end());
  clone.functions = std::move(fns);
  return clone;
}

PointSet root_set(const TermFunction& f, std::size_t points) {
  if (f.table.size() != points) throw InvalidInput("function table does not match the space");
  PointSet r(points);
  for (std::size_t p = 0; p < points; ++p)
    if (f.table[p] == 0) r.set(p);
  return r;
}

FiniteSpace FiniteSpace::from_root_sets(std::size_t points, std::vector<PointSet> roots,
                                        bool complete_family) {
  for (const PointSet& r : roots)
    if (r.universe() != points) throw InvalidInput("root set does not match the space size");
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  FiniteSpace s;
  s.points_ = points;
  s.roots_ = std::move(roots);
  s.complete_family_ = complete_family;
  s.build_point_closures();
  return s;
}

FiniteSpace FiniteSpace::from_clone(const Clone& c, const FinitePolyring& k) {
  std::size_t points = space_size(k, c.vars);
  std::vector<PointSet> roots;
  roots.reserve(c.functions.size());
  for (const TermFunction& f : c.functions) roots.push_back(root_set(f, points));
  return from_root_sets(points, std::move(roots), c.complete);
}

FiniteSpace FiniteSpace::from_closed_family(std::size_t points, std::vector<PointSet> family) {
  return from_root_sets(points, std::move(family), true);
}

void FiniteSpace::build_point_closures() {
  PointSet full(points_, true);
  cl_.assign(points_, PointSet(points_));
  for (std::size_t p = 0; p < points_; ++p) {
    PointSet acc = full;
    bool hit = false;
    for (const PointSet& r : roots_)
      if (r.test(p)) {
        acc &= r;
        hit = true;
      }
    cl_[p] = hit ? acc : full;
  }
}

PointSet FiniteSpace::closure(const PointSet& s) const {
  if (s.universe() != points_) throw InvalidInput("subset does not match the space size");
  PointSet acc(points_);
  for (std::size_t p : s.members()) acc |= cl_[p];
  return acc;
}

PointSet FiniteSpace::interior(const PointSet& s) const {
  return closure(s.complement()).complement();
}

PointSet FiniteSpace::min_open(int x) const {
  if (x < 0 || std::size_t(x) >= points_) throw InvalidInput("point out of range");
  PointSet r(points_);
  for (std::size_t p = 0; p < points_; ++p)
    if (cl_[p].test(std::size_t(x))) r.set(p);
  return r;
}

PointSet closure_in_family(std::size_t points, const std::vector<PointSet>& family,
                           const PointSet& s) {
  if (s.universe() != points) throw InvalidInput("subset does not match the space size");
  PointSet acc(points, true);
  for (const PointSet& b : family) {
    if (b.universe() != points) throw InvalidInput("family member does not match the space");
    if (s.is_subset_of(b)) acc &= b;
  }
  return acc;
}

BaseReport closed_base(const FiniteSpace& space, std::uint64_t union_arity, std::size_t cap) {
  if (union_arity == 0) union_arity = space.size();
  if (cap == 0) throw InvalidInput("base cap must be positive");

  BaseReport rep;
  std::set<PointSet> all;
  std::vector<PointSet> level;
  for (const PointSet& r : space.roots())
    if (all.insert(r).second) level.push_back(r);

  for (std::uint64_t k = 2; k <= union_arity && !rep.capped; ++k) {
    std::vector<PointSet> next;
    for (const PointSet& u : level) {
      for (const PointSet& r : space.roots()) {
        if (all.size() >= cap) {
          rep.capped = true;
          break;
        }
        PointSet w = u;
        w |= r;
        if (all.insert(w).second) next.push_back(w);
      }
      if (rep.capped) break;
    }
    if (next.empty() && !rep.capped) {
      rep.saturated = true;
      break;
    }
    level = std::move(next);
  }
  if (!rep.capped && !rep.saturated && union_arity >= space.size()) {
    // a union of more than |space| base sets repeats one of them
    rep.saturated = level.empty();
  }

  rep.sets.assign(all.begin(), all.end());
  return rep;
}

SpaceAnalysis analyze(const FiniteSpace& space) {
  std::size_t n = space.size();
  SpaceAnalysis a;

  a.discrete = true;
  for (std::size_t p = 0; p < n; ++p) {
    PointSet single(n);
    single.set(p);
    if (!(space.point_closure(int(p)) == single)) {
      a.discrete = false;
      break;
    }
  }

  a.psi.resize(n);
  a.psi_space = 1;
  for (std::size_t p = 0; p < n; ++p) {
    PointSet single(n);
    single.set(p);
    bool iso = space.min_open(int(p)) == single;
    if (iso) a.isolated.push_back(int(p));
    a.psi[p] = iso ? 1 : -1;
    if (!iso) a.psi_space = -1;
  }

  std::vector<std::size_t> parent(n);
  for (std::size_t p = 0; p < n; ++p) parent[p] = p;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q : space.point_closure(int(p)).members()) {
      std::size_t a1 = find(p), b1 = find(q);
      if (a1 != b1) parent[std::max(a1, b1)] = std::min(a1, b1);
    }
  std::map<std::size_t, std::vector<int>> comps;
  for (std::size_t p = 0; p < n; ++p) comps[find(p)].push_back(int(p));
  for (auto& [root, members] : comps) a.components.push_back(std::move(members));

  a.ind = ind_dimension(space);
  return a;
}

SubsetAnalysis analyze_subset(const FiniteSpace& space, const PointSet& s) {
  SubsetAnalysis r;
  r.closure = space.closure(s);
  r.interior = space.interior(s);
  r.is_closed = r.closure == s;
  r.nowhere_dense = space.interior(r.closure).empty();
  return r;
}

namespace {

int ind_rec(const FiniteSpace& space, const PointSet& sub, std::map<PointSet, int>& memo) {
  if (sub.empty()) return -1;
  auto it = memo.find(sub);
  if (it != memo.end()) return it->second;

  int best = -1;
  for (std::size_t x : sub.members()) {
    PointSet u = space.min_open(int(x));
    u &= sub;
    PointSet cl(sub.universe());
    for (std::size_t p : u.members()) cl |= space.point_closure(int(p));
    cl &= sub;
    PointSet boundary = cl;
    boundary &= u.complement();
    best = std::max(best, ind_rec(space, boundary, memo));
  }
  int r = best + 1;
  memo.emplace(sub, r);
  return r;
}

}  // namespace

int ind_dimension(const FiniteSpace& space) {
  PointSet full(space.size(), true);
  std::map<PointSet, int> memo;
  return ind_rec(space, full, memo);
}

CantorReport verify_cantor_example(int m, int crosscheck_limit) {
  if (m < 1 || m > 8) throw InvalidInput("component count must be between 1 and 8");

  std::vector<FinitePolyring> factors;
  factors.reserve(std::size_t(m));
  for (int i = 0; i < m; ++i) factors.push_back(zm_ring(2));
  std::vector<const FinitePolyring*> ptrs;
  for (const FinitePolyring& f : factors) ptrs.push_back(&f);
  FinitePolyring K = direct_product(ptrs);

  int size = K.size();  // 2^m, component j of e is bit (m-1-j)
  const std::size_t N = std::size_t(size);
  CantorReport rep;
  rep.m = m;
  rep.carrier = std::size_t(size);

  auto mul = [&](int a, int b) { return K.op("m", {a, b}); };

  rep.characterizations_hold = true;
  std::vector<int> valid;
  for (int a = 0; a < size; ++a) {
    PointSet s1(N), s2(N);
    PointSet p1(N), p2(N);
    for (int b = 0; b < size; ++b) {
      if (mul(a, b) == 0) s1.set(std::size_t(b));
      if (K.add(mul(a, b), a) == 0) s2.set(std::size_t(b));
      if ((b & a) == 0) p1.set(std::size_t(b));
      if ((b & a) == a) p2.set(std::size_t(b));
    }
    if (!(s1 == p1 && s2 == p2)) rep.characterizations_hold = false;
    if (s2 == s1.complement()) valid.push_back(a);
  }
  rep.complement_valid_as = valid;

  std::vector<int> weight_one;
  for (int a = 0; a < size; ++a)
    if (__builtin_popcount(unsigned(a)) == 1) weight_one.push_back(a);
  rep.complement_on_weight_one =
      std::includes(valid.begin(), valid.end(), weight_one.begin(), weight_one.end());
  rep.complement_exactly_weight_one = valid == weight_one;

  rep.cylinders_algebraic = true;
  for (int j = 0; j < m; ++j) {
    int ej = 1 << (m - 1 - j);
    PointSet zero_cyl(N), one_cyl(N);
    PointSet zero_root(N), one_root(N);
    for (int b = 0; b < size; ++b) {
      bool bit = (b >> (m - 1 - j)) & 1;
      if (!bit) zero_cyl.set(std::size_t(b));
      if (bit) one_cyl.set(std::size_t(b));
      if (mul(ej, b) == 0) zero_root.set(std::size_t(b));
      if (K.add(mul(ej, b), ej) == 0) one_root.set(std::size_t(b));
    }
    if (!(zero_cyl == zero_root && one_cyl == one_root)) rep.cylinders_algebraic = false;
  }

  rep.singletons_algebraic = true;
  for (int c = 0; c < size; ++c) {
    PointSet root(N);
    for (int b = 0; b < size; ++b)
      if (K.add(b, c) == 0) root.set(std::size_t(b));
    PointSet single(N);
    single.set(std::size_t(c));
    if (!(root == single)) rep.singletons_algebraic = false;
  }

  BigInt count = BigInt(1) << (1 << m);
  rep.algebraic_count = count.str();

  if (m <= crosscheck_limit) {
    Clone c = term_clone(K, 1, 1 << 18);
    FiniteSpace space = FiniteSpace::from_clone(c, K);
    BaseReport base = closed_base(space, 0, std::size_t(1) << 20);
    if (!base.saturated)
      throw InvariantViolation("union closure of the root sets did not saturate");
    BigInt got = BigInt(base.sets.size());
    if (got != count)
      throw InvariantViolation("materialized algebraic-set count disagrees with 2^(2^m)");
    rep.base_crosschecked = true;
  }
  return rep;
}

bool AvoidSet::contains(const SymbolicPolyring& K, const std::vector<BigVec>& pt) const {
  switch (kind) {
    case Kind::Empty:
      return false;
    case Kind::Graph: {
      if (pt.size() < 2) throw InvalidInput("graph avoid set needs at least two axes");
      std::vector<BigVec> leading(pt.begin(), pt.end() - 1);
      BigVec image = K.evaluate(graph_term, leading);
      return image == pt.back();
    }
    case Kind::Points:
      for (const auto& q : points)
        if (q == pt) return true;
      return false;
  }
  return false;
}

namespace {

BigVec pool_value(const SymbolicPolyring& K, std::size_t t) {
  long long v = 0;
  long long i = static_cast<long long>(t);
  if (t > 0) v = (t % 2 == 1) ? (i + 1) / 2 : -(i / 2);
  return BigVec(std::size_t(K.dimension()), BigInt(v));
}

std::vector<BigVec> fs_values(const SymbolicPolyring& K, const std::vector<BigVec>& seq) {
  std::set<BigVec> out;
  std::size_t subsets = (std::size_t(1) << seq.size()) - 1;
  for (std::size_t mask = 1; mask <= subsets; ++mask) {
    BigVec acc = K.zero();
    for (std::size_t i = 0; i < seq.size(); ++i)
      if (mask & (std::size_t(1) << i)) acc = K.add(acc, seq[i]);
    out.insert(acc);
  }
  return {out.begin(), out.end()};
}

bool is_zero_vec(const BigVec& v) {
  for (const BigInt& x : v)
    if (x != 0) return false;
  return true;
}

struct GridScan {
  int witness = -1;       // first term vanishing on the whole grid, if the grid avoids A
  bool hit_avoid = false;  // some grid point lies in A
  bool saw_avoid_point = false;
  std::vector<bool> escape;  // per term: saw a root point outside A
};

GridScan scan_grid(const SymbolicPolyring& K, const std::vector<TermPtr>& terms,
                   const AvoidSet& avoid, const std::vector<std::vector<BigVec>>& axes) {
  GridScan r;
  r.escape.assign(terms.size(), false);
  std::vector<bool> vanishes(terms.size(), true);

  std::vector<std::size_t> idx(axes.size(), 0);
  bool done = false;
  while (!done) {
    std::vector<BigVec> pt(axes.size());
    for (std::size_t a = 0; a < axes.size(); ++a) pt[a] = axes[a][idx[a]];
    bool in_a = avoid.contains(K, pt);
    if (in_a) {
      r.hit_avoid = true;
      r.saw_avoid_point = true;
    }
    for (std::size_t f = 0; f < terms.size(); ++f) {
      bool zero = is_zero_vec(K.evaluate(terms[f], pt));
      if (!zero) vanishes[f] = false;
      if (zero && !in_a) r.escape[f] = true;
    }
    int pos = int(axes.size()) - 1;
    while (pos >= 0 && ++idx[std::size_t(pos)] == axes[std::size_t(pos)].size()) {
      idx[std::size_t(pos)] = 0;
      --pos;
    }
    done = pos < 0;
  }

  if (!r.hit_avoid)
    for (std::size_t f = 0; f < terms.size(); ++f)
      if (vanishes[f]) {
        r.witness = int(f);
        break;
      }
  return r;
}

std::uint64_t combinations(std::size_t pool, std::size_t pick) {
  BigInt num = 1, den = 1;
  for (std::size_t i = 0; i < pick; ++i) {
    num *= BigInt(pool - i);
    den *= BigInt(i + 1);
  }
  BigInt c = num / den;
  if (c > BigInt(std::uint64_t(1) << 62)) return std::uint64_t(1) << 62;
  return c.convert_to<std::uint64_t>();
}

}  // namespace

CertificateSearch nowhere_dense_certificate(const SymbolicPolyring& K,
                                            const std::vector<TermPtr>& terms,
                                            const AvoidSet& avoid, int n, int degree_bound,
                                            int tail_len, std::uint64_t node_budget,
                                            std::uint64_t seed, std::uint64_t budget_ms) {
  if (terms.empty()) throw InvalidInput("need at least one term");
  if (n < 1) throw InvalidInput("need at least one leading axis");
  if (degree_bound < 1) throw InvalidInput("degree bound must be at least 1");
  if (tail_len < 1) throw InvalidInput("tail length must be at least 1");
  for (const TermPtr& t : terms)
    if (max_var_index(*t) > n + 1)
      throw InvalidInput("terms may only use x1..x" + std::to_string(n + 1));
  if (node_budget == 0) node_budget = 20000;

  std::vector<std::size_t> lens(std::size_t(n), std::size_t(degree_bound) + 1);
  lens.push_back(std::size_t(tail_len));

  double grid_cells = 1.0;
  for (std::size_t l : lens) grid_cells *= double((std::size_t(1) << l) - 1);
  if (grid_cells > 200000.0) throw InvalidInput("per-candidate grid is too large");

  CertificateSearch out;
  std::vector<bool> never_escaped(terms.size(), true);
  bool saw_avoid = false;

  std::chrono::steady_clock::time_point stop;
  bool timed = budget_ms > 0;
  if (timed) stop = std::chrono::steady_clock::now() + std::chrono::milliseconds(budget_ms);
  auto out_of_time = [&] { return timed && std::chrono::steady_clock::now() > stop; };

  auto try_candidate = [&](const std::vector<std::vector<BigVec>>& seqs) -> bool {
    ++out.candidates;
    std::vector<std::vector<BigVec>> axes;
    axes.reserve(seqs.size());
    for (const auto& s : seqs) axes.push_back(fs_values(K, s));
    GridScan scan = scan_grid(K, terms, avoid, axes);
    saw_avoid = saw_avoid || scan.saw_avoid_point;
    for (std::size_t f = 0; f < terms.size(); ++f)
      if (scan.escape[f]) never_escaped[f] = false;
    if (scan.witness < 0) return false;

    BigVec at_zero = K.evaluate(terms[std::size_t(scan.witness)],
                                std::vector<BigVec>(lens.size(), K.zero()));
    if (!is_zero_vec(at_zero))
      throw InvariantViolation(
          "term vanishes on a product of finite-sums sets but not at zero");

    Certificate c;
    c.dimension = K.dimension();
    c.instance_ops = K.ops();
    for (const TermPtr& t : terms) c.term_texts.push_back(to_string(t));
    c.n = n;
    c.degree_bound = degree_bound;
    c.tail_len = tail_len;
    c.sequences = seqs;
    c.witness_term = scan.witness;
    c.avoid = avoid;
    out.certificate = std::move(c);
    return true;
  };

  // Systematic phase: per axis, strictly increasing pool-index tuples in
  // lexicographic order over the whole assignment.
  std::size_t pool = *std::max_element(lens.begin(), lens.end()) + 8;
  std::uint64_t systematic = 1;
  for (std::size_t l : lens) {
    std::uint64_t c = combinations(pool, l);
    systematic = (c != 0 && systematic > node_budget / c) ? node_budget + 1 : systematic * c;
  }
  if (systematic > node_budget) systematic = node_budget;

  std::vector<std::vector<std::vector<std::size_t>>> axis_combos(lens.size());
  for (std::size_t a = 0; a < lens.size(); ++a) {
    std::vector<std::size_t> combo(lens[a]);
    for (std::size_t i = 0; i < lens[a]; ++i) combo[i] = i;
    while (axis_combos[a].size() <= node_budget) {
      axis_combos[a].push_back(combo);
      int pos = int(lens[a]) - 1;
      while (pos >= 0 && combo[std::size_t(pos)] == pool - (lens[a] - std::size_t(pos)))
        --pos;
      if (pos < 0) break;
      ++combo[std::size_t(pos)];
      for (std::size_t i = std::size_t(pos) + 1; i < lens[a]; ++i)
        combo[i] = combo[i - 1] + 1;
    }
  }

  std::vector<std::size_t> pick(lens.size(), 0);
  bool done = false;
  while (!done && out.candidates < systematic && !out_of_time()) {
    std::vector<std::vector<BigVec>> seqs(lens.size());
    for (std::size_t a = 0; a < lens.size(); ++a)
      for (std::size_t i : axis_combos[a][pick[a]]) seqs[a].push_back(pool_value(K, i));
    if (try_candidate(seqs)) return out;
    int pos = int(lens.size()) - 1;
    while (pos >= 0 && ++pick[std::size_t(pos)] == axis_combos[std::size_t(pos)].size()) {
      pick[std::size_t(pos)] = 0;
      --pos;
    }
    done = pos < 0;
  }

  // Randomized phase under the remaining budget, one stream per trial.
  constexpr std::size_t kRandomPool = 64;
  std::uint64_t trial = 0;
  while (out.candidates < node_budget && !out_of_time()) {
    SplitMix64 rng(mix_seed(seed, ++trial));
    std::vector<std::vector<BigVec>> seqs(lens.size());
    for (std::size_t a = 0; a < lens.size(); ++a) {
      std::set<std::size_t> got;
      while (got.size() < lens[a]) got.insert(std::size_t(rng.below(kRandomPool)));
      for (std::size_t i : got) seqs[a].push_back(pool_value(K, i));
    }
    if (try_candidate(seqs)) return out;
  }

  out.budget_exhausted = true;
  if (saw_avoid) {
    bool all_trapped = true;
    for (bool esc : never_escaped)
      if (!esc) all_trapped = false;
    out.cover_too_tight = all_trapped;
  }
  return out;
}

void validate_cover_window(const SymbolicPolyring& K, const std::vector<TermPtr>& terms,
                           const AvoidSet& avoid, int n, long long radius) {
  if (radius < 0) throw InvalidInput("window radius must be non-negative");
  int axes = n + 1;
  long long width = 2 * radius + 1;
  double cells = 1.0;
  for (int i = 0; i < axes; ++i) cells *= double(width);
  if (cells > 2e6) throw InvalidInput("cover window is too large");

  // For d > 1, scans the diagonal embeddings of the window; a reported gap is
  // a genuine point either way.
  std::vector<long long> v(std::size_t(axes), -radius);
  bool done = false;
  while (!done) {
    std::vector<BigVec> pt;
    pt.reserve(std::size_t(axes));
    for (long long x : v) pt.push_back(BigVec(std::size_t(K.dimension()), BigInt(x)));
    bool covered = avoid.contains(K, pt);
    for (std::size_t f = 0; !covered && f < terms.size(); ++f)
      covered = is_zero_vec(K.evaluate(terms[f], pt));
    if (!covered) {
      std::ostringstream os;
      os << "window point (";
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
      os << ") lies in no root set and outside the avoid set";
      throw InvalidInput(os.str());
    }
    int pos = axes - 1;
    while (pos >= 0 && v[std::size_t(pos)] == radius) {
      v[std::size_t(pos)] = -radius;
      --pos;
    }
    if (pos < 0)
      done = true;
    else
      ++v[std::size_t(pos)];
  }
}

bool verify_certificate(const Certificate& c, std::string* why) {
  auto fail = [&](const char* reason) {
    if (why) *why = reason;
    return false;
  };

  SymbolicPolyring K(c.dimension, c.instance_ops);
  if (c.n < 1 || c.degree_bound < 1 || c.tail_len < 1)
    throw InvalidInput("certificate shape fields must be positive");
  if (c.sequences.size() != std::size_t(c.n) + 1)
    throw InvalidInput("certificate must carry one sequence per axis");
  for (int a = 0; a < c.n; ++a)
    if (c.sequences[std::size_t(a)].size() != std::size_t(c.degree_bound) + 1)
      throw InvalidInput("leading sequence has the wrong length");
  if (c.sequences[std::size_t(c.n)].size() != std::size_t(c.tail_len))
    throw InvalidInput("tail sequence has the wrong length");
  for (const auto& seq : c.sequences) {
    for (const BigVec& v : seq)
      if (v.size() != std::size_t(c.dimension))
        throw InvalidInput("sequence element has the wrong dimension");
    std::set<BigVec> uniq(seq.begin(), seq.end());
    if (uniq.size() != seq.size()) throw InvalidInput("sequence elements must be distinct");
  }
  if (c.term_texts.empty() || c.witness_term < 0 ||
      std::size_t(c.witness_term) >= c.term_texts.size())
    throw InvalidInput("witness index out of range");

  std::vector<TermPtr> terms;
  for (const std::string& text : c.term_texts)
    terms.push_back(parse_term(text, K.signature(), c.n + 1));
  if (c.avoid.kind == AvoidSet::Kind::Graph && !c.avoid.graph_term)
    throw InvalidInput("graph avoid set needs its term");

  std::vector<std::vector<BigVec>> axes;
  for (const auto& seq : c.sequences) axes.push_back(fs_values(K, seq));

  const TermPtr& w = terms[std::size_t(c.witness_term)];
  std::vector<std::size_t> idx(axes.size(), 0);
  bool done = false;
  while (!done) {
    std::vector<BigVec> pt(axes.size());
    for (std::size_t a = 0; a < axes.size(); ++a) pt[a] = axes[a][idx[a]];
    if (c.avoid.contains(K, pt)) return fail("a grid point lies inside the avoid set");
    if (!is_zero_vec(K.evaluate(w, pt)))
      return fail("the witness term does not vanish on the grid");
    int pos = int(axes.size()) - 1;
    while (pos >= 0 && ++idx[std::size_t(pos)] == axes[std::size_t(pos)].size()) {
      idx[std::size_t(pos)] = 0;
      --pos;
    }
    done = pos < 0;
  }

  BigVec at_zero = K.evaluate(w, std::vector<BigVec>(axes.size(), K.zero()));
  if (!is_zero_vec(at_zero)) return fail("the witness term does not vanish at zero");
  return true;
}

ParabolaReport parabola_density_check(long long coeff_bound, long long window_radius) {
  if (coeff_bound < 1) throw InvalidInput("coefficient bound must be at least 1");
  if (window_radius < 4) throw InvalidInput("window must contain the three sample points");
  if (coeff_bound > 64 || window_radius > 64) throw InvalidInput("bounds are desk-scale only");

  const long long px[3] = {0, 1, 2};
  const long long py[3] = {0, 1, 4};

  // rows (x_i, y_i, 1) acting on coefficients (k, m, c)
  BigInt a(px[0]), b(py[0]), c1(1);
  BigInt d(px[1]), e(py[1]), f(1);
  BigInt g(px[2]), h(py[2]), i(1);
  BigInt det = a * (e * i - f * h) - b * (d * i - f * g) + c1 * (d * h - e * g);

  ParabolaReport rep;
  rep.determinant = det.str();
  rep.only_trivial = det != 0;
  rep.coeff_bound = coeff_bound;
  rep.window_radius = window_radius;

  long long width = 2 * window_radius + 1;
  std::vector<bool> in_closure(std::size_t(width * width), true);

  rep.trivial_in_box = true;
  for (long long k = -coeff_bound; k <= coeff_bound; ++k)
    for (long long m = -coeff_bound; m <= coeff_bound; ++m)
      for (long long c = -coeff_bound; c <= coeff_bound; ++c) {
        if (k == 0 && m == 0 && c == 0) continue;
        bool vanishes = true;
        for (int t = 0; t < 3; ++t)
          if (k * px[t] + m * py[t] + c != 0) vanishes = false;
        if (!vanishes) continue;
        rep.trivial_in_box = false;
        for (long long x = -window_radius; x <= window_radius; ++x)
          for (long long y = -window_radius; y <= window_radius; ++y)
            if (k * x + m * y + c != 0)
              in_closure[std::size_t((x + window_radius) * width + (y + window_radius))] =
                  false;
      }

  rep.window_closure_full = true;
  for (bool v : in_closure)
    if (!v) rep.window_closure_full = false;
  return rep;
}

}  // namespace polyring
