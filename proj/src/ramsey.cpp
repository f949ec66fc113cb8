#include "polyring/ramsey.hpp"

#include <chrono>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "polyring/errors.hpp"
#include "polyring/parallel.hpp"
#include "polyring/rng.hpp"

namespace polyring {

std::vector<BigInt> fs_set(const std::vector<BigInt>& seq, const std::optional<BigInt>& bound) {
  if (seq.empty()) throw InvalidInput("finite-sums set needs a non-empty sequence");
  if (seq.size() > 20) throw InvalidInput("sequence longer than 20 elements");
  std::set<BigInt> out;
  std::size_t masks = (std::size_t(1) << seq.size()) - 1;
  for (std::size_t mask = 1; mask <= masks; ++mask) {
    BigInt acc = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
      if (mask & (std::size_t(1) << i)) acc += seq[i];
    if (!bound || acc <= *bound) out.insert(acc);
  }
  return {out.begin(), out.end()};
}

std::vector<int> fp_set(const std::vector<int>& seq, const FiniteGroupoid& g) {
  if (seq.empty()) throw InvalidInput("finite-products set needs a non-empty sequence");
  if (seq.size() > 20) throw InvalidInput("sequence longer than 20 elements");
  for (int x : seq)
    if (x < 0 || x >= g.size) throw InvalidInput("sequence element outside the carrier");
  std::set<int> out;
  std::size_t masks = (std::size_t(1) << seq.size()) - 1;
  for (std::size_t mask = 1; mask <= masks; ++mask) {
    int acc = 0;
    bool first = true;
    for (std::size_t i = 0; i < seq.size(); ++i)
      if (mask & (std::size_t(1) << i)) {
        acc = first ? seq[i] : g.at(acc, seq[i]);
        first = false;
      }
    out.insert(acc);
  }
  return {out.begin(), out.end()};
}

std::vector<BigInt> fp_set_integers(const std::vector<BigInt>& seq) {
  if (seq.empty()) throw InvalidInput("finite-products set needs a non-empty sequence");
  if (seq.size() > 20) throw InvalidInput("sequence longer than 20 elements");
  std::set<BigInt> out;
  std::size_t masks = (std::size_t(1) << seq.size()) - 1;
  for (std::size_t mask = 1; mask <= masks; ++mask) {
    BigInt acc = 1;
    for (std::size_t i = 0; i < seq.size(); ++i)
      if (mask & (std::size_t(1) << i)) acc *= seq[i];
    out.insert(acc);
  }
  return {out.begin(), out.end()};
}

std::vector<std::string> fp_set_words(const std::vector<std::string>& seq) {
  if (seq.empty()) throw InvalidInput("finite-products set needs a non-empty sequence");
  if (seq.size() > 20) throw InvalidInput("sequence longer than 20 elements");
  std::set<std::string> out;
  std::size_t masks = (std::size_t(1) << seq.size()) - 1;
  for (std::size_t mask = 1; mask <= masks; ++mask) {
    std::string acc;
    for (std::size_t i = 0; i < seq.size(); ++i)
      if (mask & (std::size_t(1) << i)) acc += seq[i];
    out.insert(acc);
  }
  return {out.begin(), out.end()};
}

int Coloring::color_of(int x) const {
  if (x < 1 || x > n) throw InvalidInput("element outside the interval [1.." +
                                         std::to_string(n) + "]");
  return part[std::size_t(x)];
}

namespace {

Coloring make_coloring(int n, int colors, std::vector<int> part) {
  if (n < 0) throw InvalidInput("interval length must be non-negative");
  if (colors < 1) throw InvalidInput("need at least one color");
  Coloring c;
  c.n = n;
  c.colors = colors;
  c.part = std::move(part);
  for (int x = 1; x <= n; ++x)
    if (c.part[std::size_t(x)] < 0 || c.part[std::size_t(x)] >= colors)
      throw InvalidInput("color out of range at element " + std::to_string(x));
  return c;
}

}  // namespace

Coloring Coloring::single(int n) {
  return make_coloring(n, 1, std::vector<int>(std::size_t(n) + 1, 0));
}

Coloring Coloring::parity(int n) {
  std::vector<int> part(std::size_t(n) + 1, -1);
  for (int x = 1; x <= n; ++x) part[std::size_t(x)] = x % 2;
  part[0] = -1;
  return make_coloring(n, 2, std::move(part));
}

Coloring Coloring::mod_k(int n, int k) {
  if (k < 1) throw InvalidInput("modulus must be positive");
  std::vector<int> part(std::size_t(n) + 1, 0);
  for (int x = 1; x <= n; ++x) part[std::size_t(x)] = x % k;
  part[0] = -1;
  return make_coloring(n, k, std::move(part));
}

Coloring Coloring::random(int n, int colors, std::uint64_t seed) {
  if (colors < 1) throw InvalidInput("need at least one color");
  SplitMix64 rng(mix_seed(seed, 0xC01u));
  std::vector<int> part(std::size_t(n) + 1, 0);
  part[0] = -1;
  for (int x = 1; x <= n; ++x) part[std::size_t(x)] = int(rng.below(std::uint64_t(colors)));
  return make_coloring(n, colors, std::move(part));
}

Coloring Coloring::from_parts(int n, const std::vector<std::vector<int>>& parts) {
  std::vector<int> part(std::size_t(n) + 1, -1);
  for (std::size_t c = 0; c < parts.size(); ++c)
    for (int x : parts[c]) {
      if (x < 1 || x > n) throw InvalidInput("part element outside the interval");
      if (part[std::size_t(x)] != -1) throw InvalidInput("element colored twice");
      part[std::size_t(x)] = int(c);
    }
  for (int x = 1; x <= n; ++x)
    if (part[std::size_t(x)] == -1)
      throw InvalidInput("element " + std::to_string(x) + " is uncolored");
  return make_coloring(n, std::max<int>(1, int(parts.size())), std::move(part));
}

Coloring Coloring::from_csv(const std::string& text) {
  std::map<int, int> got;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first && line == "element,color") {
      first = false;
      continue;
    }
    first = false;
    std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw InvalidInput("coloring line without a comma: '" + line + "'");
    int e = 0, c = 0;
    try {
      e = std::stoi(line.substr(0, comma));
      c = std::stoi(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw InvalidInput("coloring line is not 'element,color': '" + line + "'");
    }
    if (e < 1) throw InvalidInput("elements start at 1");
    if (c < 0) throw InvalidInput("colors start at 0");
    if (!got.emplace(e, c).second)
      throw InvalidInput("element " + std::to_string(e) + " colored twice");
  }
  if (got.empty()) throw InvalidInput("empty coloring");
  int n = got.rbegin()->first;
  int colors = 0;
  std::vector<int> part(std::size_t(n) + 1, -1);
  for (const auto& [e, c] : got) {
    part[std::size_t(e)] = c;
    colors = std::max(colors, c + 1);
  }
  for (int x = 1; x <= n; ++x)
    if (part[std::size_t(x)] == -1)
      throw InvalidInput("element " + std::to_string(x) + " is uncolored");
  return make_coloring(n, colors, std::move(part));
}

std::string Coloring::to_csv() const {
  std::ostringstream os;
  os << "element,color\n";
  for (int x = 1; x <= n; ++x) os << x << "," << part[std::size_t(x)] << "\n";
  return os.str();
}

std::optional<SchurWitness> schur_search(const Coloring& c, bool distinct) {
  for (int x = 1; x <= c.n; ++x)
    for (int y = distinct ? x + 1 : x; x + y <= c.n; ++y) {
      int col = c.color_of(x);
      if (c.color_of(y) == col && c.color_of(x + y) == col)
        return SchurWitness{x, y, col};
    }
  return std::nullopt;
}

bool schur_coloring_valid(const std::vector<int>& coloring) {
  int n = int(coloring.size()) - 1;
  for (int x = 1; x <= n; ++x)
    for (int y = x; x + y <= n; ++y)
      if (coloring[std::size_t(x)] == coloring[std::size_t(y)] &&
          coloring[std::size_t(y)] == coloring[std::size_t(x + y)])
        return false;
  return true;
}

namespace {

enum class SearchOutcome { Found, None, Out };

// Depth-first coloring of [1..n]; a color is legal at `pos` when it closes no
// monochromatic x + y = pos. New colors are introduced in order (canonical
// form), which removes color permutations from the search.
SearchOutcome color_interval(std::vector<int>& col, int pos, int n, int r, int used,
                             std::uint64_t& nodes, std::uint64_t budget,
                             const std::chrono::steady_clock::time_point* deadline) {
  if (pos > n) return SearchOutcome::Found;
  int limit = std::min(r - 1, used);
  for (int c = 0; c <= limit; ++c) {
    if (++nodes > budget) return SearchOutcome::Out;
    if (deadline && (nodes & 4095) == 0 &&
        std::chrono::steady_clock::now() > *deadline)
      return SearchOutcome::Out;
    bool ok = true;
    for (int x = 1; 2 * x <= pos && ok; ++x) {
      int y = pos - x;
      if (col[std::size_t(x)] == c && col[std::size_t(y)] == c) ok = false;
    }
    if (!ok) continue;
    col[std::size_t(pos)] = c;
    SearchOutcome sub = color_interval(col, pos + 1, n, r, std::max(used, c + 1), nodes,
                                       budget, deadline);
    if (sub != SearchOutcome::None) return sub;
  }
  col[std::size_t(pos)] = -1;
  return SearchOutcome::None;
}

}  // namespace

SchurNumberResult schur_number(int r, std::uint64_t node_budget, std::uint64_t budget_ms) {
  if (r < 1) throw InvalidInput("need at least one color");
  if (node_budget == 0) node_budget = 50'000'000;
  std::chrono::steady_clock::time_point stop;
  const std::chrono::steady_clock::time_point* deadline = nullptr;
  if (budget_ms > 0) {
    stop = std::chrono::steady_clock::now() + std::chrono::milliseconds(budget_ms);
    deadline = &stop;
  }

  SchurNumberResult out;
  out.coloring = {-1};
  for (int n = 1; n <= 1000; ++n) {
    std::vector<int> col(std::size_t(n) + 1, -1);
    SearchOutcome got = color_interval(col, 1, n, r, 0, out.nodes, node_budget, deadline);
    if (got == SearchOutcome::Out) return out;  // best so far, not exact
    if (got == SearchOutcome::None) {
      out.exact = true;
      return out;
    }
    out.n = n;
    out.coloring = std::move(col);
  }
  return out;  // absurdly large for the given r; treated as budget-style stop
}

namespace {

bool extend_fs(const Coloring& c, int count, bool distinct, int start,
               std::vector<int>& xs, std::vector<int>& sums, int color,
               std::optional<FsWitness>& out) {
  if (int(xs.size()) == count) {
    std::vector<int> fs = sums;
    std::sort(fs.begin(), fs.end());
    fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
    out = FsWitness{xs, color, std::move(fs)};
    return true;
  }
  for (int x = start; x <= c.n; ++x) {
    int col = xs.empty() ? c.color_of(x) : color;
    if (c.color_of(x) != col) continue;
    bool ok = true;
    std::vector<int> added{x};
    for (int s : sums) {
      int t = s + x;
      if (t > c.n || c.color_of(t) != col) {
        ok = false;
        break;
      }
      added.push_back(t);
    }
    if (!ok) continue;
    xs.push_back(x);
    std::size_t old = sums.size();
    sums.insert(sums.end(), added.begin(), added.end());
    if (extend_fs(c, count, distinct, distinct ? x + 1 : x, xs, sums, col, out)) return true;
    sums.resize(old);
    xs.pop_back();
  }
  return false;
}

}  // namespace

std::optional<FsWitness> folkman_search(const Coloring& c, int count, bool distinct) {
  if (count < 1) throw InvalidInput("witness length must be positive");
  std::optional<FsWitness> out;
  std::vector<int> xs, sums;
  extend_fs(c, count, distinct, 1, xs, sums, -1, out);
  return out;
}

std::optional<HilbertWitness> hilbert_cube_search(const Coloring& c, int count, int b_count) {
  if (count < 1 || b_count < 1) throw InvalidInput("cube shape must be positive");
  if (c.n == 0) return std::nullopt;
  if (count > 20) throw InvalidInput("cube dimension longer than 20");

  // non-decreasing tuples (x_1..x_count), repeats allowed
  std::vector<int> xs(std::size_t(count), 1);
  while (true) {
    std::vector<int> sums;
    std::size_t masks = (std::size_t(1) << count) - 1;
    for (std::size_t mask = 1; mask <= masks; ++mask) {
      int acc = 0;
      for (int i = 0; i < count; ++i)
        if (mask & (std::size_t(1) << i)) acc += xs[std::size_t(i)];
      sums.push_back(acc);
    }
    std::sort(sums.begin(), sums.end());
    sums.erase(std::unique(sums.begin(), sums.end()), sums.end());

    if (sums.back() + 1 <= c.n) {
      // translates: increasing tuples (b_1 < ... < b_k) with b + FS inside [1..n]
      std::vector<int> bs(static_cast<std::size_t>(b_count));
      for (int i = 0; i < b_count; ++i) bs[std::size_t(i)] = i + 1;
      while (bs[0] + sums.back() <= c.n) {
        if (bs[std::size_t(b_count) - 1] + sums.back() <= c.n) {
          int color = c.color_of(bs[0] + sums[0]);
          bool ok = true;
          for (int b : bs)
            for (int s : sums)
              if (c.color_of(b + s) != color) {
                ok = false;
                break;
              }
          if (ok) return HilbertWitness{xs, bs, color};
        }
        int pos = b_count - 1;
        while (pos >= 0 && bs[std::size_t(pos)] == c.n - (b_count - 1 - pos)) --pos;
        if (pos < 0) break;
        ++bs[std::size_t(pos)];
        for (int i = pos + 1; i < b_count; ++i)
          bs[std::size_t(i)] = bs[std::size_t(i) - 1] + 1;
      }
    }

    int pos = count - 1;
    while (pos >= 0 && xs[std::size_t(pos)] == c.n) --pos;
    if (pos < 0) return std::nullopt;
    ++xs[std::size_t(pos)];
    for (int i = pos + 1; i < count; ++i) xs[std::size_t(i)] = xs[std::size_t(pos)];
  }
}

std::optional<SimulWitness> simultaneous_fs_fp_search(const Coloring& c, int len) {
  if (len < 1) throw InvalidInput("witness length must be positive");
  if (len > 20) throw InvalidInput("witness length longer than 20");

  // strictly increasing xs whose FS set stays inside one color
  std::vector<int> xs(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) xs[std::size_t(i)] = i + 1;
  while (true) {
    bool fs_ok = true;
    int color = -1;
    std::size_t masks = (std::size_t(1) << len) - 1;
    for (std::size_t mask = 1; mask <= masks && fs_ok; ++mask) {
      int acc = 0;
      for (int i = 0; i < len; ++i)
        if (mask & (std::size_t(1) << i)) acc += xs[std::size_t(i)];
      if (acc > c.n) {
        fs_ok = false;
        break;
      }
      int col = c.color_of(acc);
      if (color == -1) color = col;
      if (col != color) fs_ok = false;
    }

    if (fs_ok) {
      std::vector<int> ys(static_cast<std::size_t>(len));
      for (int i = 0; i < len; ++i) ys[std::size_t(i)] = i + 1;
      while (true) {
        bool fp_ok = true;
        for (std::size_t mask = 1; mask <= masks && fp_ok; ++mask) {
          long long acc = 1;
          for (int i = 0; i < len; ++i)
            if (mask & (std::size_t(1) << i)) {
              acc *= ys[std::size_t(i)];
              if (acc > c.n) break;
            }
          if (acc > c.n || c.color_of(int(acc)) != color) fp_ok = false;
        }
        if (fp_ok) return SimulWitness{xs, ys, color};
        int pos = len - 1;
        while (pos >= 0 && ys[std::size_t(pos)] == c.n - (len - 1 - pos)) --pos;
        if (pos < 0) break;
        ++ys[std::size_t(pos)];
        for (int i = pos + 1; i < len; ++i) ys[std::size_t(i)] = ys[std::size_t(i) - 1] + 1;
      }
    }

    int pos = len - 1;
    while (pos >= 0 && xs[std::size_t(pos)] == c.n - (len - 1 - pos)) --pos;
    if (pos < 0) return std::nullopt;
    ++xs[std::size_t(pos)];
    for (int i = pos + 1; i < len; ++i) xs[std::size_t(i)] = xs[std::size_t(i) - 1] + 1;
  }
}

int GridColoring::color_at(const std::vector<int>& pt) const {
  if (pt.size() != axes.size()) throw InvalidInput("point has the wrong number of axes");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (pt[i] < 1 || pt[i] > axes[i]) throw InvalidInput("point outside the grid");
    idx = idx * std::size_t(axes[i]) + std::size_t(pt[i] - 1);
  }
  return part[idx];
}

namespace {

std::size_t grid_cells(const std::vector<int>& axes) {
  if (axes.empty()) throw InvalidInput("grid needs at least one axis");
  std::size_t total = 1;
  for (int a : axes) {
    if (a < 1) throw InvalidInput("axis length must be positive");
    if (total > (std::size_t(1) << 24) / std::size_t(a))
      throw InvalidInput("grid is too large");
    total *= std::size_t(a);
  }
  return total;
}

GridColoring make_grid(std::vector<int> axes, int colors, std::vector<int> part) {
  GridColoring g;
  g.axes = std::move(axes);
  g.colors = colors;
  g.part = std::move(part);
  return g;
}

void for_each_grid_point(const std::vector<int>& axes,
                         const std::function<void(const std::vector<int>&, std::size_t)>& fn) {
  std::vector<int> pt(axes.size(), 1);
  std::size_t idx = 0;
  while (true) {
    fn(pt, idx);
    ++idx;
    int pos = int(axes.size()) - 1;
    while (pos >= 0 && pt[std::size_t(pos)] == axes[std::size_t(pos)]) {
      pt[std::size_t(pos)] = 1;
      --pos;
    }
    if (pos < 0) return;
    ++pt[std::size_t(pos)];
  }
}

}  // namespace

GridColoring GridColoring::single(std::vector<int> axes) {
  std::size_t cells = grid_cells(axes);
  return make_grid(std::move(axes), 1, std::vector<int>(cells, 0));
}

GridColoring GridColoring::parity_sum(std::vector<int> axes) {
  std::size_t cells = grid_cells(axes);
  std::vector<int> part(cells, 0);
  for_each_grid_point(axes, [&](const std::vector<int>& pt, std::size_t idx) {
    int s = 0;
    for (int v : pt) s += v;
    part[idx] = s % 2;
  });
  return make_grid(std::move(axes), 2, std::move(part));
}

GridColoring GridColoring::mod_sum(std::vector<int> axes, int k) {
  if (k < 1) throw InvalidInput("modulus must be positive");
  std::size_t cells = grid_cells(axes);
  std::vector<int> part(cells, 0);
  for_each_grid_point(axes, [&](const std::vector<int>& pt, std::size_t idx) {
    int s = 0;
    for (int v : pt) s += v;
    part[idx] = s % k;
  });
  return make_grid(std::move(axes), k, std::move(part));
}

GridColoring GridColoring::random(std::vector<int> axes, int colors, std::uint64_t seed) {
  if (colors < 1) throw InvalidInput("need at least one color");
  std::size_t cells = grid_cells(axes);
  SplitMix64 rng(mix_seed(seed, 0x62D1Du));
  std::vector<int> part(cells, 0);
  for (std::size_t i = 0; i < cells; ++i) part[i] = int(rng.below(std::uint64_t(colors)));
  return make_grid(std::move(axes), colors, std::move(part));
}

namespace {

// FS set of a strictly increasing tuple, or empty when a sum escapes the axis
std::vector<int> axis_fs(const std::vector<int>& seq, int axis_max) {
  std::vector<int> sums;
  std::size_t masks = (std::size_t(1) << seq.size()) - 1;
  for (std::size_t mask = 1; mask <= masks; ++mask) {
    int acc = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
      if (mask & (std::size_t(1) << i)) acc += seq[i];
    if (acc > axis_max) return {};
    sums.push_back(acc);
  }
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  return sums;
}

bool product_monochrome(const GridColoring& c, const std::vector<std::vector<int>>& fs,
                        int* color) {
  bool first = true;
  int col = -1;
  std::vector<std::size_t> idx(fs.size(), 0);
  while (true) {
    std::vector<int> pt(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) pt[i] = fs[i][idx[i]];
    int got = c.color_at(pt);
    if (first) {
      col = got;
      first = false;
    } else if (got != col) {
      return false;
    }
    int pos = int(fs.size()) - 1;
    while (pos >= 0 && ++idx[std::size_t(pos)] == fs[std::size_t(pos)].size()) {
      idx[std::size_t(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  *color = col;
  return true;
}

bool extend_axes(const GridColoring& c, const std::vector<int>& lens, std::size_t axis,
                 std::vector<std::vector<int>>& seqs, std::vector<std::vector<int>>& fs,
                 std::optional<ProductFsWitness>& out) {
  if (axis == lens.size()) {
    int color = -1;
    if (!product_monochrome(c, fs, &color)) return false;
    out = ProductFsWitness{seqs, color};
    return true;
  }
  int len = lens[axis];
  int axis_max = c.axes[axis];
  std::vector<int> seq(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) seq[std::size_t(i)] = i + 1;
  if (seq.back() > axis_max) return false;
  while (true) {
    std::vector<int> sums = axis_fs(seq, axis_max);
    if (!sums.empty()) {
      seqs.push_back(seq);
      fs.push_back(std::move(sums));
      if (extend_axes(c, lens, axis + 1, seqs, fs, out)) return true;
      fs.pop_back();
      seqs.pop_back();
    }
    int pos = len - 1;
    while (pos >= 0 && seq[std::size_t(pos)] == axis_max - (len - 1 - pos)) --pos;
    if (pos < 0) return false;
    ++seq[std::size_t(pos)];
    for (int i = pos + 1; i < len; ++i) seq[std::size_t(i)] = seq[std::size_t(i) - 1] + 1;
  }
}

}  // namespace

std::optional<ProductFsWitness> product_fs_search(const GridColoring& c, int m, int last_len) {
  if (m < 1 || last_len < 1) throw InvalidInput("sequence lengths must be positive");
  if (m > 16 || last_len > 16) throw InvalidInput("sequence lengths above 16");
  grid_cells(c.axes);  // validates shape
  std::vector<int> lens(c.axes.size(), m);
  lens.back() = last_len;

  std::optional<ProductFsWitness> out;
  std::vector<std::vector<int>> seqs, fs;
  extend_axes(c, lens, 0, seqs, fs, out);
  return out;
}

bool verify_product_fs(const GridColoring& c, int m, int last_len, const ProductFsWitness& w) {
  if (w.seqs.size() != c.axes.size()) return false;
  std::vector<std::vector<int>> fs;
  for (std::size_t a = 0; a < w.seqs.size(); ++a) {
    int want = (a + 1 == w.seqs.size()) ? last_len : m;
    if (int(w.seqs[a].size()) != want) return false;
    std::set<int> uniq(w.seqs[a].begin(), w.seqs[a].end());
    if (uniq.size() != w.seqs[a].size()) return false;
    for (int v : w.seqs[a])
      if (v < 1 || v > c.axes[a]) return false;
    std::vector<int> sums = axis_fs(w.seqs[a], c.axes[a]);
    if (sums.empty()) return false;
    fs.push_back(std::move(sums));
  }
  int color = -1;
  return product_monochrome(c, fs, &color) && color == w.color;
}

namespace {

struct KeyLemmaContext {
  const FinitePolyring* k = nullptr;
  int var_count = 0;
  int tuple_len = 0;
  std::size_t points = 0;         // |K|^var_count
  std::vector<char> is_root;      // F(point) == 0, indexed like tabulate
  bool zero_is_root = false;      // F(0...0) == 0
};

std::vector<int> point_coords(std::size_t p, int m, int vars) {
  std::vector<int> v(static_cast<std::size_t>(vars));
  for (int i = vars - 1; i >= 0; --i) {
    v[std::size_t(i)] = int(p % std::size_t(m));
    p /= std::size_t(m);
  }
  return v;
}

// 0 = vacuous, 1 = confirming, 2 = counterexample
int classify_tuple(const KeyLemmaContext& ctx, const std::vector<std::size_t>& tuple) {
  int m = ctx.k->size();
  std::vector<std::vector<int>> coords;
  coords.reserve(tuple.size());
  for (std::size_t p : tuple) coords.push_back(point_coords(p, m, ctx.var_count));

  std::size_t masks = (std::size_t(1) << tuple.size()) - 1;
  for (std::size_t mask = 1; mask <= masks; ++mask) {
    std::vector<int> sum(std::size_t(ctx.var_count), 0);
    for (std::size_t i = 0; i < tuple.size(); ++i)
      if (mask & (std::size_t(1) << i))
        for (int j = 0; j < ctx.var_count; ++j)
          sum[std::size_t(j)] = ctx.k->add(sum[std::size_t(j)], coords[i][std::size_t(j)]);
    std::size_t idx = 0;
    for (int j = 0; j < ctx.var_count; ++j)
      idx = idx * std::size_t(m) + std::size_t(sum[std::size_t(j)]);
    if (!ctx.is_root[idx]) return 0;
  }
  return ctx.zero_is_root ? 1 : 2;
}

}  // namespace

KeyLemmaReport verify_key_lemma(const FinitePolyring& k, const TermPtr& f, int var_count,
                                KeyLemmaMode mode, std::uint64_t trials, std::uint64_t seed) {
  if (var_count < 1) throw InvalidInput("need at least one variable slot");
  if (max_var_index(*f) > var_count)
    throw InvalidInput("term uses variables beyond the declared count");

  std::vector<int> vars(static_cast<std::size_t>(var_count));
  for (int i = 0; i < var_count; ++i) vars[std::size_t(i)] = i + 1;

  KeyLemmaContext ctx;
  ctx.k = &k;
  ctx.var_count = var_count;
  KeyLemmaReport rep;
  rep.degree = degree(f, vars).value;
  ctx.tuple_len = rep.degree + 1;
  if (ctx.tuple_len > 20) throw InvalidInput("degree too large for tuple enumeration");

  std::size_t points = 1;
  for (int i = 0; i < var_count; ++i) {
    if (points > (std::size_t(1) << 20) / std::size_t(k.size()))
      throw InvalidInput("point space is too large");
    points *= std::size_t(k.size());
  }
  ctx.points = points;
  ctx.is_root.resize(points);
  for (std::size_t p = 0; p < points; ++p)
    ctx.is_root[p] = evaluate(f, k, point_coords(p, k.size(), var_count)) == 0;
  ctx.zero_is_root = ctx.is_root[0] != 0;

  auto record = [&](const std::vector<std::size_t>& tuple, int cls) {
    ++rep.examined;
    if (cls == 0) ++rep.vacuous;
    if (cls == 1) ++rep.confirming;
    if (cls == 2 && !rep.counterexample) {
      std::vector<std::vector<int>> bad;
      for (std::size_t p : tuple) bad.push_back(point_coords(p, k.size(), var_count));
      rep.counterexample = std::move(bad);
    }
  };

  if (mode == KeyLemmaMode::Exhaustive) {
    double total = 1.0;
    for (int i = 0; i < ctx.tuple_len; ++i) total *= double(points);
    if (total > 5e7) throw InvalidInput("exhaustive tuple space is too large");
    std::vector<std::size_t> tuple(std::size_t(ctx.tuple_len), 0);
    while (true) {
      int cls = classify_tuple(ctx, tuple);
      record(tuple, cls);
      if (cls == 2) break;  // halt at the offending tuple
      int pos = ctx.tuple_len - 1;
      while (pos >= 0 && ++tuple[std::size_t(pos)] == points) {
        tuple[std::size_t(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
    return rep;
  }

  if (trials == 0) throw InvalidInput("random mode needs a trial count");
  constexpr std::uint64_t kChunk = 1024;
  std::size_t chunks = std::size_t((trials + kChunk - 1) / kChunk);
  struct ChunkResult {
    std::uint64_t vacuous = 0, confirming = 0;
    std::uint64_t bad_trial = ~0ull;
    std::vector<std::size_t> bad_tuple;
  };
  std::vector<ChunkResult> results(chunks);
  parallel_for(chunks, [&](std::size_t ci) {
    ChunkResult& r = results[ci];
    std::uint64_t lo = std::uint64_t(ci) * kChunk;
    std::uint64_t hi = std::min(trials, lo + kChunk);
    for (std::uint64_t t = lo; t < hi; ++t) {
      SplitMix64 rng(mix_seed(seed, t));
      std::vector<std::size_t> tuple(std::size_t(ctx.tuple_len));
      for (auto& p : tuple) p = std::size_t(rng.below(points));
      int cls = classify_tuple(ctx, tuple);
      if (cls == 0) ++r.vacuous;
      if (cls == 1) ++r.confirming;
      if (cls == 2 && t < r.bad_trial) {
        r.bad_trial = t;
        r.bad_tuple = tuple;
      }
    }
  });
  std::uint64_t best_bad = ~0ull;
  std::vector<std::size_t> bad_tuple;
  for (const ChunkResult& r : results) {
    rep.vacuous += r.vacuous;
    rep.confirming += r.confirming;
    if (r.bad_trial < best_bad) {
      best_bad = r.bad_trial;
      bad_tuple = r.bad_tuple;
    }
  }
  rep.examined = trials;
  if (best_bad != ~0ull) {
    std::vector<std::vector<int>> bad;
    for (std::size_t p : bad_tuple) bad.push_back(point_coords(p, k.size(), var_count));
    rep.counterexample = std::move(bad);
  }
  return rep;
}

}  // namespace polyring
