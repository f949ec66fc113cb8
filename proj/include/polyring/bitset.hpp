#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace polyring {

// Subset of a fixed finite universe {0, ..., n-1}, packed 64 points per word.
// Tail bits past the universe size are kept zero so that word-wise equality,
// hashing and ordering are well defined.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t universe, bool filled = false)
      : n_(universe), w_((universe + 63) / 64, filled ? ~0ull : 0ull) {
    trim();
  }

  std::size_t universe() const { return n_; }

  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { w_[i >> 6] |= 1ull << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(1ull << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::uint64_t w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }
  bool empty() const {
    for (std::uint64_t w : w_)
      if (w) return false;
    return true;
  }
  bool full() const { return count() == n_; }

  PointSet& operator|=(const PointSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  PointSet& operator&=(const PointSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
  friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }

  PointSet complement() const {
    PointSet r = *this;
    for (auto& w : r.w_) w = ~w;
    r.trim();
    return r;
  }

  bool is_subset_of(const PointSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  bool operator==(const PointSet& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const PointSet& o) const { return !(*this == o); }
  // Fixed total order (size, then words); used only for deterministic sorting.
  bool operator<(const PointSet& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    return w_ < o.w_;
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

  std::size_t hash() const {
    std::size_t h = n_ * 0x9e3779b97f4a7c15ull;
    for (std::uint64_t w : w_) h = (h ^ w) * 0x100000001b3ull;
    return h;
  }

 private:
  void trim() {
    if (n_ % 64 != 0 && !w_.empty()) w_.back() &= (1ull << (n_ % 64)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct PointSetHash {
  std::size_t operator()(const PointSet& s) const { return s.hash(); }
};

}  // namespace polyring
