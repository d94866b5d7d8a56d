#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsq/rational.hpp"

namespace nsq {

/// Dimension n of R^n. Every tensor and frame index ranges over 1..n.
class Dimension {
 public:
  explicit Dimension(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
  }
  int value() const { return n_; }
  bool contains(int index) const { return index >= 1 && index <= n_; }
  void check(int index) const {
    if (!contains(index)) {
      throw std::out_of_range("index " + std::to_string(index) + " outside 1.." + std::to_string(n_));
    }
  }
  bool operator==(const Dimension&) const = default;

 private:
  int n_;
};

/// Symmetric tensor index: a multiset of indices stored nondecreasing.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::initializer_list<int> raw) : MultiIndex(std::vector<int>(raw)) {}
  explicit MultiIndex(std::vector<int> raw) {
    entries_.reserve(raw.size());
    for (int v : raw) {
      if (v < 1 || v > 255) throw std::out_of_range("multi-index entry out of range");
      entries_.push_back(static_cast<std::uint8_t>(v));
    }
    std::sort(entries_.begin(), entries_.end());
  }

  std::size_t rank() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  int operator[](std::size_t k) const { return entries_[k]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  std::size_t count(int v) const {
    return static_cast<std::size_t>(std::count(entries_.begin(), entries_.end(), v));
  }

  MultiIndex with(int v) const {
    MultiIndex out = *this;
    out.entries_.insert(std::upper_bound(out.entries_.begin(), out.entries_.end(), v),
                        static_cast<std::uint8_t>(v));
    return out;
  }

  /// Removes one occurrence of v; throws if absent.
  MultiIndex without(int v) const {
    MultiIndex out = *this;
    auto it = std::find(out.entries_.begin(), out.entries_.end(), v);
    if (it == out.entries_.end()) throw std::logic_error("index not present in multi-index");
    out.entries_.erase(it);
    return out;
  }

  bool contains_multiset(const MultiIndex& sub) const {
    return std::includes(entries_.begin(), entries_.end(), sub.entries_.begin(), sub.entries_.end());
  }

  /// Multiset difference; requires contains_multiset(sub).
  MultiIndex minus(const MultiIndex& sub) const {
    MultiIndex out;
    std::set_difference(entries_.begin(), entries_.end(), sub.entries_.begin(), sub.entries_.end(),
                        std::back_inserter(out.entries_));
    return out;
  }

  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex out;
    std::merge(a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end(),
               std::back_inserter(out.entries_));
    return out;
  }

  std::vector<int> to_vector() const { return {entries_.begin(), entries_.end()}; }

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      if (k) out += ",";
      out += std::to_string(entries_[k]);
    }
    return out + ")";
  }

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

 private:
  std::vector<std::uint8_t> entries_;
};

/// Sorted copy of raw, validated against n. Idempotent.
inline MultiIndex canonicalize(const std::vector<int>& raw, Dimension n) {
  for (int v : raw) n.check(v);
  return MultiIndex(raw);
}

/// All nondecreasing multi-indices of the given rank over 1..n.
inline std::vector<MultiIndex> all_multi_indices(Dimension n, std::size_t rank) {
  std::vector<MultiIndex> out;
  std::vector<int> cur(rank, 1);
  if (rank == 0) return {MultiIndex{}};
  while (true) {
    out.emplace_back(cur);
    int pos = static_cast<int>(rank) - 1;
    while (pos >= 0 && cur[pos] == n.value()) --pos;
    if (pos < 0) break;
    ++cur[pos];
    for (std::size_t k = pos + 1; k < rank; ++k) cur[k] = cur[pos];
  }
  return out;
}

/// One way of splitting the positions of a multi-index into two groups.
struct IndexSplit {
  MultiIndex first;
  MultiIndex second;
  Rational weight;  // fraction of position subsets producing this split
};

/// Enumerates the distinct splits of m into a sub-multiset of size k and its
/// complement. Weights sum to 1, so summing f(first) g(second) * weight is the
/// normalized symmetrization over all positions.
inline std::vector<IndexSplit> splits(const MultiIndex& m, std::size_t k) {
  std::vector<IndexSplit> out;
  if (k > m.rank()) return out;
  std::vector<std::pair<int, int>> groups;  // (value, multiplicity)
  for (int v : m) {
    if (!groups.empty() && groups.back().first == v) {
      ++groups.back().second;
    } else {
      groups.emplace_back(v, 1);
    }
  }
  Rational total = binomial(static_cast<int>(m.rank()), static_cast<int>(k));
  std::vector<int> take(groups.size(), 0);
  auto recurse = [&](auto&& self, std::size_t g, int remaining) -> void {
    if (g == groups.size()) {
      if (remaining != 0) return;
      std::vector<int> a;
      std::vector<int> b;
      Rational w = 1;
      for (std::size_t t = 0; t < groups.size(); ++t) {
        for (int c = 0; c < take[t]; ++c) a.push_back(groups[t].first);
        for (int c = take[t]; c < groups[t].second; ++c) b.push_back(groups[t].first);
        w *= binomial(groups[t].second, take[t]);
      }
      out.push_back({MultiIndex(a), MultiIndex(b), w / total});
      return;
    }
    for (int c = 0; c <= std::min(groups[g].second, remaining); ++c) {
      take[g] = c;
      self(self, g + 1, remaining - c);
    }
  };
  recurse(recurse, 0, static_cast<int>(k));
  return out;
}

}  // namespace nsq
