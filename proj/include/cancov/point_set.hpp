#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <span>
#include <vector>

namespace cancov {

using PointId = std::uint32_t;

/// Sorted, duplicate-free list of point ids.
using PointSet = std::vector<PointId>;

/// A finite family of point sets (members may repeat).
using Family = std::vector<PointSet>;

inline PointSet make_set(std::vector<PointId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

inline PointSet range_set(PointId n) {
  PointSet out(n);
  for (PointId i = 0; i < n; ++i) out[i] = i;
  return out;
}

inline bool contains(const PointSet& s, PointId p) {
  return std::binary_search(s.begin(), s.end(), p);
}

inline bool is_subset(const PointSet& a, const PointSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool intersects(const PointSet& a, const PointSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

inline PointSet set_union(const PointSet& a, const PointSet& b) {
  PointSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline PointSet set_intersection(const PointSet& a, const PointSet& b) {
  PointSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline PointSet set_difference(const PointSet& a, const PointSet& b) {
  PointSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Union of all members.
inline PointSet family_union(std::span<const PointSet> family) {
  PointSet out;
  for (const auto& m : family) out = set_union(out, m);
  return out;
}

/// Membership marks over a universe, reused for O(1) lookups in hot loops.
class Marks {
 public:
  explicit Marks(std::size_t n) : marks_(n, 0) {}
  explicit Marks(std::size_t n, const PointSet& s) : marks_(n, 0) { set(s); }

  void set(const PointSet& s) {
    for (PointId p : s) marks_[p] = 1;
  }
  void clear(const PointSet& s) {
    for (PointId p : s) marks_[p] = 0;
  }
  bool operator[](PointId p) const { return marks_[p] != 0; }
  void mark(PointId p) { marks_[p] = 1; }

  PointSet collect() const {
    PointSet out;
    for (std::size_t i = 0; i < marks_.size(); ++i)
      if (marks_[i]) out.push_back(static_cast<PointId>(i));
    return out;
  }

 private:
  std::vector<char> marks_;
};

}  // namespace cancov
