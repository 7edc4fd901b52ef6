#pragma once

// Seeded random instances for property sweeps.

#include <cmath>
#include <random>
#include <vector>

#include "cancov/cover.hpp"
#include "cancov/relation.hpp"

namespace cancov {

using Rng = std::mt19937_64;

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

/// n random points of the unit square with the Euclidean metric, split into a
/// random nonempty boundary and nonempty interior.
inline DiscretePack random_pack(Rng& rng, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::BadParams, "random packs need two points");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<double, double>> xy(n);
  for (auto& p : xy) p = {u(rng), u(rng)};
  std::vector<double> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      flat[i * n + j] = std::hypot(xy[i].first - xy[j].first, xy[i].second - xy[j].second);
  std::vector<bool> mask(n);
  std::size_t nb = 0;
  do {
    nb = 0;
    for (std::size_t i = 0; i < n; ++i) nb += (mask[i] = coin(rng, 0.4)) ? 1 : 0;
  } while (nb == 0 || nb == n);
  PackMeta meta;
  for (const auto& [x, y] : xy) meta.coords.push_back({x, y});
  return detail::make_trusted_pack(std::move(flat), n, mask, std::move(meta));
}

inline PointSet random_subset(Rng& rng, const PointSet& from, double p = 0.5) {
  PointSet out;
  for (PointId x : from)
    if (coin(rng, p)) out.push_back(x);
  return out;
}

inline Relation random_relation(Rng& rng, std::size_t n, double density) {
  std::vector<PointSet> rows(n);
  for (PointId p = 0; p < n; ++p)
    for (PointId q = 0; q < n; ++q)
      if (coin(rng, density)) rows[p].push_back(q);
  return Relation::from_rows(std::move(rows));
}

/// Symmetric relation on `s` containing its diagonal.
inline Relation random_symmetric_nbhd(Rng& rng, std::size_t n, const PointSet& s, double density) {
  std::vector<std::pair<PointId, PointId>> pairs;
  for (PointId p : s) {
    pairs.emplace_back(p, p);
    for (PointId q : s)
      if (p < q && coin(rng, density)) pairs.emplace_back(p, q), pairs.emplace_back(q, p);
  }
  return Relation(n, pairs);
}

/// A family of `count` random nonempty subsets of `target`.
inline Family random_family(Rng& rng, const PointSet& target, std::size_t count, double p = 0.4) {
  Family f;
  while (f.size() < count) {
    auto s = random_subset(rng, target, p);
    if (!s.empty()) f.push_back(std::move(s));
  }
  return f;
}

/// Random cover of `target`: random members plus a member for each stray point.
inline Cover random_cover(Rng& rng, const PointSet& target, std::size_t count, double p = 0.4) {
  Cover c{random_family(rng, target, count, p), target};
  const PointSet missing = set_difference(target, family_union(c.members));
  for (PointId x : missing) c.members[uniform_index(rng, c.members.size())].push_back(x);
  for (auto& m : c.members) m = make_set(std::move(m));
  return c;
}

/// A random map {0..n-1} -> {0..m-1}.
inline std::vector<PointId> random_map(Rng& rng, std::size_t n, std::size_t m) {
  std::vector<PointId> f(n);
  for (auto& v : f) v = static_cast<PointId>(uniform_index(rng, m));
  return f;
}

}  // namespace cancov
