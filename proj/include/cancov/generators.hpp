#pragma once

// Example packs. Cylinders over a boundary sample use the sum metric
// d((x,t),(y,s)) = d_X(x,y) + |t - s| with geometric levels.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "cancov/metric_core.hpp"

namespace cancov {

struct GenParams {
  PackKindTag kind = PackKindTag::finite_cylinder;
  int base_points = 3;   // boundary sample size (per side for cube_face)
  int levels = 6;        // number of interior levels
  double ratio = 0.5;    // geometric level ratio
  int y_points = 5;      // countable_example: length of the dense sequence prefix
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::BadParams, what);
}

/// Geometric levels top, top*ratio, ..., strictly decreasing.
inline std::vector<double> geometric_levels(int count, double ratio, double top) {
  std::vector<double> out;
  double v = top;
  for (int j = 0; j < count; ++j, v *= ratio) out.push_back(v);
  return out;
}

/// Product pack base x levels given the base metric; boundary first.
template <class BaseDist>
DiscretePack product_pack(std::size_t nbase, const std::vector<double>& levels, BaseDist base_dist,
                          PackMeta meta) {
  const std::size_t n = nbase * (levels.size() + 1);
  std::vector<double> level_of(n, 0.0);
  std::vector<PointId> base_of(n);
  CylinderLayout layout;
  layout.levels = levels;
  layout.grid.assign(nbase, std::vector<PointId>(levels.size()));
  for (std::size_t b = 0; b < nbase; ++b) base_of[b] = static_cast<PointId>(b);
  for (std::size_t j = 0; j < levels.size(); ++j) {
    for (std::size_t b = 0; b < nbase; ++b) {
      const std::size_t id = nbase * (j + 1) + b;
      level_of[id] = levels[j];
      base_of[id] = static_cast<PointId>(b);
      layout.grid[b][j] = static_cast<PointId>(id);
    }
  }
  std::vector<double> flat(n * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      flat[p * n + q] = base_dist(base_of[p], base_of[q]) + std::abs(level_of[p] - level_of[q]);
  std::vector<bool> mask(n, false);
  for (std::size_t b = 0; b < nbase; ++b) mask[b] = true;
  layout.base_of = std::move(base_of);
  layout.level_of = std::move(level_of);
  meta.cylinder = std::move(layout);
  meta.cylindrical = true;
  return make_trusted_pack(std::move(flat), n, mask, std::move(meta));
}

/// Base-2 van der Corput sequence starting 1/2, 1/4, 3/4, ...
inline double van_der_corput(unsigned index) {
  double v = 0.0, f = 0.5;
  for (unsigned i = index; i > 0; i >>= 1, f *= 0.5)
    if (i & 1u) v += f;
  return v;
}

inline std::vector<double> even_grid(int count) {
  std::vector<double> xs(count);
  for (int i = 0; i < count; ++i) xs[i] = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
  return xs;
}

inline DiscretePack line_cylinder(const GenParams& g, int dim) {
  require(g.base_points >= 1 && g.levels >= 1, "need base_points >= 1 and levels >= 1");
  require(g.ratio > 0.0 && g.ratio < 1.0, "ratio must lie in (0,1)");
  const auto xs = even_grid(g.base_points);
  const auto levels = geometric_levels(g.levels, g.ratio, 1.0);
  PackMeta meta;
  meta.kind = g.kind;
  meta.known_dim = dim;
  meta.base_param = xs;
  for (std::size_t j = 0; j <= levels.size(); ++j)
    for (double x : xs) meta.coords.push_back({x, j == 0 ? 0.0 : levels[j - 1]});
  return product_pack(xs.size(), levels,
                      [&](PointId a, PointId b) { return std::abs(xs[a] - xs[b]); }, meta);
}

inline DiscretePack circle_in_disk(const GenParams& g) {
  require(g.base_points >= 3 && g.levels >= 1, "need base_points >= 3 and levels >= 1");
  require(g.ratio > 0.0 && g.ratio < 1.0, "ratio must lie in (0,1)");
  const std::size_t nb = static_cast<std::size_t>(g.base_points);
  const auto depths = geometric_levels(g.levels, g.ratio, 0.5);
  const std::size_t n = nb * (depths.size() + 1);
  std::vector<std::vector<double>> xy(n);
  PackMeta meta;
  meta.kind = g.kind;
  meta.known_dim = 1;
  meta.cylindrical = true;
  meta.base_periodic = true;
  CylinderLayout layout;
  layout.levels = depths;
  layout.base_of.resize(n);
  layout.level_of.assign(n, 0.0);
  layout.grid.assign(nb, std::vector<PointId>(depths.size()));
  for (std::size_t b = 0; b < nb; ++b) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(b) / static_cast<double>(nb);
    meta.base_param.push_back(static_cast<double>(b) / static_cast<double>(nb));
    for (std::size_t j = 0; j <= depths.size(); ++j) {
      const std::size_t id = nb * j + b;
      const double rho = j == 0 ? 1.0 : 1.0 - depths[j - 1];
      xy[id] = {rho * std::cos(theta), rho * std::sin(theta)};
      layout.base_of[id] = static_cast<PointId>(b);
      if (j > 0) {
        layout.level_of[id] = depths[j - 1];
        layout.grid[b][j - 1] = static_cast<PointId>(id);
      }
    }
  }
  std::vector<double> flat(n * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      flat[p * n + q] = std::hypot(xy[p][0] - xy[q][0], xy[p][1] - xy[q][1]);
  std::vector<bool> mask(n, false);
  for (std::size_t b = 0; b < nb; ++b) mask[b] = true;
  meta.coords = xy;
  meta.cylinder = std::move(layout);
  return make_trusted_pack(std::move(flat), n, mask, std::move(meta));
}

inline DiscretePack cube_face(const GenParams& g) {
  require(g.base_points >= 2 && g.levels >= 1, "need base_points >= 2 and levels >= 1");
  require(g.ratio > 0.0 && g.ratio < 1.0, "ratio must lie in (0,1)");
  const auto axis = even_grid(g.base_points);
  std::vector<std::pair<double, double>> base;
  for (double y : axis)
    for (double x : axis) base.emplace_back(x, y);
  const auto levels = geometric_levels(g.levels, g.ratio, 1.0);
  PackMeta meta;
  meta.kind = g.kind;
  meta.known_dim = 2;
  for (std::size_t j = 0; j <= levels.size(); ++j)
    for (const auto& [x, y] : base) meta.coords.push_back({x, y, j == 0 ? 0.0 : levels[j - 1]});
  return product_pack(
      base.size(), levels,
      [&](PointId a, PointId b) {
        return std::abs(base[a].first - base[b].first) + std::abs(base[a].second - base[b].second);
      },
      meta);
}

inline DiscretePack countable_example(const GenParams& g) {
  require(g.y_points >= 1, "need y_points >= 1");
  const std::size_t ny = static_cast<std::size_t>(g.y_points);
  std::vector<double> ys(ny);
  for (std::size_t i = 0; i < ny; ++i) ys[i] = van_der_corput(static_cast<unsigned>(i + 1));
  // boundary (y_i, 0) first, then rows n = 1..ny holding y_1..y_n at height 1/n
  std::vector<std::pair<double, double>> pts;
  for (double y : ys) pts.emplace_back(y, 0.0);
  for (std::size_t row = 1; row <= ny; ++row)
    for (std::size_t i = 0; i < row; ++i) pts.emplace_back(ys[i], 1.0 / static_cast<double>(row));
  const std::size_t n = pts.size();
  std::vector<double> flat(n * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      flat[p * n + q] =
          std::abs(pts[p].first - pts[q].first) + std::abs(pts[p].second - pts[q].second);
  std::vector<bool> mask(n, false);
  for (std::size_t b = 0; b < ny; ++b) mask[b] = true;
  PackMeta meta;
  meta.kind = g.kind;
  meta.known_dim = 0;
  meta.cylindrical = false;
  meta.base_param = ys;
  for (const auto& [y, t] : pts) meta.coords.push_back({y, t});
  return make_trusted_pack(std::move(flat), n, mask, std::move(meta));
}

}  // namespace detail

inline DiscretePack generate_pack(const GenParams& g) {
  switch (g.kind) {
    case PackKindTag::finite_cylinder: return detail::line_cylinder(g, 0);
    case PackKindTag::interval_cylinder: return detail::line_cylinder(g, 1);
    case PackKindTag::circle_in_disk: return detail::circle_in_disk(g);
    case PackKindTag::cube_face: return detail::cube_face(g);
    case PackKindTag::countable_example: return detail::countable_example(g);
    case PackKindTag::custom: break;
  }
  throw Error(ErrorCode::BadParams, "custom packs are loaded from file, not generated");
}

/// Defaults used by the CLI and the experiments.
inline GenParams default_params(PackKindTag kind) {
  GenParams g;
  g.kind = kind;
  switch (kind) {
    case PackKindTag::finite_cylinder: g.base_points = 3, g.levels = 20; break;
    case PackKindTag::interval_cylinder: g.base_points = 65, g.levels = 12; break;
    case PackKindTag::circle_in_disk: g.base_points = 48, g.levels = 20; break;
    case PackKindTag::cube_face: g.base_points = 5, g.levels = 8; break;
    case PackKindTag::countable_example: g.y_points = 5; break;
    case PackKindTag::custom: break;
  }
  return g;
}

}  // namespace cancov
