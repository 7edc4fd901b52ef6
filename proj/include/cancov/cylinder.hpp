#pragma once

// Product constructions over X x levels: the maps f and g between a pack and
// its cylinder, pullbacks along embeddings, the doubling construction on
// X x [0,1], slab extraction, and the dim X <= mult - 2 harness.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cancov/cover.hpp"
#include "cancov/generators.hpp"

namespace cancov {

struct Level {
  PointId base;  // boundary point
  double t;
};

/// f(p) = (z, d(p,X)) with z the lowest-id nearest boundary point.
inline Level f_map(const DiscretePack& pack, PointId p) {
  if (pack.is_boundary(p)) throw Error(ErrorCode::BoundaryInput, "f is defined on X̂");
  const double t = pack.depth(p);
  for (PointId z : pack.boundary())
    if (pack.dist(p, z) == t) return {z, t};
  throw Error(ErrorCode::BadInput, "no boundary point realizes the depth");
}

/// g(z,t): the lowest-id point of {d(.,X) >= t} nearest to z.
inline PointId g_map(const DiscretePack& pack, PointId z, double t) {
  if (!pack.is_boundary(z)) throw Error(ErrorCode::BadInput, "g takes a boundary point");
  if (!(t > 0.0)) throw Error(ErrorCode::BadInput, "g needs t > 0");
  std::optional<PointId> best;
  for (PointId p : pack.interior())
    if (pack.depth(p) >= t && (!best || pack.dist(z, p) < pack.dist(z, *best))) best = p;
  if (!best || t > pack.k_sup()) throw Error(ErrorCode::EmptyOuterSet, "nothing at depth >= " + std::to_string(t));
  return *best;
}

/// d((z,t),(z',t')) = d(z,z') + |t - t'|.
inline double cylinder_distance(const DiscretePack& pack, const Level& a, const Level& b) {
  return pack.dist(a.base, b.base) + std::abs(a.t - b.t);
}

/// Distinct interior depths, decreasing.
inline std::vector<double> depth_levels(const DiscretePack& pack) {
  std::vector<double> d;
  for (PointId p : pack.interior()) d.push_back(pack.depth(p));
  std::sort(d.begin(), d.end(), std::greater<>());
  d.erase(std::unique(d.begin(), d.end(), [](double a, double b) { return a - b <= 1e-9 * a; }), d.end());
  return d;
}

inline std::size_t nearest_level(const std::vector<double>& levels, double t) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < levels.size(); ++j)
    if (std::abs(levels[j] - t) < std::abs(levels[best] - t)) best = j;
  return best;
}

/// The product pack X_sample x depth_levels(pack) with the sum metric, plus
/// the position of f(p) in it for every point p of the pack.
struct CylinderOver {
  DiscretePack cylinder;
  std::vector<PointId> f;  // pack point -> cylinder point (boundary fixed)
};

inline CylinderOver cylinder_over(const DiscretePack& pack) {
  const auto levels = depth_levels(pack);
  const PointSet& xs = pack.boundary();
  PackMeta meta;
  meta.kind = PackKindTag::custom;
  meta.known_dim = pack.meta().known_dim;
  meta.base_param = pack.meta().base_param;
  meta.base_periodic = pack.meta().base_periodic;
  auto cyl = detail::product_pack(xs.size(), levels,
                                  [&](PointId a, PointId b) { return pack.dist(xs[a], xs[b]); }, meta);
  std::vector<PointId> f(pack.size());
  for (PointId p = 0; p < pack.size(); ++p) {
    if (pack.is_boundary(p)) {
      f[p] = static_cast<PointId>(std::lower_bound(xs.begin(), xs.end(), p) - xs.begin());
      continue;
    }
    const Level l = f_map(pack, p);
    const auto b = std::lower_bound(xs.begin(), xs.end(), l.base) - xs.begin();
    const auto j = nearest_level(levels, l.t);
    f[p] = cyl.meta().cylinder->grid[b][j];
  }
  return {std::move(cyl), std::move(f)};
}

// ---------------------------------------------------------------------------
// Embeddings and pullbacks

struct Embedding {
  std::vector<PointId> map;  // cylinder point -> host point
  double distortion = 0.0;   // max |d_host(j a, j b) - d_cyl(a, b)|
};

/// j(z,t) = the host point p with f(p) = (z,t); NotCylindrical when some
/// combination has no host point.
inline Embedding collar_embedding(const DiscretePack& host, const CylinderOver& cyl) {
  const auto& layout = *cyl.cylinder.meta().cylinder;
  Embedding e;
  e.map.assign(cyl.cylinder.size(), 0);
  std::vector<bool> hit(cyl.cylinder.size(), false);
  for (PointId p = 0; p < host.size(); ++p) {
    if (hit[cyl.f[p]]) continue;
    e.map[cyl.f[p]] = p;
    hit[cyl.f[p]] = true;
  }
  for (PointId a = 0; a < cyl.cylinder.size(); ++a)
    if (!hit[a])
      throw Error(ErrorCode::NotCylindrical, "no host point over boundary point " +
                                                 std::to_string(layout.base_of[a]) + " at level " +
                                                 std::to_string(layout.level_of[a]));
  for (PointId a = 0; a < cyl.cylinder.size(); ++a)
    for (PointId b = 0; b < cyl.cylinder.size(); ++b)
      e.distortion = std::max(e.distortion, std::abs(host.dist(e.map[a], e.map[b]) - cyl.cylinder.dist(a, b)));
  return e;
}

/// The cylinder's points with the host metric transported through j.
inline DiscretePack pullback_pack(const DiscretePack& host, const DiscretePack& cyl, const Embedding& e) {
  const std::size_t n = cyl.size();
  std::vector<double> flat(n * n);
  std::vector<bool> mask(n);
  for (PointId a = 0; a < n; ++a) {
    mask[a] = cyl.is_boundary(a);
    if (mask[a] != host.is_boundary(e.map[a]))
      throw Error(ErrorCode::NotCylindrical, "embedding moves points across the boundary");
    for (PointId b = 0; b < n; ++b) flat[a * n + b] = host.dist(e.map[a], e.map[b]);
  }
  return detail::make_trusted_pack(std::move(flat), n, mask, cyl.meta());
}

/// {j^-1(U) : U in α}, empties dropped, over the cylinder interior.
inline Cover pullback_cover(const Embedding& e, const DiscretePack& cyl, const Cover& alpha) {
  Cover out{{}, cyl.interior()};
  for (const auto& u : alpha.members) {
    auto v = set_intersection(preimage(e.map, u), cyl.interior());
    if (!v.empty()) out.members.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Covers of X x [0,1] given as explicit sample points

struct SlabPoint {
  PointId base;
  double t;
  friend bool operator<(const SlabPoint& a, const SlabPoint& b) {
    return a.base != b.base ? a.base < b.base : a.t < b.t;
  }
  friend bool operator==(const SlabPoint& a, const SlabPoint& b) { return a.base == b.base && a.t == b.t; }
};

using SlabSet = std::vector<SlabPoint>;  // sorted, unique
using SlabCover = std::vector<SlabSet>;

inline double canonical_t(double t) { return std::round(t * 1e12) / 1e12; }

inline SlabSet make_slab_set(SlabSet s) {
  for (auto& p : s) p.t = canonical_t(p.t);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline int slab_multiplicity(const SlabCover& c) {
  std::map<SlabPoint, int> count;
  int best = 0;
  for (const auto& m : c)
    for (const auto& p : m) best = std::max(best, ++count[p]);
  return best;
}

inline bool meets_level(const SlabSet& s, double t) {
  return std::any_of(s.begin(), s.end(), [&](const SlabPoint& p) { return std::abs(p.t - t) < 1e-12; });
}

/// No member meets both X x {0} and X x {1}.
inline bool end_separated(const SlabCover& c) {
  return std::none_of(c.begin(), c.end(), [](const SlabSet& s) { return meets_level(s, 0.0) && meets_level(s, 1.0); });
}

/// Translates of α and of its reflection t -> 1 - t stacked on [0, 2k], members
/// straddling an inner integer level joined with their mirror images, then
/// squeezed back onto [0,1].
inline SlabCover double_cover(const SlabCover& alpha, int k) {
  if (k < 1) throw Error(ErrorCode::BadParams, "k must be at least 1");
  if (!end_separated(alpha))
    throw Error(ErrorCode::StraddlerPrecondition, "a member meets both X x {0} and X x {1}");
  auto shifted = [](const SlabSet& u, double by, bool reflect) {
    SlabSet out;
    for (const auto& p : u) out.push_back({p.base, (reflect ? 1.0 - p.t : p.t) + by});
    return make_slab_set(std::move(out));
  };
  auto meets_inner = [&](const SlabSet& s) {
    for (int i = 1; i <= 2 * k - 1; ++i)
      if (meets_level(s, i)) return true;
    return false;
  };
  auto join = [](const SlabSet& a, const SlabSet& b) {
    SlabSet u = a;
    u.insert(u.end(), b.begin(), b.end());
    return make_slab_set(std::move(u));
  };

  SlabCover g0;
  for (const auto& u : alpha) {
    for (int j = 0; j < k; ++j) {
      auto fj = shifted(u, 2.0 * j, false);
      auto fpj = shifted(u, 2.0 * j + 1.0, true);
      if (!meets_inner(fj)) g0.push_back(fj);
      if (!meets_inner(fpj)) g0.push_back(fpj);
      if (meets_level(u, 1.0)) g0.push_back(join(fj, fpj));
      if (meets_level(u, 0.0) && j + 1 < k) g0.push_back(join(fpj, shifted(u, 2.0 * (j + 1), false)));
    }
  }
  SlabCover out;
  for (const auto& s : g0) {
    SlabSet r;
    for (const auto& p : s) r.push_back({p.base, p.t / (2.0 * k)});
    out.push_back(make_slab_set(std::move(r)));
  }
  return out;
}

/// α restricted to levels in [δ2, δ1] of a cylinder pack, with the level s sent
/// to (δ1 - s) / (δ1 - δ2) so δ1 becomes 0 and δ2 becomes 1.
inline SlabCover slab_rescale(const DiscretePack& pack, const Cover& alpha, double delta1, double delta2) {
  if (!(0.0 < delta2 && delta2 < delta1 && delta1 <= 1.0))
    throw Error(ErrorCode::BadDeltas, "need 0 < delta2 < delta1 <= 1");
  const auto& layout = pack.meta().cylinder;
  if (!layout) throw Error(ErrorCode::NonCylindricalPack, "slab_rescale needs a cylinder pack");
  if (std::none_of(layout->levels.begin(), layout->levels.end(),
                   [&](double l) { return delta2 <= l && l <= delta1; }))
    throw Error(ErrorCode::SlabTooThin, "no sample level inside the slab");
  SlabCover out;
  for (const auto& u : alpha.members) {
    SlabSet s;
    for (PointId p : u) {
      const double l = layout->level_of[p];
      if (pack.is_boundary(p) || l < delta2 || l > delta1) continue;
      s.push_back({layout->base_of[p], (delta1 - l) / (delta1 - delta2)});
    }
    if (!s.empty()) out.push_back(make_slab_set(std::move(s)));
  }
  return out;
}

/// δ1 = largest ladder radius with uniformity curve below ε, δ2 = the largest
/// radius below every depth reached by the star of the δ1-slice.
inline std::optional<std::pair<double, double>> choose_slab(const DiscretePack& pack, const ScaleLadder& ladder,
                                                            const Cover& alpha, double eps) {
  const auto uv = uniformity_verdict(pack, ladder, alpha);
  std::optional<double> d1;
  for (const auto& s : uv.curve.samples())
    if (s.value < eps && s.t <= 1.0) {
      d1 = s.t;
      break;
    }
  if (!d1) return std::nullopt;
  PointSet slice;
  for (PointId p : pack.interior())
    if (pack.depth(p) <= *d1) slice.push_back(p);
  const PointSet st = star(alpha, slice);
  // the slice's deepest level bounds how far the star can reach
  double top = 0.0;
  for (PointId p : slice) top = std::max(top, pack.depth(p));
  std::vector<double> inner;
  for (PointId p : st)
    if (pack.depth(p) < top) inner.push_back(pack.depth(p));
  if (inner.empty()) return std::nullopt;
  const double low = *std::min_element(inner.begin(), inner.end());
  for (double r : ladder.radii())
    if (r < low && r < *d1) return std::make_pair(*d1, r);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// The lower-bound harness

enum class BoundVerdict { HOLDS, REFUTATION, PRECONDITION_UNMET };

inline const char* to_string(BoundVerdict v) {
  switch (v) {
    case BoundVerdict::HOLDS: return "HOLDS";
    case BoundVerdict::REFUTATION: return "REFUTATION";
    case BoundVerdict::PRECONDITION_UNMET: return "PRECONDITION_UNMET";
  }
  return "PRECONDITION_UNMET";
}

struct BoundCertificate {
  PointId witness_point = 0;
  int mult_at_witness = 0;
  int bound = 0;  // known_dim + 2
  BoundVerdict verdict = BoundVerdict::PRECONDITION_UNMET;
  std::string unmet;  // which precondition failed, if any
};

/// Asserts multiplicity(α) >= known_dim + 2 for covers of a cylindrical pack
/// that cover X̂, pass the uniformity verdict and, when `open_witness` is given,
/// are refined by its ball cover (the discrete stand-in for openness).
/// `open_balls` is a precomputed ball cover of the openness witness.
inline BoundCertificate lower_bound_check_with(const DiscretePack& pack, const ScaleLadder& ladder, const Cover& alpha,
                                               const Cover* open_balls, double tol = Tol{}.unif) {
  if (!pack.meta().cylindrical)
    throw Error(ErrorCode::NonCylindricalPack, to_string(pack.meta().kind) + " is not cylindrical");
  BoundCertificate c;
  c.bound = pack.meta().known_dim + 2;
  if (alpha.target != pack.interior() || !alpha.covers()) {
    c.unmet = "NotACover";
    return c;
  }
  if (uniformity_verdict(pack, ladder, alpha, tol).verdict != Verdict::ACCEPT) {
    c.unmet = "PreconditionNotUniform";
    return c;
  }
  if (open_balls && !is_refinement(*open_balls, alpha)) {
    c.unmet = "PreconditionNotOpen";
    return c;
  }
  c.witness_point = multiplicity_witness(alpha);
  c.mult_at_witness = mult_at(alpha, c.witness_point);
  c.verdict = c.mult_at_witness >= c.bound ? BoundVerdict::HOLDS : BoundVerdict::REFUTATION;
  return c;
}

inline BoundCertificate lower_bound_check(const DiscretePack& pack, const ScaleLadder& ladder, const Cover& alpha,
                                          const Relation* open_witness = nullptr, double tol = Tol{}.unif) {
  if (!open_witness) return lower_bound_check_with(pack, ladder, alpha, nullptr, tol);
  const Cover balls = ball_cover(*open_witness, pack.interior());
  return lower_bound_check_with(pack, ladder, alpha, &balls, tol);
}

}  // namespace cancov
