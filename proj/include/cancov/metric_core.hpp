#pragma once

// Discretized compactification packs: a finite metric sample of a compact
// space T X split into a boundary X and its complement (the interior).
// Also houses scale ladders, modulus curves, the h profile and annuli.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cancov/error.hpp"
#include "cancov/point_set.hpp"

namespace cancov {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class PackKindTag {
  finite_cylinder,
  interval_cylinder,
  circle_in_disk,
  cube_face,
  countable_example,
  custom,
};

inline std::string to_string(PackKindTag tag) {
  switch (tag) {
    case PackKindTag::finite_cylinder: return "finite_cylinder";
    case PackKindTag::interval_cylinder: return "interval_cylinder";
    case PackKindTag::circle_in_disk: return "circle_in_disk";
    case PackKindTag::cube_face: return "cube_face";
    case PackKindTag::countable_example: return "countable_example";
    case PackKindTag::custom: return "custom";
  }
  return "custom";
}

inline PackKindTag pack_kind_from_string(const std::string& s) {
  for (auto tag : {PackKindTag::finite_cylinder, PackKindTag::interval_cylinder,
                   PackKindTag::circle_in_disk, PackKindTag::cube_face,
                   PackKindTag::countable_example, PackKindTag::custom}) {
    if (to_string(tag) == s) return tag;
  }
  throw Error(ErrorCode::BadParams, "unknown pack kind '" + s + "'");
}

/// Product layout of a cylinder pack X_sample x levels. Boundary points sit at
/// level 0; grid[b][j] is the interior point over boundary point b at levels[j].
struct CylinderLayout {
  std::vector<double> levels;  // strictly decreasing, in (0, 1]
  std::vector<PointId> base_of;   // per point: its boundary point
  std::vector<double> level_of;   // per point: its level (0 on the boundary)
  std::vector<std::vector<PointId>> grid;  // [boundary index][level index]
};

struct PackMeta {
  PackKindTag kind = PackKindTag::custom;
  int known_dim = -1;
  bool cylindrical = false;
  /// Optional drawing coordinates (1 or 2 per point).
  std::vector<std::vector<double>> coords;
  /// Optional 1-D parameter of each boundary point (indexed like boundary()).
  std::vector<double> base_param;
  bool base_periodic = false;
  std::optional<CylinderLayout> cylinder;
};

struct Tolerances {
  double triangle = 1e-9;
};

class DiscretePack;
DiscretePack validate_pack(std::vector<std::int64_t> ids,
                           const std::vector<std::vector<double>>& dist,
                           const std::vector<bool>& boundary_mask,
                           const Tolerances& tol = {}, PackMeta meta = {});

namespace detail {
DiscretePack make_trusted_pack(std::vector<double> flat, std::size_t n,
                               const std::vector<bool>& boundary_mask, PackMeta meta,
                               std::vector<std::int64_t> ids = {});
}

/// Immutable finite pack. Construct through validate_pack or a generator.
class DiscretePack {
 public:
  std::size_t size() const { return n_; }
  double dist(PointId p, PointId q) const { return dist_[static_cast<std::size_t>(p) * n_ + q]; }
  bool is_boundary(PointId p) const { return boundary_mask_[p]; }
  const PointSet& boundary() const { return boundary_; }
  const PointSet& interior() const { return interior_; }
  PointSet all_points() const { return range_set(static_cast<PointId>(n_)); }
  const std::vector<std::int64_t>& ids() const { return ids_; }

  /// d(p, X), cached at construction.
  double depth(PointId p) const { return depth_[p]; }
  const std::vector<double>& depths() const { return depth_; }

  double k_sup() const { return k_sup_; }
  /// Smallest interior depth: the finest scale at which the sample sees X.
  double delta_res() const { return delta_res_; }
  /// Largest distance from a boundary point to its nearest interior point.
  double delta_dense() const { return delta_dense_; }

  const PackMeta& meta() const { return meta_; }

  double diameter(const PointSet& s) const {
    double best = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) best = std::max(best, dist(s[i], s[j]));
    return best;
  }

  /// d(p, S) with d(p, {}) = infinity.
  double dist_to_set(PointId p, const PointSet& s) const {
    double best = kInfinity;
    for (PointId q : s) best = std::min(best, dist(p, q));
    return best;
  }

  double min_depth(const PointSet& s) const {
    double best = kInfinity;
    for (PointId p : s) best = std::min(best, depth_[p]);
    return best;
  }

  double max_depth(const PointSet& s) const {
    double best = 0.0;
    for (PointId p : s) best = std::max(best, depth_[p]);
    return best;
  }

 private:
  friend DiscretePack detail::make_trusted_pack(std::vector<double>, std::size_t,
                                                const std::vector<bool>&, PackMeta,
                                                std::vector<std::int64_t>);

  DiscretePack() = default;

  std::size_t n_ = 0;
  std::vector<double> dist_;
  std::vector<bool> boundary_mask_;
  std::vector<std::int64_t> ids_;
  PointSet boundary_;
  PointSet interior_;
  std::vector<double> depth_;
  double k_sup_ = 0.0;
  double delta_res_ = 0.0;
  double delta_dense_ = 0.0;
  PackMeta meta_;
};

namespace detail {

inline DiscretePack make_trusted_pack(std::vector<double> flat, std::size_t n,
                                      const std::vector<bool>& boundary_mask, PackMeta meta,
                                      std::vector<std::int64_t> ids) {
  DiscretePack pack;
  pack.n_ = n;
  pack.dist_ = std::move(flat);
  pack.boundary_mask_ = boundary_mask;
  pack.ids_ = std::move(ids);
  if (pack.ids_.empty()) {
    pack.ids_.resize(n);
    for (std::size_t i = 0; i < n; ++i) pack.ids_[i] = static_cast<std::int64_t>(i);
  }
  for (std::size_t i = 0; i < n; ++i) {
    (boundary_mask[i] ? pack.boundary_ : pack.interior_).push_back(static_cast<PointId>(i));
  }
  if (pack.boundary_.empty()) throw Error(ErrorCode::EmptySide, "boundary X is empty");
  if (pack.interior_.empty()) throw Error(ErrorCode::EmptySide, "interior is empty");

  pack.depth_.assign(n, 0.0);
  for (PointId p : pack.interior_) pack.depth_[p] = pack.dist_to_set(p, pack.boundary_);

  pack.k_sup_ = 0.0;
  pack.delta_res_ = kInfinity;
  for (PointId p : pack.interior_) {
    pack.k_sup_ = std::max(pack.k_sup_, pack.depth_[p]);
    pack.delta_res_ = std::min(pack.delta_res_, pack.depth_[p]);
  }
  pack.delta_dense_ = 0.0;
  for (PointId x : pack.boundary_)
    pack.delta_dense_ = std::max(pack.delta_dense_, pack.dist_to_set(x, pack.interior_));
  pack.meta_ = std::move(meta);
  return pack;
}

}  // namespace detail

/// Checks metric axioms and the boundary/interior split, then builds the pack.
inline DiscretePack validate_pack(std::vector<std::int64_t> ids,
                                  const std::vector<std::vector<double>>& dist,
                                  const std::vector<bool>& boundary_mask, const Tolerances& tol,
                                  PackMeta meta) {
  const std::size_t n = dist.size();
  if (ids.size() != n || boundary_mask.size() != n)
    throw Error(ErrorCode::BadInput, "ids, distance matrix and mask sizes differ");
  for (const auto& row : dist)
    if (row.size() != n) throw Error(ErrorCode::BadInput, "distance matrix is not square");

  std::vector<double> flat(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = dist[i][j];
      if (!std::isfinite(d) || d < 0.0)
        throw Error(ErrorCode::BadInput, "distance must be finite and nonnegative");
      if (i == j && d != 0.0) throw Error(ErrorCode::BadInput, "nonzero self distance");
      if (i != j && d == 0.0) throw Error(ErrorCode::BadInput, "distinct points at distance 0");
      if (std::abs(d - dist[j][i]) > tol.triangle)
        throw Error(ErrorCode::AsymmetricDistance,
                    "d(" + std::to_string(ids[i]) + "," + std::to_string(ids[j]) + ")");
      flat[i * n + j] = d;
    }
  }

  double worst = 0.0;
  std::size_t wp = 0, wq = 0, wr = 0;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t r = 0; r < n; ++r) {
      const double direct = flat[p * n + r];
      for (std::size_t q = 0; q < n; ++q) {
        const double defect = direct - (flat[p * n + q] + flat[q * n + r]);
        if (defect > worst) {
          worst = defect;
          wp = p, wq = q, wr = r;
        }
      }
    }
  }
  if (worst > tol.triangle) {
    throw Error(ErrorCode::TriangleViolation,
                "(" + std::to_string(ids[wp]) + "," + std::to_string(ids[wq]) + "," +
                    std::to_string(ids[wr]) + ") defect " + std::to_string(worst));
  }

  return detail::make_trusted_pack(std::move(flat), n, boundary_mask, std::move(meta),
                                   std::move(ids));
}

inline double boundary_distance(const DiscretePack& pack, PointId p) { return pack.depth(p); }

// ---------------------------------------------------------------------------
// Modulus curves and scale ladders

/// Sampled t -> value function with t strictly decreasing.
class ModulusCurve {
 public:
  struct Sample {
    double t;
    double value;
  };

  ModulusCurve() = default;
  explicit ModulusCurve(std::vector<Sample> samples) : samples_(std::move(samples)) {
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      if (!(samples_[i].t > 0.0) || samples_[i].value < 0.0)
        throw Error(ErrorCode::BadInput, "modulus samples need t > 0 and value >= 0");
      if (i > 0 && !(samples_[i].t < samples_[i - 1].t))
        throw Error(ErrorCode::BadInput, "modulus t values must strictly decrease");
    }
  }

  const std::vector<Sample>& samples() const { return samples_; }
  bool empty() const { return samples_.empty(); }

  /// Value at the smallest sample t' >= t; the largest sample when t exceeds all.
  double step_value(double t) const {
    if (samples_.empty()) throw Error(ErrorCode::BadInput, "empty modulus curve");
    for (std::size_t i = samples_.size(); i-- > 0;)
      if (samples_[i].t >= t) return samples_[i].value;
    return samples_.front().value;
  }

  /// Nondecreasing in t, i.e. values never grow as t shrinks.
  bool nondecreasing() const {
    for (std::size_t i = 1; i < samples_.size(); ++i)
      if (samples_[i].value > samples_[i - 1].value) return false;
    return true;
  }

 private:
  std::vector<Sample> samples_;
};

/// Radii r_0 > r_1 > ... > r_m; W_n = {p : d(p,X) < r_n}.
class ScaleLadder {
 public:
  ScaleLadder() = default;
  explicit ScaleLadder(std::vector<double> radii) : radii_(std::move(radii)) {
    if (radii_.empty()) throw Error(ErrorCode::BadLadder, "empty ladder");
    for (std::size_t i = 0; i < radii_.size(); ++i) {
      if (!(radii_[i] > 0.0)) throw Error(ErrorCode::BadLadder, "radii must be positive");
      if (i > 0 && !(radii_[i] < radii_[i - 1]))
        throw Error(ErrorCode::BadLadder, "radii must strictly decrease");
    }
  }

  const std::vector<double>& radii() const { return radii_; }
  std::size_t size() const { return radii_.size(); }
  double operator[](std::size_t i) const { return radii_[i]; }
  double smallest() const { return radii_.back(); }

 private:
  std::vector<double> radii_;
};

/// Throws BadLadder unless r_0 > k_sup and r_m < delta_res.
inline void check_ladder(const DiscretePack& pack, const ScaleLadder& ladder) {
  if (ladder.size() < 2) throw Error(ErrorCode::BadLadder, "need at least two rungs");
  if (!(ladder[0] > pack.k_sup()))
    throw Error(ErrorCode::BadLadder, "r_0 must exceed k_sup");
  if (!(ladder.smallest() < pack.delta_res()))
    throw Error(ErrorCode::BadLadder, "smallest rung must lie below every interior depth");
}

namespace detail {
inline bool hits_sample_depth(const DiscretePack& pack, double r) {
  for (PointId p : pack.interior())
    if (std::abs(pack.depth(p) - r) <= 1e-12 * std::max(1.0, r)) return true;
  return false;
}
}  // namespace detail

/// r_0 = 2 k_sup, r_n = k_sup / (2n), nudged down off any sample depth,
/// continued until `below_floor` rungs lie under delta_res.
inline ScaleLadder harmonic_ladder(const DiscretePack& pack, int below_floor = 2) {
  const double k = pack.k_sup();
  std::vector<double> radii{2.0 * k};
  int under = 0;
  for (std::size_t n = 1; under < below_floor; ++n) {
    double r = k / (2.0 * static_cast<double>(n));
    while (detail::hits_sample_depth(pack, r)) r *= 1.0 - 1e-6;
    if (!(r < radii.back())) continue;
    radii.push_back(r);
    if (r < pack.delta_res()) ++under;
  }
  return ScaleLadder(std::move(radii));
}

/// One rung above k_sup, one rung between every pair of consecutive distinct
/// interior depths (geometric mean), and `below_floor` rungs under the floor.
inline ScaleLadder interleaved_ladder(const DiscretePack& pack, int below_floor = 2) {
  std::vector<double> depths;
  for (PointId p : pack.interior()) depths.push_back(pack.depth(p));
  std::sort(depths.begin(), depths.end(), std::greater<>());
  depths.erase(std::unique(depths.begin(), depths.end(),
                           [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
               depths.end());
  std::vector<double> radii{1.5 * depths.front()};
  for (std::size_t i = 1; i < depths.size(); ++i) radii.push_back(std::sqrt(depths[i - 1] * depths[i]));
  double r = depths.back();
  for (int i = 0; i < below_floor; ++i) {
    r *= 0.5;
    radii.push_back(r);
  }
  return ScaleLadder(std::move(radii));
}

/// The harmonic ladder while it is neither too short nor too long; otherwise the
/// interleaved ladder, which induces the same neighbourhoods W_n up to repeats.
inline ScaleLadder default_ladder(const DiscretePack& pack, std::size_t max_rungs = 4096, std::size_t min_rungs = 8) {
  if (pack.k_sup() / (2.0 * static_cast<double>(max_rungs)) >= pack.delta_res()) return interleaved_ladder(pack);
  auto h = harmonic_ladder(pack);
  return h.size() < min_rungs ? interleaved_ladder(pack) : h;
}

// ---------------------------------------------------------------------------
// h profile

namespace detail {
/// max over x in X of d(x, {p : d(p,X) >= t}).
inline double h_raw(const DiscretePack& pack, double t) {
  double best = 0.0;
  bool any = false;
  for (PointId x : pack.boundary()) {
    double nearest = kInfinity;
    for (PointId p : pack.interior()) {
      if (pack.depth(p) >= t) {
        any = true;
        nearest = std::min(nearest, pack.dist(x, p));
      }
    }
    best = std::max(best, nearest);
  }
  if (!any) throw Error(ErrorCode::EmptyComplement, "no point at depth >= " + std::to_string(t));
  return best;
}
}  // namespace detail

/// h(t) for t <= k_sup; above k_sup the profile is held at max(k_sup, h(k_sup)),
/// which equals k_sup whenever h(k_sup) <= k_sup and keeps h nondecreasing otherwise.
inline double h_at(const DiscretePack& pack, double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::BadInput, "h is defined for t > 0");
  if (t > pack.k_sup()) return std::max(pack.k_sup(), detail::h_raw(pack, pack.k_sup()));
  return detail::h_raw(pack, t);
}

inline ModulusCurve h_profile(const DiscretePack& pack, const ScaleLadder& ladder) {
  std::vector<ModulusCurve::Sample> samples;
  samples.reserve(ladder.size());
  for (double t : ladder.radii()) samples.push_back({t, h_at(pack, t)});
  return ModulusCurve(std::move(samples));
}

/// Interior points with r_{n+2} < d(p,X) < r_n.
inline PointSet annulus(const DiscretePack& pack, const ScaleLadder& ladder, std::size_t n) {
  if (n + 2 >= ladder.size())
    throw Error(ErrorCode::IndexOutOfLadder, "annulus " + std::to_string(n));
  PointSet out;
  for (PointId p : pack.interior()) {
    const double d = pack.depth(p);
    if (ladder[n + 2] < d && d < ladder[n]) out.push_back(p);
  }
  return out;
}

/// Number of annuli a ladder defines.
inline std::size_t annulus_count(const ScaleLadder& ladder) {
  return ladder.size() >= 2 ? ladder.size() - 2 : 0;
}

}  // namespace cancov
