#pragma once

// Cover calculus over a pack: multiplicities, mesh, stars, refinement,
// Lebesgue numbers, uniformity verdicts and scale-dimension oracles.

#include <algorithm>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "cancov/relation.hpp"

namespace cancov {

enum class Target { interior, boundary, all };

inline const char* to_string(Target t) {
  switch (t) {
    case Target::interior: return "interior";
    case Target::boundary: return "boundary";
    case Target::all: return "all";
  }
  return "interior";
}

inline PointSet target_points(const DiscretePack& pack, Target t) {
  switch (t) {
    case Target::interior: return pack.interior();
    case Target::boundary: return pack.boundary();
    case Target::all: return pack.all_points();
  }
  return {};
}

/// Finite family of nonempty point sets, each inside `target`.
struct Cover {
  Family members;
  PointSet target;

  std::size_t size() const { return members.size(); }
  const PointSet& operator[](std::size_t i) const { return members[i]; }

  /// Whether the union equals the target.
  bool covers() const { return family_union(members) == target; }
};

/// Validates members (nonempty, sorted, inside target).
inline Cover make_cover(Family members, PointSet target) {
  for (auto& m : members) {
    m = make_set(std::move(m));
    if (m.empty()) throw Error(ErrorCode::BadInput, "empty cover member");
    if (!is_subset(m, target)) throw Error(ErrorCode::BadInput, "member leaves the target");
  }
  return Cover{std::move(members), std::move(target)};
}

inline Cover singleton_cover(const PointSet& target) {
  Family f;
  for (PointId p : target) f.push_back({p});
  return Cover{std::move(f), target};
}

inline Cover whole_cover(const PointSet& target) { return Cover{{target}, target}; }

/// Members that are nonempty after intersecting with the target.
inline Cover restrict_cover(const Cover& a, const PointSet& target) {
  Cover out{{}, target};
  for (const auto& m : a.members) {
    auto r = set_intersection(m, target);
    if (!r.empty()) out.members.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Multiplicities

namespace detail {
inline std::size_t universe_of(std::span<const PointSet> family) {
  std::size_t n = 0;
  for (const auto& m : family)
    if (!m.empty()) n = std::max<std::size_t>(n, m.back() + 1);
  return n;
}

inline std::vector<int> pointwise_counts(std::span<const PointSet> family, std::size_t n) {
  std::vector<int> c(n, 0);
  for (const auto& m : family)
    for (PointId p : m) ++c[p];
  return c;
}
}  // namespace detail

inline int mult_at(const Cover& a, PointId p) {
  int c = 0;
  for (const auto& m : a.members) c += contains(m, p) ? 1 : 0;
  return c;
}

/// Number of members meeting S.
inline int mult_on(const Cover& a, const PointSet& s) {
  int c = 0;
  for (const auto& m : a.members) c += intersects(m, s) ? 1 : 0;
  return c;
}

inline int multiplicity(std::span<const PointSet> family) {
  const auto counts = detail::pointwise_counts(family, detail::universe_of(family));
  return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

inline int multiplicity(const Cover& a) { return multiplicity(std::span<const PointSet>(a.members)); }

/// A point where the multiplicity is attained (lowest id).
inline PointId multiplicity_witness(const Cover& a) {
  const auto counts = detail::pointwise_counts(a.members, detail::universe_of(a.members));
  return static_cast<PointId>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

/// max over x of mult_on(α, E_x).
inline int mult_along(const Cover& a, const Relation& e) {
  // member index lists per point, then count distinct members over each ball
  std::vector<std::vector<std::uint32_t>> owners(e.universe());
  for (std::uint32_t i = 0; i < a.members.size(); ++i)
    for (PointId p : a.members[i])
      if (p < owners.size()) owners[p].push_back(i);
  std::vector<std::uint32_t> seen(a.members.size(), 0);
  std::uint32_t stamp = 0;
  int best = 0;
  for (PointId x = 0; x < e.universe(); ++x) {
    ++stamp;
    int c = 0;
    for (PointId y : e.ball(x))
      for (auto i : owners[y])
        if (seen[i] != stamp) seen[i] = stamp, ++c;
    best = std::max(best, c);
  }
  return best;
}

/// max over p of the summed pointwise multiplicities.
inline int common_multiplicity(std::span<const Cover> covers) {
  std::size_t n = 0;
  for (const auto& c : covers) n = std::max(n, detail::universe_of(c.members));
  std::vector<int> total(n, 0);
  for (const auto& c : covers)
    for (const auto& m : c.members)
      for (PointId p : m) ++total[p];
  return total.empty() ? 0 : *std::max_element(total.begin(), total.end());
}

inline int common_multiplicity(const Cover& a, const Cover& b) {
  const Cover both[] = {a, b};
  return common_multiplicity(both);
}

// ---------------------------------------------------------------------------
// Mesh, star, Δ(α)

inline double mesh(const DiscretePack& pack, const Cover& a) {
  double best = 0.0;
  for (const auto& m : a.members) best = std::max(best, pack.diameter(m));
  return best;
}

/// α(S): union of the members meeting S.
inline PointSet star(const Cover& a, const PointSet& s) {
  PointSet out;
  for (const auto& m : a.members)
    if (intersects(m, s)) out = set_union(out, m);
  return out;
}

/// Δ(α) = union of U x U.
inline Relation delta_of(const Cover& a, std::size_t universe) {
  std::vector<PointSet> rows(universe);
  for (const auto& m : a.members)
    for (PointId p : m) rows[p] = set_union(rows[p], m);
  return Relation::from_rows(std::move(rows));
}

// ---------------------------------------------------------------------------
// Refinement

struct RefinementWitness {
  std::vector<std::size_t> assignment;  // member of β -> member of α containing it
};

inline std::optional<std::size_t> embedding_member(const Cover& a, const PointSet& v) {
  for (std::size_t i = 0; i < a.members.size(); ++i)
    if (is_subset(v, a.members[i])) return i;
  return std::nullopt;
}

inline RefinementWitness refines(const Cover& b, const Cover& a) {
  RefinementWitness w;
  for (std::size_t j = 0; j < b.members.size(); ++j) {
    auto i = embedding_member(a, b.members[j]);
    if (!i) throw Error(ErrorCode::NotARefinement, "member " + std::to_string(j) + " embeds nowhere");
    w.assignment.push_back(*i);
  }
  return w;
}

inline bool is_refinement(const Cover& b, const Cover& a) {
  for (const auto& v : b.members)
    if (!embedding_member(a, v)) return false;
  return true;
}

inline bool check_witness(const Cover& b, const Cover& a, const RefinementWitness& w) {
  if (w.assignment.size() != b.members.size()) return false;
  for (std::size_t j = 0; j < b.members.size(); ++j)
    if (w.assignment[j] >= a.members.size() || !is_subset(b.members[j], a.members[w.assignment[j]]))
      return false;
  return true;
}

/// min over p of max over U containing p of d(p, target \ U), capped at diam(target).
inline double lebesgue_number(const DiscretePack& pack, const Cover& b) {
  const double cap = pack.diameter(b.target);
  double best = kInfinity;
  for (PointId p : b.target) {
    double local = -1.0;
    for (const auto& m : b.members) {
      if (!contains(m, p)) continue;
      double gap = kInfinity;
      for (PointId q : b.target)
        if (!contains(m, q)) gap = std::min(gap, pack.dist(p, q));
      local = std::max(local, gap);
    }
    if (local < 0.0) throw Error(ErrorCode::NotACover, "point " + std::to_string(p) + " uncovered");
    best = std::min(best, local);
  }
  return std::min(best, cap);
}

// ---------------------------------------------------------------------------
// Uniformity

/// Curve t -> max{diam U : U meets {p in X̂ : d(p,X) <= t}}; ACCEPT when the value at
/// the resolution floor is at most tol * k_sup and the curve is monotone.
inline CurveVerdict uniformity_verdict(const DiscretePack& pack, const ScaleLadder& ladder,
                                       const Cover& a, double tol = Tol{}.unif) {
  std::vector<std::pair<double, double>> by_depth;  // (shallowest interior depth, diam)
  for (const auto& m : a.members) {
    double shallow = kInfinity;
    for (PointId p : m)
      if (!pack.is_boundary(p)) shallow = std::min(shallow, pack.depth(p));
    if (shallow < kInfinity) by_depth.emplace_back(shallow, pack.diameter(m));
  }
  std::sort(by_depth.begin(), by_depth.end());
  std::vector<double> prefix_max(by_depth.size());
  double run = 0.0;
  for (std::size_t i = 0; i < by_depth.size(); ++i) prefix_max[i] = run = std::max(run, by_depth[i].second);
  auto value_at = [&](double t) {
    auto it = std::upper_bound(by_depth.begin(), by_depth.end(), std::make_pair(t, kInfinity));
    return it == by_depth.begin() ? 0.0 : prefix_max[(it - by_depth.begin()) - 1];
  };
  return detail::depth_curve_verdict(pack, ladder, tol, value_at);
}

/// Discrete canonical-cover predicate: covers X̂ and the uniformity verdict accepts.
inline bool is_canonical(const DiscretePack& pack, const ScaleLadder& ladder, const Cover& a,
                         double tol = Tol{}.unif) {
  return a.target == pack.interior() && a.covers() &&
         uniformity_verdict(pack, ladder, a, tol).verdict == Verdict::ACCEPT;
}

// ---------------------------------------------------------------------------
// Ball and shrink covers

/// {E_x : x in target}, duplicates removed.
inline Cover ball_cover(const Relation& e, const PointSet& target) {
  Family f;
  for (PointId x : target) {
    if (e.ball(x).empty()) throw Error(ErrorCode::NotCovering, "empty ball at " + std::to_string(x));
    f.push_back(e.ball(x));
  }
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  Cover c{std::move(f), target};
  if (!c.covers()) throw Error(ErrorCode::NotCovering, "balls do not cover the target");
  for (const auto& m : c.members)
    if (!is_subset(m, target)) throw Error(ErrorCode::NotCovering, "ball leaves the target");
  return c;
}

/// γ = {V_U : U in α} with V_U = {x : E_x ⊆ U}; empty V_U are dropped.
inline Cover shrink_cover(const Relation& e, const Cover& a) {
  if (!is_symmetric(e) || !contains_diagonal_on(e, a.target))
    throw Error(ErrorCode::PreconditionKEnotRefining, "E must be symmetric and contain the diagonal");
  for (PointId x : a.target)
    if (!embedding_member(a, e.ball(x)))
      throw Error(ErrorCode::PreconditionKEnotRefining, "E_" + std::to_string(x) + " embeds nowhere");
  Cover out{{}, a.target};
  for (const auto& u : a.members) {
    PointSet v;
    for (PointId x : a.target)
      if (is_subset(e.ball(x), u)) v.push_back(x);
    if (!v.empty()) out.members.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dimension at a scale

struct ScaleDim {
  int value = 0;
  bool upper_bound = false;  // true when only a greedy bound was computed
};

namespace detail {
/// Greedy ε/4-net with closed ε/2 balls restricted to the sample.
inline int greedy_ball_mult(const DiscretePack& pack, const PointSet& pts, double eps) {
  PointSet centers;
  for (PointId p : pts) {
    bool near = false;
    for (PointId c : centers)
      if (pack.dist(p, c) <= eps / 4.0) near = true;
    if (!near) centers.push_back(p);
  }
  Family balls;
  for (PointId c : centers) {
    PointSet b;
    for (PointId p : pts)
      if (pack.dist(p, c) <= eps / 2.0) b.push_back(p);
    balls.push_back(std::move(b));
  }
  return multiplicity(std::span<const PointSet>(balls));
}
}  // namespace detail

/// Minimum multiplicity minus one over covers of `pts` with mesh <= ε in which
/// every pair of sample neighbours at distance <= ε shares a member. Exact when
/// `pts` is the boundary sample of a pack with a 1-D base parameter (linked pairs
/// are neighbours in parameter order); otherwise a greedy ball-cover bound.
inline ScaleDim dim_at_scale(const DiscretePack& pack, const PointSet& pts, double eps) {
  const auto& meta = pack.meta();
  const bool one_dim = !meta.base_param.empty() && meta.base_param.size() == pack.boundary().size() &&
                       is_subset(pts, pack.boundary()) && meta.kind != PackKindTag::cube_face;
  if (!one_dim) return {std::max(0, detail::greedy_ball_mult(pack, pts, eps) - 1), true};
  if (pts.size() <= 1) return {0, false};

  std::vector<std::pair<double, PointId>> order;
  for (PointId p : pts) {
    auto idx = std::lower_bound(pack.boundary().begin(), pack.boundary().end(), p) - pack.boundary().begin();
    order.emplace_back(meta.base_param[idx], p);
  }
  std::sort(order.begin(), order.end());
  // a linked run whose diameter exceeds ε cannot be one member, and cutting it
  // forces a shared point; otherwise runs partition the sample
  const std::size_t m = order.size();
  std::vector<bool> link(m, false);  // link[i]: order[i] -- order[i+1 mod m]
  for (std::size_t i = 0; i + 1 < m; ++i) link[i] = pack.dist(order[i].second, order[i + 1].second) <= eps;
  if (meta.base_periodic && m > 2) link[m - 1] = pack.dist(order[m - 1].second, order[0].second) <= eps;
  if (meta.base_periodic && std::all_of(link.begin(), link.end(), [](bool b) { return b; }))
    return {pack.diameter(pts) <= eps ? 0 : 1, false};
  std::size_t start = 0;
  if (meta.base_periodic) {
    while (link[start]) ++start;
    start = (start + 1) % m;
  }
  PointSet run{order[start].second};
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = (start + k) % m;
    const bool last = k + 1 == m;
    if (!last && link[i]) {
      run.push_back(order[(i + 1) % m].second);
      continue;
    }
    if (pack.diameter(make_set(run)) > eps) return {1, false};
    if (!last) run = {order[(i + 1) % m].second};
  }
  return {0, false};
}

}  // namespace cancov
