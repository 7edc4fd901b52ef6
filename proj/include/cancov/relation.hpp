#pragma once

// Relations on a pack: E is a set of ordered pairs (p,q). The ball at x is
// E_x = {y : (y,x) in E}, so E(K) = union of E_x over x in K and
// (E o F)_x = E(F_x).

#include <algorithm>
#include <utility>
#include <vector>

#include "cancov/metric_core.hpp"

namespace cancov {

class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t universe) : succ_(universe), pred_(universe) {}

  Relation(std::size_t universe, const std::vector<std::pair<PointId, PointId>>& pairs)
      : Relation(universe) {
    for (auto [p, q] : pairs) {
      if (p >= universe || q >= universe) throw Error(ErrorCode::BadInput, "pair outside the pack");
      succ_[p].push_back(q);
      pred_[q].push_back(p);
    }
    normalize();
  }

  std::size_t universe() const { return succ_.size(); }

  /// E_x = {y : (y,x) in E}.
  const PointSet& ball(PointId x) const { return pred_[x]; }
  /// {y : (x,y) in E}.
  const PointSet& row(PointId x) const { return succ_[x]; }

  bool contains(PointId p, PointId q) const { return cancov::contains(succ_[p], q); }

  std::size_t pair_count() const {
    std::size_t n = 0;
    for (const auto& r : succ_) n += r.size();
    return n;
  }

  std::vector<std::pair<PointId, PointId>> pairs() const {
    std::vector<std::pair<PointId, PointId>> out;
    for (PointId p = 0; p < succ_.size(); ++p)
      for (PointId q : succ_[p]) out.emplace_back(p, q);
    return out;
  }

  bool operator==(const Relation& o) const { return succ_ == o.succ_; }

  /// Builds from per-point rows {q : (p,q) in E}; rows must be sorted.
  static Relation from_rows(std::vector<PointSet> rows) {
    Relation r;
    r.pred_.assign(rows.size(), {});
    for (PointId p = 0; p < rows.size(); ++p)
      for (PointId q : rows[p]) r.pred_[q].push_back(p);
    r.succ_ = std::move(rows);
    return r;
  }

 private:
  void normalize() {
    for (auto& r : succ_) r = make_set(std::move(r));
    for (auto& r : pred_) r = make_set(std::move(r));
  }

  std::vector<PointSet> succ_;
  std::vector<PointSet> pred_;
};

namespace detail {
inline void same_universe(const Relation& e, const Relation& f) {
  if (e.universe() != f.universe()) throw Error(ErrorCode::PackMismatch, "relations over different packs");
}
}  // namespace detail

inline Relation diagonal(std::size_t universe) {
  std::vector<PointSet> rows(universe);
  for (PointId p = 0; p < universe; ++p) rows[p] = {p};
  return Relation::from_rows(std::move(rows));
}

inline Relation diagonal(const DiscretePack& pack) { return diagonal(pack.size()); }

/// Diagonal of a subset only.
inline Relation diagonal_on(std::size_t universe, const PointSet& s) {
  std::vector<PointSet> rows(universe);
  for (PointId p : s) rows[p] = {p};
  return Relation::from_rows(std::move(rows));
}

inline Relation full_relation(std::size_t universe, const PointSet& s) {
  std::vector<PointSet> rows(universe);
  for (PointId p : s) rows[p] = s;
  return Relation::from_rows(std::move(rows));
}

inline Relation inverse(const Relation& e) {
  std::vector<PointSet> rows(e.universe());
  for (PointId p = 0; p < e.universe(); ++p) rows[p] = e.ball(p);
  return Relation::from_rows(std::move(rows));
}

/// E(K) = {y : (y,x) in E for some x in K}.
inline PointSet image(const Relation& e, const PointSet& k) {
  Marks m(e.universe());
  for (PointId x : k) m.set(e.ball(x));
  return m.collect();
}

inline PointSet ball(const Relation& e, PointId p) { return e.ball(p); }

/// E o F = {(x,z) : (x,y) in E, (y,z) in F}.
inline Relation compose(const Relation& e, const Relation& f) {
  detail::same_universe(e, f);
  std::vector<PointSet> rows(e.universe());
  Marks m(e.universe());
  for (PointId x = 0; x < e.universe(); ++x) {
    for (PointId y : e.row(x)) m.set(f.row(y));
    rows[x] = m.collect();
    m.clear(rows[x]);
  }
  return Relation::from_rows(std::move(rows));
}

inline Relation relation_union(const Relation& e, const Relation& f) {
  detail::same_universe(e, f);
  std::vector<PointSet> rows(e.universe());
  for (PointId x = 0; x < e.universe(); ++x) rows[x] = set_union(e.row(x), f.row(x));
  return Relation::from_rows(std::move(rows));
}

inline bool is_symmetric(const Relation& e) {
  for (PointId x = 0; x < e.universe(); ++x)
    if (e.row(x) != e.ball(x)) return false;
  return true;
}

/// Whether (p,p) is in E for every p in s.
inline bool contains_diagonal_on(const Relation& e, const PointSet& s) {
  for (PointId p : s)
    if (!e.contains(p, p)) return false;
  return true;
}

/// Image of E under f x f, for a map f given pointwise into a universe of size m.
inline Relation push_forward(const Relation& e, const std::vector<PointId>& f, std::size_t m) {
  std::vector<std::pair<PointId, PointId>> out;
  for (auto [p, q] : e.pairs()) out.emplace_back(f[p], f[q]);
  return Relation(m, out);
}

/// f^{-1}(S) for a pointwise map f.
inline PointSet preimage(const std::vector<PointId>& f, const PointSet& s) {
  PointSet out;
  for (PointId p = 0; p < f.size(); ++p)
    if (contains(s, f[p])) out.push_back(p);
  return out;
}

// ---------------------------------------------------------------------------
// Verdicts

enum class Verdict { ACCEPT, REJECT };

inline const char* to_string(Verdict v) { return v == Verdict::ACCEPT ? "ACCEPT" : "REJECT"; }

struct CurveVerdict {
  ModulusCurve curve;       // sampled on the ladder radii
  double floor_t = 0.0;     // evaluation point, the pack's delta_res
  double floor_value = 0.0;
  double threshold = 0.0;   // tol * k_sup
  bool monotone = true;
  Verdict verdict = Verdict::REJECT;
};

struct Tol {
  double c0 = 0.05;
  double unif = 0.05;
};

namespace detail {
/// Builds a verdict from a "max displacement seen at depth <= t" oracle.
template <class ValueAt>
CurveVerdict depth_curve_verdict(const DiscretePack& pack, const ScaleLadder& ladder, double tol,
                                 ValueAt value_at) {
  CurveVerdict out;
  std::vector<ModulusCurve::Sample> samples;
  for (double t : ladder.radii()) samples.push_back({t, value_at(t)});
  out.curve = ModulusCurve(std::move(samples));
  out.floor_t = pack.delta_res();
  out.floor_value = value_at(out.floor_t);
  out.threshold = tol * pack.k_sup();
  out.monotone = out.curve.nondecreasing();
  out.verdict = out.monotone && out.floor_value <= out.threshold ? Verdict::ACCEPT : Verdict::REJECT;
  return out;
}
}  // namespace detail

/// Curve t -> max{d(p,q) : (p,q) in E, min(d(p,X), d(q,X)) <= t}; ACCEPT when the
/// value at the resolution floor is at most tol * k_sup and the curve is monotone.
inline CurveVerdict c0_modulus(const DiscretePack& pack, const ScaleLadder& ladder, const Relation& e,
                               double tol = Tol{}.c0) {
  if (e.universe() != pack.size()) throw Error(ErrorCode::PackMismatch, "relation size");
  std::vector<std::pair<double, double>> by_depth;  // (min depth, displacement)
  for (auto [p, q] : e.pairs())
    by_depth.emplace_back(std::min(pack.depth(p), pack.depth(q)), pack.dist(p, q));
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

// ---------------------------------------------------------------------------
// Diagonal neighbourhoods and E_{d,lambda}

/// λ as a step-interpolated modulus curve.
using LambdaSpec = ModulusCurve;

inline double lambda_at(const LambdaSpec& lambda, double t) { return lambda.step_value(t); }

/// λ(t) = slope * t sampled on the ladder.
inline LambdaSpec linear_lambda(const ScaleLadder& ladder, double slope) {
  std::vector<ModulusCurve::Sample> s;
  for (double t : ladder.radii()) s.push_back({t, slope * t});
  return LambdaSpec(std::move(s));
}

inline LambdaSpec constant_lambda(const ScaleLadder& ladder, double value) {
  std::vector<ModulusCurve::Sample> s;
  for (double t : ladder.radii()) s.push_back({t, value});
  return LambdaSpec(std::move(s));
}

/// {(p,q) in X̂ x X̂ : d(p,q) < λ(min(d(p,X), d(q,X)))}.
inline Relation diag_nbhd_from_lambda(const DiscretePack& pack, const LambdaSpec& lambda) {
  std::vector<PointSet> rows(pack.size());
  for (PointId p : pack.interior())
    for (PointId q : pack.interior())
      if (pack.dist(p, q) < lambda_at(lambda, std::min(pack.depth(p), pack.depth(q))))
        rows[p].push_back(q);
  return Relation::from_rows(std::move(rows));
}

/// φ(t) = h(t) + λ(t) + h(t + λ(t)).
inline double phi_at(const DiscretePack& pack, const LambdaSpec& lambda, double t) {
  const double l = lambda_at(lambda, t);
  return h_at(pack, t) + l + h_at(pack, t + l);
}

inline ModulusCurve phi_curve(const DiscretePack& pack, const ScaleLadder& ladder,
                              const LambdaSpec& lambda) {
  std::vector<ModulusCurve::Sample> s;
  for (double t : ladder.radii()) s.push_back({t, phi_at(pack, lambda, t)});
  return ModulusCurve(std::move(s));
}

/// E_{d,λ} = {(p,q) in X̂ x X̂ : d(p,q) < φ(min(d(p,X), d(q,X)))}.
inline Relation controlled_E(const DiscretePack& pack, const ScaleLadder& ladder,
                             const LambdaSpec& lambda, double lambda_tol_factor = Tol{}.c0) {
  if (lambda.empty() || !lambda.nondecreasing())
    throw Error(ErrorCode::LambdaNotDecaying, "λ must be nondecreasing in t");
  const double tail = lambda_at(lambda, ladder.smallest());
  if (tail > lambda_tol_factor * pack.k_sup())
    throw Error(ErrorCode::LambdaNotDecaying,
                "λ at the smallest rung is " + std::to_string(tail));
  // φ depends on p only through its depth; evaluate once per distinct depth
  std::vector<double> phi(pack.size(), 0.0);
  std::vector<std::pair<double, double>> memo;
  for (PointId p : pack.interior()) {
    const double t = pack.depth(p);
    auto it = std::find_if(memo.begin(), memo.end(), [&](auto& m) { return m.first == t; });
    if (it == memo.end()) {
      memo.emplace_back(t, phi_at(pack, lambda, t));
      it = memo.end() - 1;
    }
    phi[p] = it->second;
  }
  std::vector<PointSet> rows(pack.size());
  for (PointId p : pack.interior())
    for (PointId q : pack.interior())
      if (pack.dist(p, q) < std::min(phi[p], phi[q])) rows[p].push_back(q);
  return Relation::from_rows(std::move(rows));
}

}  // namespace cancov
