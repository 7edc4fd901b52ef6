#pragma once

// The Ext map v, covers α({β_k},{W_{n_k}}) built from boundary covers and a
// ladder, the subsequence recursion that makes them refine a given uniform
// cover, star expansion, and the minimal-multiplicity pipeline.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cancov/providers.hpp"

namespace cancov {

/// v(U) = {p : d(p,U) < d(p, X \ U)} with d(., {}) = infinity.
inline PointSet ext(const DiscretePack& pack, const PointSet& u) {
  if (!is_subset(u, pack.boundary()))
    throw Error(ErrorCode::NotBoundarySubset, "ext takes a subset of X");
  const PointSet rest = set_difference(pack.boundary(), u);
  PointSet out;
  for (PointId p = 0; p < pack.size(); ++p)
    if (pack.dist_to_set(p, u) < pack.dist_to_set(p, rest)) out.push_back(p);
  return out;
}

/// {v(U) : U in α} as a family over all points, empties dropped.
inline Family ext_family(const DiscretePack& pack, const Cover& alpha) {
  Family out;
  for (const auto& u : alpha.members) {
    auto v = ext(pack, u);
    if (!v.empty()) out.push_back(std::move(v));
  }
  return out;
}

struct AlphaCover {
  Cover cover;                             // over X̂
  std::vector<std::size_t> member_annulus; // annulus index of each member
};

/// Members U ∩ annulus(n) for U in betas[n], n = 0 .. annulus_count - 1.
inline AlphaCover build_alpha_tagged(const DiscretePack& pack, const ScaleLadder& ladder,
                                     const std::vector<Family>& betas) {
  const std::size_t count = annulus_count(ladder);
  if (betas.size() < count)
    throw Error(ErrorCode::BadInput, "need one beta family per annulus");
  AlphaCover out{Cover{{}, pack.interior()}, {}};
  for (std::size_t n = 0; n < count; ++n) {
    if (!is_subset(pack.boundary(), family_union(betas[n])))
      throw Error(ErrorCode::BetaDoesNotCoverBoundary, "beta " + std::to_string(n));
    const PointSet ring = annulus(pack, ladder, n);
    if (ring.empty()) continue;
    for (const auto& u : betas[n]) {
      auto m = set_intersection(u, ring);
      if (m.empty()) continue;
      out.cover.members.push_back(std::move(m));
      out.member_annulus.push_back(n);
    }
  }
  return out;
}

inline Cover build_alpha(const DiscretePack& pack, const ScaleLadder& ladder,
                         const std::vector<Family>& betas) {
  return build_alpha_tagged(pack, ladder, betas).cover;
}

/// Lazily built boundary-neighbourhood families β_k.
class BetaSource {
 public:
  using Generator = std::function<Family(std::size_t)>;
  BetaSource(Generator gen, std::size_t limit) : gen_(std::move(gen)), limit_(limit) {}

  std::size_t limit() const { return limit_; }
  const Family& at(std::size_t k) {
    while (cache_.size() <= k) cache_.push_back(gen_(cache_.size()));
    return cache_[k];
  }

 private:
  Generator gen_;
  std::size_t limit_;
  std::vector<Family> cache_;
};

struct Subsequence {
  std::vector<std::size_t> indices;  // n_0 = 0 < n_1 < ... into the ladder
  ScaleLadder subladder;
  AlphaCover alpha;
  RefinementWitness witness;         // for the refined cover (excluded points removed)
};

namespace detail {

/// max diam of members of γ lying inside W_n, for every n.
inline std::vector<double> inner_mesh(const DiscretePack& pack, const ScaleLadder& ladder, const Cover& g) {
  std::vector<double> out(ladder.size(), 0.0);
  for (const auto& v : g.members) {
    const double top = pack.max_depth(v);
    const double diam = pack.diameter(v);
    for (std::size_t n = 0; n < ladder.size() && top < ladder[n]; ++n) out[n] = std::max(out[n], diam);
  }
  return out;
}

inline Cover drop_points(const Cover& c, const PointSet& excluded) {
  Cover out{{}, set_difference(c.target, excluded)};
  for (const auto& m : c.members) {
    auto r = set_difference(m, excluded);
    if (!r.empty()) out.members.push_back(std::move(r));
  }
  return out;
}

inline std::size_t first_index_below(const ScaleLadder& ladder, double value, std::size_t from) {
  for (std::size_t n = from; n < ladder.size(); ++n)
    if (ladder[n] < value) return n;
  return ladder.size();
}

}  // namespace detail

/// Chooses n_0 = 0 < n_1 < ... so that γ refines α({β_k},{W_{n_k}}), stopping
/// once a chosen rung lies below every interior depth. Points in `excluded`
/// are ignored by the coverage requirement and by the refinement check.
inline Subsequence refine_subsequence(const DiscretePack& pack, const ScaleLadder& ladder, BetaSource& betas,
                                      const Cover& gamma, const PointSet& excluded = {}) {
  check_ladder(pack, ladder);
  const auto inner = detail::inner_mesh(pack, ladder, gamma);
  const PointSet all = pack.all_points();
  auto exhausted = [](const std::string& why) { throw Error(ErrorCode::LadderExhausted, why); };

  std::vector<std::size_t> idx{0};
  for (std::size_t k = 1; ladder[idx.back()] >= pack.delta_res(); ++k) {
    if (k >= betas.limit()) exhausted("ran out of boundary covers at k = " + std::to_string(k));
    const Family& beta = betas.at(k);
    const PointSet covered = family_union(beta);

    std::size_t m = 1;
    for (; m < ladder.size(); ++m) {
      bool ok = true;
      for (PointId p : pack.interior())
        if (pack.depth(p) <= ladder[m] && !contains(excluded, p) && !contains(covered, p)) ok = false;
      if (ok) break;
    }
    if (m >= ladder.size()) exhausted("no rung inside the union of beta " + std::to_string(k));

    Cover leb{beta, all};
    PointSet outside;
    for (PointId p : all)
      if (pack.depth(p) > ladder[m]) outside.push_back(p);
    if (!outside.empty()) leb.members.push_back(outside);
    const double big_l = lebesgue_number(pack, leb);

    std::size_t m1 = 0;
    while (m1 < ladder.size() && !(inner[m1] < big_l)) ++m1;
    if (m1 >= ladder.size()) exhausted("no rung where gamma is finer than the Lebesgue number");

    PointSet deep;
    for (PointId p : pack.interior())
      if (pack.depth(p) >= ladder[idx.back()]) deep.push_back(p);
    const double floor_depth = pack.min_depth(star(gamma, deep));
    const std::size_t m2 = detail::first_index_below(ladder, floor_depth, 0);

    const std::size_t nk = std::max({idx.back() + 1, m + 1, m1, m2});
    if (nk >= ladder.size()) exhausted("subsequence index " + std::to_string(nk) + " past the ladder");
    idx.push_back(nk);
  }
  if (idx.back() + 1 >= ladder.size()) exhausted("no rung after the last chosen index");
  idx.push_back(idx.back() + 1);

  std::vector<double> radii;
  for (auto n : idx) radii.push_back(ladder[n]);
  Subsequence out;
  out.indices = idx;
  out.subladder = ScaleLadder(std::move(radii));
  std::vector<Family> fams;
  for (std::size_t k = 0; k < annulus_count(out.subladder); ++k) fams.push_back(betas.at(k));
  out.alpha = build_alpha_tagged(pack, out.subladder, fams);

  const Cover pruned_alpha = detail::drop_points(out.alpha.cover, excluded);
  const Cover pruned_gamma = detail::drop_points(gamma, excluded);
  try {
    out.witness = refines(pruned_gamma, pruned_alpha);
  } catch (const Error& e) {
    throw Error(ErrorCode::RefinementFailed, e.what());
  }
  if (!pruned_alpha.covers()) throw Error(ErrorCode::RefinementFailed, "built cover misses points");
  return out;
}

// ---------------------------------------------------------------------------
// Coverage completion and the pipelines

namespace detail {

/// Adds each uncovered interior point to the lowest-index member of the deepest
/// annulus containing it, or as a singleton when that annulus has no member.
inline std::size_t complete_coverage(const DiscretePack& pack, AlphaCover& a, const ScaleLadder& sub) {
  Marks covered(pack.size());
  for (const auto& m : a.cover.members) covered.set(m);
  std::size_t added = 0;
  for (PointId p : pack.interior()) {
    if (covered[p]) continue;
    ++added;
    std::optional<std::size_t> ring;
    for (std::size_t n = 0; n < annulus_count(sub); ++n)
      if (sub[n + 2] < pack.depth(p) && pack.depth(p) < sub[n]) ring = n;
    if (!ring) throw Error(ErrorCode::RefinementFailed, "point outside every annulus");
    std::size_t j = 0;
    while (j < a.member_annulus.size() && a.member_annulus[j] != *ring) ++j;
    if (j < a.member_annulus.size()) {
      a.cover.members[j] = set_union(a.cover.members[j], {p});
    } else {
      a.cover.members.push_back({p});
      a.member_annulus.push_back(*ring);
    }
  }
  return added;
}

inline Cover with_singletons(const Cover& g, const PointSet& target) {
  Cover out = g;
  for (PointId p : target) out.members.push_back({p});
  return out;
}

inline PointSet orphans_of(const DiscretePack& pack, const Family& beta) {
  return set_difference(pack.interior(), family_union(beta));
}

}  // namespace detail

struct CanonicalResult {
  Cover cover;
  std::vector<std::size_t> member_annulus;
  std::vector<std::size_t> subsequence;
  ScaleLadder ladder;
  ScaleLadder subladder;
  std::size_t shift = 1;       // β_k is built from boundary cover k + shift - 1 for k >= 1
  RefinementWitness witness;   // γ ≺ cover
  bool witness_ok = false;
  CurveVerdict uniformity;
  int multiplicity = 0;
  std::size_t orphans = 0;
};

struct PipelineOptions {
  std::optional<ScaleLadder> ladder;  // default: default_ladder(pack)
  double unif_tol = Tol{}.unif;
  std::size_t max_covers = 48;
  std::optional<std::size_t> shift;   // default: smallest shift whose output is uniform
  std::size_t max_shift = 16;
};

namespace detail {

inline void require_uniform(const DiscretePack& pack, const ScaleLadder& ladder, const Cover& g, double tol) {
  if (g.target != pack.interior() || !g.covers())
    throw Error(ErrorCode::PreconditionNotUniform, "γ must cover X̂");
  if (uniformity_verdict(pack, ladder, g, tol).verdict != Verdict::ACCEPT)
    throw Error(ErrorCode::PreconditionNotUniform, "γ fails the uniformity verdict");
}

inline CanonicalResult run_once(const DiscretePack& pack, const Cover& gamma, BetaSource& betas,
                                const ScaleLadder& ladder, const PipelineOptions& opt) {
  CanonicalResult r;
  r.ladder = ladder;
  // ties in ext leave some interior points outside every v(U); they are kept out
  // of the recursion and restored by the completion step
  PointSet excluded;
  for (std::size_t k = 0; k < betas.limit(); ++k) {
    excluded = set_union(excluded, orphans_of(pack, betas.at(k)));
    if (k > 2 && mesh_schedule(pack, k) < pack.delta_res() / 8.0) break;
  }
  const Cover target = with_singletons(gamma, pack.interior());
  auto sub = refine_subsequence(pack, r.ladder, betas, target, excluded);
  r.orphans = complete_coverage(pack, sub.alpha, sub.subladder);
  r.cover = std::move(sub.alpha.cover);
  r.member_annulus = std::move(sub.alpha.member_annulus);
  r.subsequence = std::move(sub.indices);
  r.subladder = std::move(sub.subladder);

  try {
    r.witness = refines(gamma, r.cover);
    r.witness_ok = check_witness(gamma, r.cover, r.witness) && r.cover.covers();
  } catch (const Error& e) {
    throw Error(ErrorCode::RefinementFailed, e.what());
  }
  if (!r.witness_ok) throw Error(ErrorCode::RefinementFailed, "completed cover fails the witness check");
  r.uniformity = uniformity_verdict(pack, r.ladder, r.cover, opt.unif_tol);
  r.multiplicity = multiplicity(r.cover);
  return r;
}

/// Runs the recursion with β_k taken from `family_at(k + shift - 1)` for k >= 1
/// and β_0 = {T X}. Without a fixed shift, the smallest shift giving a uniform
/// output wins; if none does, the last successful run is returned.
template <class FamilyAt>
CanonicalResult run_canonical(const DiscretePack& pack, const Cover& gamma, FamilyAt family_at,
                              const PipelineOptions& opt) {
  const ScaleLadder ladder = opt.ladder ? *opt.ladder : default_ladder(pack);
  require_uniform(pack, ladder, gamma, opt.unif_tol);
  const std::size_t lo = opt.shift ? *opt.shift : 1;
  const std::size_t hi = opt.shift ? *opt.shift : opt.max_shift;
  std::optional<CanonicalResult> last;
  std::optional<Error> last_error;
  for (std::size_t s = lo; s <= hi; ++s) {
    BetaSource betas(
        [&](std::size_t k) { return k == 0 ? Family{pack.all_points()} : family_at(k + s - 1); },
        opt.max_covers);
    try {
      auto r = run_once(pack, gamma, betas, ladder, opt);
      r.shift = s;
      if (r.uniformity.verdict == Verdict::ACCEPT) return r;
      last = std::move(r);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::LadderExhausted && e.code() != ErrorCode::RefinementFailed) throw;
      last_error = e;
    }
  }
  if (last) return *last;
  throw *last_error;
}

}  // namespace detail

/// Greedy centres at spacing below ρ, balls B(x, ρ) ∩ X pushed through ext.
inline Family boundary_ball_betas(const DiscretePack& pack, double rho) {
  PointSet centers;
  for (PointId x : pack.boundary()) {
    bool near = false;
    for (PointId c : centers)
      if (pack.dist(x, c) < rho) near = true;
    if (!near) centers.push_back(x);
  }
  Cover balls{{}, pack.boundary()};
  for (PointId c : centers) {
    PointSet b;
    for (PointId x : pack.boundary())
      if (pack.dist(x, c) < rho) b.push_back(x);
    balls.members.push_back(std::move(b));
  }
  return ext_family(pack, balls);
}

/// A canonical cover refining γ, built from boundary ball covers of radius ε_i/2.
inline CanonicalResult canonical_refining(const DiscretePack& pack, const Cover& gamma,
                                          const PipelineOptions& opt = {}) {
  std::map<std::size_t, Family> cache;
  auto family_at = [&](std::size_t i) -> Family {
    auto it = cache.find(i);
    if (it == cache.end())
      it = cache.emplace(i, boundary_ball_betas(pack, mesh_schedule(pack, i) / 2.0)).first;
    return it->second;
  };
  return detail::run_canonical(pack, gamma, family_at, opt);
}

struct PipelineReport {
  PackKindTag pack_kind = PackKindTag::custom;
  int known_dim = -1;
  std::string provider;
  CanonicalResult result;
  int bound_dim_plus_2 = 0;
  int naive_bound_2dim_plus_2 = 0;
  std::vector<int> consecutive_common;  // common multiplicity of consecutive covers used
  int max_common_mult = 0;
  int provider_max_mult = 0;
};

/// Provider covers α_i, β = ext of α_0, α_s, α_{s+1}, ..., then the subsequence
/// recursion against γ ∪ singletons and the coverage completion.
inline PipelineReport minimal_canonical(const DiscretePack& pack, const Cover& gamma,
                                        const CoverProvider& provider, const PipelineOptions& opt = {}) {
  if (provider.dim() != pack.meta().known_dim)
    throw Error(ErrorCode::ProviderMismatch, provider.tag() + " has dimension " +
                                                 std::to_string(provider.dim()) + ", pack has " +
                                                 std::to_string(pack.meta().known_dim));
  std::vector<Cover> alphas;
  std::vector<std::optional<Family>> exts;
  auto alpha_at = [&](std::size_t i) -> const Cover& {
    while (alphas.size() <= i) {
      const std::size_t j = alphas.size();
      alphas.push_back(provider.cover_at(pack, j, mesh_schedule(pack, j)));
      exts.emplace_back();
    }
    return alphas[i];
  };
  auto family_at = [&](std::size_t i) -> Family {
    alpha_at(i);
    if (!exts[i]) exts[i] = ext_family(pack, alphas[i]);
    return *exts[i];
  };

  PipelineReport rep;
  rep.pack_kind = pack.meta().kind;
  rep.known_dim = pack.meta().known_dim;
  rep.provider = provider.tag();
  rep.result = detail::run_canonical(pack, gamma, family_at, opt);
  rep.bound_dim_plus_2 = rep.known_dim + 2;
  rep.naive_bound_2dim_plus_2 = 2 * rep.known_dim + 2;

  // sequence invariants for the covers that were actually used
  std::vector<std::size_t> used{0};
  for (std::size_t k = 1; k < annulus_count(rep.result.subladder); ++k) used.push_back(k + rep.result.shift - 1);
  for (std::size_t j = 0; j < used.size(); ++j) {
    const Cover& a = alpha_at(used[j]);
    if (!a.covers()) throw Error(ErrorCode::ProviderInvariant, "cover " + std::to_string(used[j]) + " misses X");
    if (used[j] > 0 && mesh(pack, a) > mesh_schedule(pack, used[j]))
      throw Error(ErrorCode::ProviderInvariant, "mesh of cover " + std::to_string(used[j]));
    rep.provider_max_mult = std::max(rep.provider_max_mult, multiplicity(a));
    if (j > 0) {
      rep.consecutive_common.push_back(common_multiplicity(alpha_at(used[j - 1]), a));
      rep.max_common_mult = std::max(rep.max_common_mult, rep.consecutive_common.back());
    }
  }
  if (rep.max_common_mult > rep.bound_dim_plus_2)
    throw Error(ErrorCode::ProviderInvariant, "common multiplicity exceeds dim + 2");
  return rep;
}

// ---------------------------------------------------------------------------
// Star expansion

/// {E(β(U)) : U in γ}, no precondition checks.
inline Cover star_expand_raw(const Relation& e, const Cover& beta, const Cover& gamma) {
  Cover out{{}, gamma.target};
  for (const auto& u : gamma.members) out.members.push_back(image(e, star(beta, u)));
  out.target = family_union(out.members);
  out.target = set_union(out.target, gamma.target);
  return out;
}

/// E ∘ Δ(β)(γ) with its preconditions checked.
inline Cover star_expand(const DiscretePack& pack, const ScaleLadder& ladder, const Relation& e,
                         const Cover& beta, const Cover& gamma, const Tol& tol = {}) {
  if (!is_symmetric(e)) throw Error(ErrorCode::PreconditionNotSymmetric, "E is not symmetric");
  if (!contains_diagonal_on(e, pack.interior()))
    throw Error(ErrorCode::PreconditionNotDiagonalNbhd, "E misses part of the diagonal");
  if (c0_modulus(pack, ladder, e, tol.c0).verdict != Verdict::ACCEPT)
    throw Error(ErrorCode::PreconditionNotC0, "E fails the C0 verdict");
  for (const Cover* c : {&beta, &gamma})
    if (uniformity_verdict(pack, ladder, *c, tol.unif).verdict != Verdict::ACCEPT)
      throw Error(ErrorCode::PreconditionNotUniform, "input cover fails the uniformity verdict");
  return star_expand_raw(e, beta, gamma);
}

}  // namespace cancov
