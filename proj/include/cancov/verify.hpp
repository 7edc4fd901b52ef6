#pragma once

// Exhaustive and randomized property sweeps behind `cancov verify`.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cancov/canonical.hpp"
#include "cancov/cylinder.hpp"
#include "cancov/random.hpp"

namespace cancov {

struct CheckResult {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

struct VerifySizes {
  std::size_t identity_instances = 10000;
  std::size_t ext_packs = 40;
  std::size_t lemma_instances = 500;
  std::size_t doubling_instances = 50;
};

struct VerifySummary {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (c.failures) return false;
    return true;
  }
};

namespace detail {

class Tally {
 public:
  explicit Tally(std::string name) { r_.name = std::move(name); }
  void check(bool ok, const std::string& what) {
    ++r_.instances;
    if (!ok && r_.failures++ == 0) r_.first_failure = what;
  }
  CheckResult done() { return std::move(r_); }

 private:
  CheckResult r_;
};

inline PointSet subset_from_mask(std::uint32_t mask, const PointSet& from) {
  PointSet out;
  for (std::size_t i = 0; i < from.size(); ++i)
    if (mask >> i & 1u) out.push_back(from[i]);
  return out;
}

/// Family {E(U) : U in α}.
inline Cover image_family(const Relation& e, const Cover& a) {
  Cover out{{}, range_set(static_cast<PointId>(e.universe()))};
  for (const auto& u : a.members) out.members.push_back(image(e, u));
  return out;
}

inline void identities_on(Tally& t, const Relation& e, const Relation& f, const Cover& a, const PointSet& sa,
                          const PointSet& sb, const std::vector<PointId>& map, std::size_t m) {
  const std::size_t n = e.universe();
  t.check(image(delta_of(a, n), sa) == star(a, sa), "Δ(α)(A) = α(A)");
  const Relation ef = compose(e, f);
  for (PointId x = 0; x < n; ++x) t.check(ef.ball(x) == image(e, f.ball(x)), "(E∘F)_x = E(F_x)");
  PointSet u;
  for (PointId x : sa) u = set_union(u, e.ball(x));
  t.check(image(e, sa) == u, "E(A) = ∪ E_a");
  t.check(intersects(image(e, sa), sb) == intersects(sa, image(inverse(e), sb)), "meet identity");
  bool none = true;
  for (auto [y, b] : e.pairs())
    if (!contains(sa, y) && contains(sb, b)) none = false;
  t.check(is_subset(image(e, sb), sa) == none, "containment identity");
  const Relation ff = push_forward(e, map, m);
  for (PointId xp = 0; xp < m; ++xp) {
    PointSet rhs;
    for (PointId q : image(e, preimage(map, {xp}))) rhs = set_union(rhs, {map[q]});
    t.check(ff.ball(xp) == rhs, "(f×f(E))_x' = f(E(f^-1(x')))");
  }
}

}  // namespace detail

/// Identities relating relations, images, stars and maps.
inline CheckResult check_identities(Rng& rng, std::size_t instances) {
  detail::Tally t("identities");
  // exhaustive subsets on 5 points
  for (int rep = 0; rep < 4; ++rep) {
    const std::size_t n = 5;
    const auto e = random_relation(rng, n, 0.3);
    const auto f = random_relation(rng, n, 0.3);
    const auto a = random_cover(rng, range_set(n), 3);
    const auto map = random_map(rng, n, 3);
    const PointSet all = range_set(n);
    for (std::uint32_t ma = 0; ma < 32; ++ma)
      for (std::uint32_t mb = 0; mb < 32; ++mb)
        detail::identities_on(t, e, f, a, detail::subset_from_mask(ma, all), detail::subset_from_mask(mb, all), map, 3);
  }
  for (std::size_t i = 0; i < instances; ++i) {
    const std::size_t n = 8;
    const double density = std::uniform_real_distribution<double>(0.05, 0.5)(rng);
    const auto e = random_relation(rng, n, density);
    const auto f = random_relation(rng, n, density);
    const auto a = random_cover(rng, range_set(n), 1 + uniform_index(rng, 5));
    const auto map = random_map(rng, n, 4);
    detail::identities_on(t, e, f, a, random_subset(rng, range_set(n)), random_subset(rng, range_set(n)), map, 4);
  }
  return t.done();
}

/// Properties a)-f) of the Ext map over every boundary subset.
inline CheckResult check_ext(Rng& rng, std::size_t packs) {
  detail::Tally t("ext");
  for (std::size_t i = 0; i < packs; ++i) {
    const auto pack = random_pack(rng, 4 + uniform_index(rng, 9));
    const PointSet& x = pack.boundary();
    const std::uint32_t subsets = 1u << x.size();
    std::vector<PointSet> us(subsets), vs(subsets);
    for (std::uint32_t m = 0; m < subsets; ++m) {
      us[m] = detail::subset_from_mask(m, x);
      vs[m] = ext(pack, us[m]);
      t.check(set_intersection(vs[m], x) == us[m], "v(U) ∩ X = U");
      t.check(us[m].empty() == vs[m].empty(), "U empty iff v(U) empty");
    }
    t.check(vs[subsets - 1] == pack.all_points() && vs[0].empty(), "v(X) = TX, v(∅) = ∅");
    for (std::uint32_t a = 0; a < subsets; ++a) {
      for (std::uint32_t b = 0; b < subsets; ++b) {
        t.check(is_subset(us[a], us[b]) == is_subset(vs[a], vs[b]), "monotone both ways");
        t.check(vs[a & b] == set_intersection(vs[a], vs[b]), "v(U1 ∩ U2) = v(U1) ∩ v(U2)");
        t.check(intersects(us[a], us[b]) == intersects(vs[a], vs[b]), "nerve preserved, pairs");
      }
    }
    for (int k = 0; k < 64; ++k) {
      const std::uint32_t a = static_cast<std::uint32_t>(uniform_index(rng, subsets));
      const std::uint32_t b = static_cast<std::uint32_t>(uniform_index(rng, subsets));
      const std::uint32_t c = static_cast<std::uint32_t>(uniform_index(rng, subsets));
      t.check(((a & b & c) != 0) == !set_intersection(set_intersection(vs[a], vs[b]), vs[c]).empty(), "nerve preserved, triples");
    }
  }
  return t.done();
}

/// mult_F E(α) <= mult_{E^-1 ∘ F} α and mult E(α) <= mult_{E^-1} α.
inline CheckResult check_mult_under_images(Rng& rng, std::size_t instances) {
  detail::Tally t("multiplicity under images");
  for (std::size_t i = 0; i < instances; ++i) {
    const std::size_t n = 4 + uniform_index(rng, 6);
    const auto e = random_relation(rng, n, 0.25);
    const auto f = random_relation(rng, n, 0.25);
    const auto a = random_cover(rng, range_set(static_cast<PointId>(n)), 1 + uniform_index(rng, 5));
    const Cover ea = detail::image_family(e, a);
    t.check(mult_along(ea, f) <= mult_along(a, compose(inverse(e), f)), "mult_F E(α) <= mult_{E^-1∘F} α");
    t.check(mult_along(ea, diagonal(n)) <= mult_along(a, inverse(e)), "mult E(α) <= mult_{E^-1} α");
  }
  return t.done();
}

/// mult_E f^-1(α) <= mult_{f×f(E)} α.
inline CheckResult check_mult_under_preimages(Rng& rng, std::size_t instances) {
  detail::Tally t("multiplicity under preimages");
  for (std::size_t i = 0; i < instances; ++i) {
    const std::size_t n = 3 + uniform_index(rng, 6);
    const std::size_t m = 2 + uniform_index(rng, 5);
    const auto e = random_relation(rng, n, 0.3);
    const auto map = random_map(rng, n, m);
    const auto a = random_cover(rng, range_set(static_cast<PointId>(m)), 1 + uniform_index(rng, 4));
    Cover pre{{}, range_set(static_cast<PointId>(n))};
    for (const auto& u : a.members) pre.members.push_back(preimage(map, u));
    t.check(mult_along(pre, e) <= mult_along(a, push_forward(e, map, m)), "mult_E f^-1(α) <= mult_{f×f(E)} α");
  }
  return t.done();
}

/// Shrinking members along a surjection never raises the multiplicity.
inline CheckResult check_mult_under_shrinking(Rng& rng, std::size_t instances) {
  detail::Tally t("multiplicity under shrinking");
  for (std::size_t i = 0; i < instances; ++i) {
    const std::size_t n = 3 + uniform_index(rng, 7);
    const auto a = random_cover(rng, range_set(static_cast<PointId>(n)), 1 + uniform_index(rng, 6));
    Family b;
    for (const auto& u : a.members) {
      PointSet v;
      while (v.empty()) v = random_subset(rng, u, 0.6);
      b.push_back(std::move(v));
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    t.check(multiplicity(std::span<const PointSet>(b)) <= multiplicity(a), "mult β <= mult α");
  }
  return t.done();
}

/// Cover-calculus facts: mult_along vs multiplicity, stars, Lebesgue numbers, shrink covers.
inline CheckResult check_cover_calculus(Rng& rng, std::size_t instances) {
  detail::Tally t("cover calculus");
  for (std::size_t i = 0; i < instances; ++i) {
    const auto pack = random_pack(rng, 4 + uniform_index(rng, 5));
    const PointSet& in = pack.interior();
    const std::size_t n = pack.size();
    const auto a = random_cover(rng, in, 1 + uniform_index(rng, 4));
    const auto e = random_symmetric_nbhd(rng, n, in, 0.3);
    t.check(mult_along(a, e) >= multiplicity(a), "mult_along >= multiplicity");
    const auto s1 = random_subset(rng, in);
    const auto s2 = set_union(s1, random_subset(rng, in));
    t.check(is_subset(star(a, s1), star(a, s2)), "star monotone");

    const double l = lebesgue_number(pack, a);
    const std::uint32_t subsets = 1u << in.size();
    for (std::uint32_t m = 1; m < subsets; ++m) {
      const auto s = detail::subset_from_mask(m, in);
      if (pack.diameter(s) < l) t.check(embedding_member(a, s).has_value(), "Lebesgue guarantee");
    }

    Cover merged{{}, in};
    for (const auto& u : a.members) merged.members.push_back(image(e, u));
    const Cover g = shrink_cover(e, merged);
    t.check(g.covers(), "shrink cover covers");
    t.check(is_refinement(g, merged), "shrink cover refines");
    t.check(mult_along(g, e) <= multiplicity(merged), "mult_E γ <= mult α");
  }
  return t.done();
}

/// Doubling preserves multiplicity and separates the ends.
inline CheckResult check_doubling(Rng& rng, std::size_t instances) {
  detail::Tally t("doubling");
  std::size_t made = 0;
  while (made < instances) {
    const std::size_t bases = 1 + uniform_index(rng, 3);
    const int steps = 10;
    SlabCover a;
    for (PointId b = 0; b < bases; ++b) {
      // a chain of overlapping level intervals per base, none spanning [0,1]
      int lo = 0;
      while (lo < steps) {
        int hi = std::min(steps, lo + 1 + static_cast<int>(uniform_index(rng, 6)));
        if (lo == 0 && hi == steps) hi = steps - 1;
        SlabSet s;
        for (int j = lo; j <= hi; ++j) s.push_back({b, j / static_cast<double>(steps)});
        a.push_back(make_slab_set(std::move(s)));
        if (hi == steps) break;
        lo = std::max(lo + 1, hi - static_cast<int>(uniform_index(rng, 3)));
      }
    }
    if (bases > 1 && coin(rng, 0.5)) {
      // merge two members over different bases without joining the ends
      const auto i = uniform_index(rng, a.size());
      const auto j = uniform_index(rng, a.size());
      SlabSet u = a[i];
      u.insert(u.end(), a[j].begin(), a[j].end());
      u = make_slab_set(std::move(u));
      if (!(meets_level(u, 0.0) && meets_level(u, 1.0))) a.push_back(u);
    }
    ++made;
    const int k = 1 + static_cast<int>(uniform_index(rng, 3));
    const SlabCover g = double_cover(a, k);
    t.check(slab_multiplicity(g) == slab_multiplicity(a), "multiplicity preserved");
    t.check(end_separated(g), "output end-separated");
  }
  return t.done();
}

inline VerifySummary verify_suite(std::uint64_t seed, const VerifySizes& sizes = {}) {
  VerifySummary s;
  s.seed = seed;
  Rng rng(seed);
  s.checks.push_back(check_identities(rng, sizes.identity_instances));
  s.checks.push_back(check_ext(rng, sizes.ext_packs));
  s.checks.push_back(check_mult_under_images(rng, sizes.lemma_instances));
  s.checks.push_back(check_mult_under_preimages(rng, sizes.lemma_instances));
  s.checks.push_back(check_mult_under_shrinking(rng, sizes.lemma_instances));
  s.checks.push_back(check_cover_calculus(rng, sizes.lemma_instances));
  s.checks.push_back(check_doubling(rng, sizes.doubling_instances));
  return s;
}

}  // namespace cancov
