#include <gtest/gtest.h>

#include "cancov/canonical.hpp"
#include "cancov/cylinder.hpp"
#include "cancov/random.hpp"
#include "fixtures.hpp"

using namespace cancov;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::BadInput;
}

SlabSet column(std::initializer_list<double> ts) {
  SlabSet s;
  for (double t : ts) s.push_back({0, t});
  return make_slab_set(s);
}

// grid points lo, lo + step, ..., hi over base 0
SlabSet grid(int lo, int hi, double step) {
  SlabSet s;
  for (int i = lo; i <= hi; ++i) s.push_back({0, i * step});
  return make_slab_set(s);
}

DiscretePack three_level_cyl() {
  GenParams g;
  g.kind = PackKindTag::finite_cylinder;
  g.base_points = 1;
  g.levels = 3;
  return generate_pack(g);
}

}  // namespace

TEST(FMap, Examples) {
  const auto cyl = fixtures::cyl();
  const Level l = f_map(cyl, 3);
  EXPECT_EQ(l.base, 0u);
  EXPECT_DOUBLE_EQ(l.t, 0.25);
  const auto line = fixtures::line3();
  const Level m = f_map(line, 1);
  EXPECT_EQ(m.base, 0u);
  EXPECT_DOUBLE_EQ(m.t, 1.0);
  EXPECT_EQ(code_of([&] { f_map(line, 0); }), ErrorCode::BoundaryInput);
}

TEST(GMap, Examples) {
  const auto cyl = three_level_cyl();
  EXPECT_EQ(g_map(cyl, 0, 0.3), 2u);
  EXPECT_EQ(g_map(cyl, 0, cyl.k_sup()), 1u);
  EXPECT_EQ(code_of([&] { g_map(cyl, 0, 1.5); }), ErrorCode::EmptyOuterSet);
}

TEST(FGMaps, DisplacementWithinThreeH) {
  for (auto kind : {PackKindTag::finite_cylinder, PackKindTag::interval_cylinder, PackKindTag::circle_in_disk}) {
    const auto pack = generate_pack(default_params(kind));
    const auto ladder = default_ladder(pack);
    for (PointId z : pack.boundary()) {
      for (double t : ladder.radii()) {
        if (t > pack.k_sup()) continue;
        const Level fg = f_map(pack, g_map(pack, z, t));
        EXPECT_LE(cylinder_distance(pack, Level{z, t}, fg), 3.0 * h_at(pack, t) + 1e-12) << to_string(kind);
      }
    }
  }
}

TEST(CylinderOver, ExactCylinderIsIsometric) {
  const auto pack = fixtures::small(PackKindTag::finite_cylinder);
  const auto cyl = cylinder_over(pack);
  ASSERT_EQ(cyl.cylinder.size(), pack.size());
  for (PointId p = 0; p < pack.size(); ++p)
    for (PointId q = 0; q < pack.size(); ++q) EXPECT_DOUBLE_EQ(cyl.cylinder.dist(cyl.f[p], cyl.f[q]), pack.dist(p, q));
  const auto e = collar_embedding(pack, cyl);
  EXPECT_NEAR(e.distortion, 0.0, 1e-12);
}

TEST(Pullback, IdentityAndSingletons) {
  const auto pack = fixtures::small(PackKindTag::finite_cylinder);
  const auto cyl = cylinder_over(pack);
  const auto e = collar_embedding(pack, cyl);
  Rng rng(6);
  const auto a = random_cover(rng, pack.interior(), 5);
  const auto b = pullback_cover(e, cyl.cylinder, a);
  ASSERT_EQ(b.members.size(), a.members.size());
  for (std::size_t i = 0; i < a.members.size(); ++i) {
    PointSet mapped;
    for (PointId q : b.members[i]) mapped.push_back(e.map[q]);
    EXPECT_EQ(make_set(mapped), a.members[i]);
  }
  const auto s = pullback_cover(e, cyl.cylinder, singleton_cover(pack.interior()));
  EXPECT_EQ(s.members, singleton_cover(cyl.cylinder.interior()).members);
}

TEST(Pullback, CircleCollarKeepsCanonicalCover) {
  const auto host = generate_pack(default_params(PackKindTag::circle_in_disk));
  const auto ladder = default_ladder(host);
  const auto e = controlled_E(host, ladder, linear_lambda(ladder, 1.0));
  const auto rep = minimal_canonical(host, ball_cover(e, host.interior()), IntervalDim1Provider::for_pack(host));
  const auto cyl = cylinder_over(host);
  const auto emb = collar_embedding(host, cyl);
  const auto pulled = pullback_pack(host, cyl.cylinder, emb);
  const auto b = pullback_cover(emb, cyl.cylinder, rep.result.cover);
  EXPECT_TRUE(b.covers());
  EXPECT_EQ(uniformity_verdict(pulled, default_ladder(pulled), b).verdict, Verdict::ACCEPT);
  EXPECT_LE(multiplicity(b), multiplicity(rep.result.cover));
}

TEST(DoubleCover, SinglePointExample) {
  const SlabCover a{grid(0, 6, 0.1), grid(4, 10, 0.1)};
  const SlabCover g = double_cover(a, 1);
  const SlabCover expect{grid(0, 6, 0.05), grid(4, 16, 0.05), grid(14, 20, 0.05)};
  EXPECT_EQ(std::set<SlabSet>(g.begin(), g.end()), std::set<SlabSet>(expect.begin(), expect.end()));
  EXPECT_EQ(slab_multiplicity(g), 2);
  EXPECT_TRUE(end_separated(g));
}

TEST(DoubleCover, StraddlerRejected) {
  EXPECT_EQ(code_of([] { double_cover({column({0.0, 0.5, 1.0})}, 1); }), ErrorCode::StraddlerPrecondition);
  EXPECT_EQ(code_of([] { double_cover({column({0.0})}, 0); }), ErrorCode::BadParams);
}

TEST(DoubleCover, RandomTwoColumnCovers) {
  Rng rng(17);
  for (int i = 0; i < 50; ++i) {
    SlabCover a;
    for (PointId b = 0; b < 2; ++b) {
      int lo = 0;
      while (true) {
        int hi = std::min(8, lo + 1 + static_cast<int>(uniform_index(rng, 4)));
        if (lo == 0 && hi == 8) hi = 7;
        SlabSet s;
        for (int j = lo; j <= hi; ++j) s.push_back({b, j / 8.0});
        a.push_back(make_slab_set(s));
        if (hi == 8) break;
        lo = std::max(lo + 1, hi - static_cast<int>(uniform_index(rng, 2)));
      }
    }
    const int k = 1 + static_cast<int>(uniform_index(rng, 3));
    const SlabCover g = double_cover(a, k);
    // brute-force pointwise counts
    auto mult = [](const SlabCover& c) {
      std::map<std::pair<PointId, long long>, int> m;
      int best = 0;
      for (const auto& s : c)
        for (const auto& p : s) best = std::max(best, ++m[{p.base, std::llround(p.t * 1e9)}]);
      return best;
    };
    EXPECT_EQ(mult(g), mult(a));
    EXPECT_TRUE(end_separated(g));
  }
}

TEST(SlabRescale, AnnuliOnSinglePointCylinder) {
  const auto pack = fixtures::cyl();
  const ScaleLadder ladder({1.5, 0.6, 0.3, 0.1, 0.05});
  const auto a = build_alpha(pack, ladder, std::vector<Family>(3, Family{pack.all_points()}));
  const auto s = slab_rescale(pack, a, 0.6, 0.1);
  // levels 1/2, 1/4, 1/8 land at 0.2, 0.7, 0.95
  const SlabCover expect{column({0.2}), column({0.2, 0.7, 0.95}), column({0.7, 0.95})};
  EXPECT_EQ(s, expect);
  EXPECT_EQ(slab_multiplicity(s), 2);
}

TEST(SlabRescale, Errors) {
  const auto pack = fixtures::cyl();
  const auto a = singleton_cover(pack.interior());
  EXPECT_EQ(code_of([&] { slab_rescale(pack, a, 0.1, 0.6); }), ErrorCode::BadDeltas);
  EXPECT_EQ(code_of([&] { slab_rescale(pack, a, 0.24, 0.13); }), ErrorCode::SlabTooThin);
  const auto countable = fixtures::small(PackKindTag::countable_example);
  EXPECT_EQ(code_of([&] { slab_rescale(countable, singleton_cover(countable.interior()), 0.6, 0.1); }),
            ErrorCode::NonCylindricalPack);
}

TEST(LowerBound, Preconditions) {
  const auto countable = fixtures::small(PackKindTag::countable_example);
  const auto s = singleton_cover(countable.interior());
  EXPECT_EQ(code_of([&] { lower_bound_check(countable, default_ladder(countable), s); }),
            ErrorCode::NonCylindricalPack);
  const auto pack = fixtures::small(PackKindTag::finite_cylinder);
  const auto c = lower_bound_check(pack, harmonic_ladder(pack), whole_cover(pack.interior()));
  EXPECT_EQ(c.verdict, BoundVerdict::PRECONDITION_UNMET);
  EXPECT_EQ(c.unmet, "PreconditionNotUniform");
}

TEST(LowerBound, FiniteCanonicalHolds) {
  const auto pack = generate_pack(default_params(PackKindTag::finite_cylinder));
  const auto ladder = default_ladder(pack);
  const auto e = controlled_E(pack, ladder, linear_lambda(ladder, 1.0));
  const auto rep = minimal_canonical(pack, ball_cover(e, pack.interior()), FiniteDim0Provider{});
  const auto c = lower_bound_check(pack, ladder, rep.result.cover, &e);
  EXPECT_EQ(c.verdict, BoundVerdict::HOLDS);
  EXPECT_EQ(c.mult_at_witness, 2);
  EXPECT_EQ(c.bound, 2);
}
