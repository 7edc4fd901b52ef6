#include <gtest/gtest.h>

#include <set>

#include "cancov/cover.hpp"
#include "cancov/random.hpp"
#include "fixtures.hpp"

using namespace cancov;

namespace {

using PairSet = std::set<std::pair<PointId, PointId>>;

PairSet pairs_of(const Relation& e) {
  const auto v = e.pairs();
  return PairSet(v.begin(), v.end());
}

PairSet compose_oracle(const PairSet& e, const PairSet& f) {
  PairSet out;
  for (auto [x, y] : e)
    for (auto [y2, z] : f)
      if (y == y2) out.emplace(x, z);
  return out;
}

PointSet image_oracle(const PairSet& e, const PointSet& k) {
  std::set<PointId> out;
  for (auto [y, x] : e)
    if (contains(k, x)) out.insert(y);
  return PointSet(out.begin(), out.end());
}

PointSet subset_of(std::uint32_t mask, std::size_t n) {
  PointSet s;
  for (PointId i = 0; i < n; ++i)
    if (mask >> i & 1u) s.push_back(i);
  return s;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::BadInput;
}

}  // namespace

TEST(Relation, DiagonalIsNeutral) {
  const auto d = diagonal(5);
  EXPECT_EQ(compose(d, d), d);
  for (PointId p = 0; p < 5; ++p) EXPECT_EQ(ball(d, p), (PointSet{p}));
}

TEST(Relation, OneStepChain) {
  const Relation e(3, {{0, 1}});
  const Relation f(3, {{1, 2}});
  EXPECT_EQ(pairs_of(compose(e, f)), (PairSet{{0, 2}}));
  EXPECT_TRUE(compose(f, e).pairs().empty());
}

TEST(Relation, OperationsMatchPairOracle) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + uniform_index(rng, 7);
    const auto e = random_relation(rng, n, 0.3);
    const auto f = random_relation(rng, n, 0.3);
    const auto pe = pairs_of(e), pf = pairs_of(f);
    EXPECT_EQ(pairs_of(compose(e, f)), compose_oracle(pe, pf));
    PairSet inv;
    for (auto [p, q] : pe) inv.emplace(q, p);
    EXPECT_EQ(pairs_of(inverse(e)), inv);
    PairSet uni = pe;
    uni.insert(pf.begin(), pf.end());
    EXPECT_EQ(pairs_of(relation_union(e, f)), uni);
    const auto k = random_subset(rng, range_set(static_cast<PointId>(n)));
    EXPECT_EQ(image(e, k), image_oracle(pe, k));
    for (PointId x = 0; x < n; ++x) EXPECT_EQ(ball(e, x), image_oracle(pe, {x}));
    EXPECT_EQ(is_symmetric(e), pe == inv);
  }
}

TEST(Relation, MeetIdentityExhaustiveOnSixPoints) {
  Rng rng(5);
  for (int rep = 0; rep < 3; ++rep) {
    const auto e = random_relation(rng, 6, 0.25);
    const auto pe = pairs_of(e);
    PairSet inv;
    for (auto [p, q] : pe) inv.emplace(q, p);
    for (std::uint32_t a = 0; a < 64; ++a) {
      for (std::uint32_t b = 0; b < 64; ++b) {
        const auto sa = subset_of(a, 6), sb = subset_of(b, 6);
        EXPECT_EQ(intersects(image_oracle(pe, sa), sb), intersects(sa, image_oracle(inv, sb)));
      }
    }
  }
}

TEST(Relation, RejectsMismatchedUniverses) {
  EXPECT_EQ(code_of([] { compose(diagonal(2), diagonal(3)); }), ErrorCode::PackMismatch);
  EXPECT_EQ(code_of([] { Relation(2, {{0, 5}}); }), ErrorCode::BadInput);
}

TEST(PushForward, MatchesOracle) {
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto e = random_relation(rng, 6, 0.3);
    const auto f = random_map(rng, 6, 3);
    PairSet expect;
    for (auto [p, q] : e.pairs()) expect.emplace(f[p], f[q]);
    EXPECT_EQ(pairs_of(push_forward(e, f, 3)), expect);
    const PointSet s{0, 2};
    PointSet pre;
    for (PointId p = 0; p < 6; ++p)
      if (contains(s, f[p])) pre.push_back(p);
    EXPECT_EQ(preimage(f, s), pre);
  }
}

TEST(C0Modulus, DiagonalAccepts) {
  const auto pack = fixtures::cyl();
  const auto ladder = harmonic_ladder(pack);
  const auto v = c0_modulus(pack, ladder, diagonal(pack));
  for (const auto& s : v.curve.samples()) EXPECT_EQ(s.value, 0.0);
  EXPECT_EQ(v.verdict, Verdict::ACCEPT);
}

TEST(C0Modulus, AllPairsRejectOnLine) {
  const auto pack = fixtures::line3();
  const auto ladder = harmonic_ladder(pack);
  const auto v = c0_modulus(pack, ladder, full_relation(3, pack.all_points()));
  EXPECT_DOUBLE_EQ(v.floor_value, 2.0);
  EXPECT_DOUBLE_EQ(v.curve.samples().back().value, 2.0);
  EXPECT_EQ(v.verdict, Verdict::REJECT);
}

TEST(DiagNbhd, TinyAndHugeLambda) {
  const auto pack = fixtures::cyl();
  const auto ladder = harmonic_ladder(pack);
  EXPECT_EQ(diag_nbhd_from_lambda(pack, constant_lambda(ladder, 1e-6)), diagonal_on(pack.size(), pack.interior()));
  EXPECT_EQ(diag_nbhd_from_lambda(pack, constant_lambda(ladder, 10.0)), full_relation(pack.size(), pack.interior()));
}

TEST(DiagNbhd, IdentityLambdaOnLevels) {
  const auto pack = fixtures::cyl();
  const LambdaSpec lambda({{1.0, 1.0}, {0.5, 0.5}, {0.25, 0.25}, {0.125, 0.125}});
  PairSet expect;
  for (PointId p : pack.interior())
    for (PointId q : pack.interior()) {
      const double a = pack.depth(p), b = pack.depth(q);
      if (std::abs(a - b) < std::min(a, b)) expect.emplace(p, q);
    }
  EXPECT_EQ(pairs_of(diag_nbhd_from_lambda(pack, lambda)), expect);
}

TEST(ControlledE, MatchesPhiDefinition) {
  for (auto kind : {PackKindTag::finite_cylinder, PackKindTag::circle_in_disk}) {
    const auto pack = fixtures::small(kind);
    const auto ladder = default_ladder(pack);
    const auto lambda = linear_lambda(ladder, 1.0);
    const auto e = controlled_E(pack, ladder, lambda);
    std::vector<double> phi(pack.size());
    for (PointId p : pack.interior()) phi[p] = phi_at(pack, lambda, pack.depth(p));
    PairSet expect;
    for (PointId p : pack.interior())
      for (PointId q : pack.interior())
        if (pack.dist(p, q) < std::min(phi[p], phi[q]))
          expect.emplace(p, q);
    EXPECT_EQ(pairs_of(e), expect);
    EXPECT_TRUE(is_symmetric(e));
    EXPECT_TRUE(contains_diagonal_on(e, pack.interior()));
  }
}

TEST(ControlledE, CurveBelowPhiAndAccepts) {
  for (auto kind : {PackKindTag::finite_cylinder, PackKindTag::interval_cylinder, PackKindTag::circle_in_disk,
                    PackKindTag::cube_face}) {
    const auto pack = generate_pack(default_params(kind));
    const auto ladder = default_ladder(pack);
    const auto lambda = linear_lambda(ladder, 1.0);
    const auto v = c0_modulus(pack, ladder, controlled_E(pack, ladder, lambda));
    for (const auto& s : v.curve.samples()) EXPECT_LE(s.value, phi_at(pack, lambda, s.t)) << to_string(kind);
    EXPECT_EQ(v.verdict, Verdict::ACCEPT) << to_string(kind);
  }
}

TEST(ControlledE, NonDecayingLambdaRejected) {
  const auto pack = fixtures::cyl();
  const auto ladder = harmonic_ladder(pack);
  std::vector<ModulusCurve::Sample> rising;
  double v = 0.01;
  for (double t : ladder.radii()) rising.push_back({t, v *= 1.5});
  EXPECT_EQ(code_of([&] { controlled_E(pack, ladder, LambdaSpec(rising)); }), ErrorCode::LambdaNotDecaying);
  EXPECT_EQ(code_of([&] { controlled_E(pack, ladder, constant_lambda(ladder, 0.5)); }), ErrorCode::LambdaNotDecaying);
}

TEST(BallCover, Examples) {
  const auto pack = fixtures::cyl();
  const auto g = ball_cover(diagonal(pack), pack.interior());
  EXPECT_EQ(g.members, singleton_cover(pack.interior()).members);
  const Relation holes(pack.size(), {{1, 1}, {2, 2}});
  EXPECT_EQ(code_of([&] { ball_cover(holes, pack.interior()); }), ErrorCode::NotCovering);
}

TEST(ShrinkCover, Examples) {
  const auto pack = fixtures::cyl();
  const Cover a{{{1, 2}, {2, 3}, {3, 4}}, pack.interior()};
  EXPECT_EQ(shrink_cover(diagonal(pack), a).members, a.members);
  const Cover whole = whole_cover(pack.interior());
  EXPECT_EQ(shrink_cover(full_relation(pack.size(), pack.interior()), whole).members, whole.members);
}

TEST(ShrinkCover, RandomInstancesBoundedByMultiplicity) {
  Rng rng(9);
  int accepted = 0;
  for (int i = 0; i < 400; ++i) {
    const std::size_t n = 8;
    const PointSet all = range_set(static_cast<PointId>(n));
    const auto e = random_symmetric_nbhd(rng, n, all, 0.2);
    // α must be refined by the E-balls; close random members under E
    Cover a = random_cover(rng, all, 1 + uniform_index(rng, 4));
    for (auto& u : a.members) u = image(e, u);
    Cover balls = ball_cover(e, all);
    if (!is_refinement(balls, a)) continue;
    ++accepted;
    const Cover g = shrink_cover(e, a);
    // oracle: V_U = {x : E_x ⊆ U}
    for (std::size_t k = 0, j = 0; k < a.members.size(); ++k) {
      PointSet v;
      for (PointId x : all)
        if (is_subset(e.ball(x), a.members[k])) v.push_back(x);
      if (v.empty()) continue;
      EXPECT_EQ(g.members[j++], v);
    }
    int worst = 0;
    for (PointId x : all) {
      int c = 0;
      for (const auto& v : g.members) c += intersects(v, e.ball(x)) ? 1 : 0;
      worst = std::max(worst, c);
    }
    EXPECT_LE(worst, multiplicity(a));
    EXPECT_EQ(mult_along(g, e), worst);
  }
  EXPECT_GT(accepted, 100);
}
