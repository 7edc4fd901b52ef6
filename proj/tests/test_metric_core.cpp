#include <gtest/gtest.h>

#include <set>

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

// brute force h: max over x in X of the distance to the points of depth >= t
double h_oracle(const DiscretePack& pack, double t) {
  double best = 0.0;
  for (PointId x : pack.boundary()) {
    double near = kInfinity;
    for (PointId p : pack.interior())
      if (pack.depth(p) >= t) near = std::min(near, pack.dist(x, p));
    if (near < kInfinity) best = std::max(best, near);
  }
  return best;
}

}  // namespace

TEST(ValidatePack, LineOfThree) {
  const auto pack = fixtures::line3();
  EXPECT_EQ(pack.size(), 3u);
  EXPECT_EQ(pack.boundary(), (PointSet{0, 2}));
  EXPECT_EQ(pack.interior(), (PointSet{1}));
  EXPECT_DOUBLE_EQ(pack.k_sup(), 1.0);
  EXPECT_DOUBLE_EQ(pack.delta_res(), 1.0);
  EXPECT_EQ(pack.ids(), (std::vector<std::int64_t>{10, 11, 12}));
}

TEST(ValidatePack, TriangleViolation) {
  EXPECT_EQ(code_of([] { fixtures::line3(5.0); }), ErrorCode::TriangleViolation);
}

TEST(ValidatePack, EmptySides) {
  const std::vector<std::vector<double>> d{{0, 1}, {1, 0}};
  EXPECT_EQ(code_of([&] { validate_pack({1, 2}, d, {true, true}, {}, {}); }), ErrorCode::EmptySide);
  EXPECT_EQ(code_of([&] { validate_pack({1, 2}, d, {false, false}, {}, {}); }), ErrorCode::EmptySide);
}

TEST(ValidatePack, RejectsMalformedMatrices) {
  EXPECT_EQ(code_of([] { validate_pack({1, 2}, {{0, 1}, {2, 0}}, {true, false}, {}, {}); }),
            ErrorCode::AsymmetricDistance);
  EXPECT_EQ(code_of([] { validate_pack({1, 2}, {{0.5, 1}, {1, 0}}, {true, false}, {}, {}); }), ErrorCode::BadInput);
  EXPECT_EQ(code_of([] { validate_pack({1, 2}, {{0, 0}, {0, 0}}, {true, false}, {}, {}); }), ErrorCode::BadInput);
  EXPECT_EQ(code_of([] { validate_pack({1, 2}, {{0, 1}}, {true, false}, {}, {}); }), ErrorCode::BadInput);
}

TEST(BoundaryDistance, Examples) {
  const auto line = fixtures::line3();
  EXPECT_DOUBLE_EQ(boundary_distance(line, 1), 1.0);
  EXPECT_DOUBLE_EQ(boundary_distance(line, 0), 0.0);
  const auto cyl = fixtures::cyl();
  EXPECT_DOUBLE_EQ(boundary_distance(cyl, 3), 0.25);
}

TEST(BoundaryDistance, CachedValuesMatchBruteForce) {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto pack = random_pack(rng, 2 + uniform_index(rng, 10));
    double k = 0, res = kInfinity, dense = 0;
    for (PointId p = 0; p < pack.size(); ++p) {
      double d = kInfinity;
      for (PointId x : pack.boundary()) d = std::min(d, pack.dist(p, x));
      EXPECT_DOUBLE_EQ(pack.depth(p), d);
      if (!pack.is_boundary(p)) k = std::max(k, d), res = std::min(res, d);
    }
    for (PointId x : pack.boundary()) {
      double d = kInfinity;
      for (PointId p : pack.interior()) d = std::min(d, pack.dist(x, p));
      dense = std::max(dense, d);
    }
    EXPECT_DOUBLE_EQ(pack.k_sup(), k);
    EXPECT_DOUBLE_EQ(pack.delta_res(), res);
    EXPECT_DOUBLE_EQ(pack.delta_dense(), dense);
  }
}

TEST(HProfile, CylinderExamples) {
  const auto cyl = fixtures::cyl();
  EXPECT_DOUBLE_EQ(h_at(cyl, 0.3), 0.5);
  EXPECT_DOUBLE_EQ(h_at(cyl, 1.2), 1.0);
  EXPECT_DOUBLE_EQ(h_at(cyl, 0.05), 0.125);
}

TEST(HProfile, SamplesMatchOracleOnLadder) {
  for (auto kind : {PackKindTag::finite_cylinder, PackKindTag::circle_in_disk, PackKindTag::countable_example}) {
    const auto pack = fixtures::small(kind);
    const auto ladder = harmonic_ladder(pack);
    const auto prof = h_profile(pack, ladder);
    ASSERT_EQ(prof.samples().size(), ladder.size());
    for (const auto& s : prof.samples()) {
      if (s.t <= pack.k_sup()) EXPECT_DOUBLE_EQ(s.value, h_oracle(pack, s.t)) << to_string(kind) << " t=" << s.t;
      EXPECT_GE(s.value, std::min(s.t, pack.k_sup()) - 1e-12);
    }
    EXPECT_TRUE(prof.nondecreasing());
  }
}

TEST(Annulus, CylinderExamples) {
  const auto cyl = fixtures::cyl();
  const ScaleLadder ladder({1.5, 0.6, 0.3, 0.1, 0.05});
  EXPECT_EQ(annulus(cyl, ladder, 0), (PointSet{1, 2}));
  EXPECT_EQ(annulus(cyl, ladder, 1), (PointSet{2, 3, 4}));
  EXPECT_EQ(annulus_count(ladder), 3u);
  EXPECT_EQ(code_of([&] { annulus(cyl, ladder, 5); }), ErrorCode::IndexOutOfLadder);
}

TEST(Ladder, Validation) {
  EXPECT_EQ(code_of([] { ScaleLadder({1.0, 1.0}); }), ErrorCode::BadLadder);
  EXPECT_EQ(code_of([] { ScaleLadder({1.0, -0.5}); }), ErrorCode::BadLadder);
  EXPECT_EQ(code_of([] { ScaleLadder(std::vector<double>{}); }), ErrorCode::BadLadder);
  const auto cyl = fixtures::cyl();
  EXPECT_EQ(code_of([&] { check_ladder(cyl, ScaleLadder({0.9, 0.01})); }), ErrorCode::BadLadder);
  EXPECT_EQ(code_of([&] { check_ladder(cyl, ScaleLadder({2.0, 0.2})); }), ErrorCode::BadLadder);
}

TEST(Ladder, BuiltLaddersAreValidAndAvoidDepths) {
  for (auto kind : {PackKindTag::finite_cylinder, PackKindTag::interval_cylinder, PackKindTag::circle_in_disk,
                    PackKindTag::countable_example}) {
    const auto pack = fixtures::small(kind);
    std::set<double> depths(pack.depths().begin(), pack.depths().end());
    for (const auto& ladder : {harmonic_ladder(pack), interleaved_ladder(pack), default_ladder(pack)}) {
      EXPECT_NO_THROW(check_ladder(pack, ladder));
      for (double r : ladder.radii()) EXPECT_EQ(depths.count(r), 0u) << to_string(kind);
    }
  }
}

TEST(ModulusCurve, StepInterpolation) {
  const ModulusCurve c({{1.0, 3.0}, {0.5, 2.0}, {0.25, 1.0}});
  EXPECT_DOUBLE_EQ(c.step_value(0.3), 2.0);
  EXPECT_DOUBLE_EQ(c.step_value(0.5), 2.0);
  EXPECT_DOUBLE_EQ(c.step_value(0.1), 1.0);
  EXPECT_DOUBLE_EQ(c.step_value(7.0), 3.0);
  EXPECT_TRUE(c.nondecreasing());
  EXPECT_FALSE(ModulusCurve({{1.0, 1.0}, {0.5, 2.0}}).nondecreasing());
  EXPECT_EQ(code_of([] { ModulusCurve({{0.5, 1.0}, {1.0, 1.0}}); }), ErrorCode::BadInput);
}

TEST(GeneratePack, Counting) {
  const auto fin = fixtures::small(PackKindTag::finite_cylinder);
  EXPECT_EQ(fin.boundary().size(), 3u);
  EXPECT_EQ(fin.interior().size(), 18u);
  EXPECT_EQ(fin.meta().known_dim, 0);
  EXPECT_TRUE(fin.meta().cylindrical);

  const auto itv = generate_pack(default_params(PackKindTag::interval_cylinder));
  EXPECT_EQ(itv.boundary().size(), 65u);
  EXPECT_EQ(itv.meta().known_dim, 1);
}

TEST(GeneratePack, CountableTriangularRows) {
  GenParams g;
  g.kind = PackKindTag::countable_example;
  g.y_points = 5;
  const auto pack = generate_pack(g);
  EXPECT_EQ(pack.boundary().size(), 5u);
  EXPECT_EQ(pack.interior().size(), 15u);
  EXPECT_FALSE(pack.meta().cylindrical);
  std::map<double, std::set<double>> rows;
  for (PointId p : pack.interior()) rows[pack.meta().coords[p][1]].insert(pack.meta().coords[p][0]);
  ASSERT_EQ(rows.size(), 5u);
  std::vector<double> ys;
  for (PointId x : pack.boundary()) ys.push_back(pack.meta().coords[x][0]);
  for (int n = 1; n <= 5; ++n) {
    const auto& row = rows[1.0 / n];
    EXPECT_EQ(row, std::set<double>(ys.begin(), ys.begin() + n)) << "row " << n;
  }
}

TEST(GeneratePack, BadParams) {
  GenParams g;
  g.kind = PackKindTag::custom;
  EXPECT_EQ(code_of([&] { generate_pack(g); }), ErrorCode::BadParams);
  g.kind = PackKindTag::finite_cylinder;
  g.ratio = 1.5;
  EXPECT_EQ(code_of([&] { generate_pack(g); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([] { pack_kind_from_string("torus"); }), ErrorCode::BadParams);
}
