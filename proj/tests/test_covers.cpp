#include <gtest/gtest.h>

#include "cancov/providers.hpp"
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

int mult_oracle(const Family& f, std::size_t n) {
  int best = 0;
  for (PointId p = 0; p < n; ++p) {
    int c = 0;
    for (const auto& m : f) c += std::count(m.begin(), m.end(), p) > 0 ? 1 : 0;
    best = std::max(best, c);
  }
  return best;
}

// boundary 0 at x=0, interior 1..4 at x=1..4
DiscretePack line5() {
  std::vector<std::vector<double>> d(5, std::vector<double>(5));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) d[i][j] = std::abs(i - j);
  return validate_pack({0, 1, 2, 3, 4}, d, {true, false, false, false, false}, {}, {});
}

// 0 iff every connected component of the ε-neighbour graph has diameter <= ε
bool zero_dim_oracle(const DiscretePack& pack, const PointSet& pts, double eps) {
  std::vector<int> comp(pack.size(), -1);
  int next = 0;
  for (PointId s : pts) {
    if (comp[s] >= 0) continue;
    std::vector<PointId> stack{s};
    comp[s] = next;
    PointSet members;
    while (!stack.empty()) {
      const PointId p = stack.back();
      stack.pop_back();
      members.push_back(p);
      for (PointId q : pts)
        if (comp[q] < 0 && pack.dist(p, q) <= eps) comp[q] = next, stack.push_back(q);
    }
    if (pack.diameter(make_set(members)) > eps) return false;
    ++next;
  }
  return true;
}

}  // namespace

TEST(Multiplicity, SmallChain) {
  const Cover a{{{1, 2}, {2, 3}, {3, 4}}, {1, 2, 3, 4}};
  EXPECT_EQ(multiplicity(a), 2);
  EXPECT_EQ(mult_at(a, 2), 2);
  EXPECT_EQ(mult_at(a, 1), 1);
  EXPECT_EQ(mult_on(a, {1, 4}), 2);
  EXPECT_EQ(mult_along(a, diagonal(5)), multiplicity(a));
}

TEST(Multiplicity, RandomAgreesWithOracle) {
  Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 2 + uniform_index(rng, 7);
    const PointSet all = range_set(static_cast<PointId>(n));
    const auto a = random_cover(rng, all, 1 + uniform_index(rng, 5));
    EXPECT_EQ(multiplicity(a), mult_oracle(a.members, n));
    const auto e = random_symmetric_nbhd(rng, n, all, 0.3);
    int along = 0;
    for (PointId x = 0; x < n; ++x) along = std::max(along, mult_on(a, e.ball(x)));
    EXPECT_EQ(mult_along(a, e), along);
    EXPECT_GE(mult_along(a, e), multiplicity(a));
    EXPECT_EQ(mult_along(a, diagonal(n)), multiplicity(a));
  }
}

TEST(CommonMultiplicity, Examples) {
  const Cover a{{{0, 1}, {1, 2}}, {0, 1, 2}};
  const Cover both[] = {a, a};
  EXPECT_EQ(common_multiplicity(both), 2 * multiplicity(a));
  const Cover s = singleton_cover({0, 1, 2, 3});
  EXPECT_EQ(common_multiplicity(s, singleton_cover({0, 1, 2, 3})), 2);
}

TEST(CommonMultiplicity, IntervalProviderSequence) {
  const auto pack = generate_pack(default_params(PackKindTag::interval_cylinder));
  const auto seq = make_sequence(IntervalDim1Provider::for_pack(pack), pack, 8);
  EXPECT_EQ(multiplicity(seq.covers[1]), 2);
  EXPECT_EQ(common_multiplicity(seq.covers[1], seq.covers[2]), 3);
  for (std::size_t i = 1; i < seq.covers.size(); ++i) {
    EXPECT_LE(multiplicity(seq.covers[i]), 2) << i;
    EXPECT_LE(common_multiplicity(seq.covers[i - 1], seq.covers[i]), 3) << i;
  }
}

TEST(MeshStarDelta, Singletons) {
  const auto pack = fixtures::cyl();
  const auto s = singleton_cover(pack.interior());
  EXPECT_EQ(mesh(pack, s), 0.0);
  EXPECT_EQ(star(s, {2, 3}), (PointSet{2, 3}));
  EXPECT_EQ(delta_of(s, pack.size()), diagonal_on(pack.size(), pack.interior()));
}

TEST(MeshStarDelta, WholeSpace) {
  const auto pack = fixtures::cyl();
  const auto w = whole_cover(pack.interior());
  EXPECT_EQ(star(w, {3}), pack.interior());
  EXPECT_EQ(delta_of(w, pack.size()), full_relation(pack.size(), pack.interior()));
  EXPECT_DOUBLE_EQ(mesh(pack, w), pack.diameter(pack.interior()));
}

TEST(MeshStarDelta, StarIsImageOfDelta) {
  Rng rng(4);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = 8;
    const auto a = random_cover(rng, range_set(8), 1 + uniform_index(rng, 5));
    const auto d = delta_of(a, n);
    for (std::uint32_t m = 0; m < 256; ++m) {
      PointSet s;
      for (PointId p = 0; p < n; ++p)
        if (m >> p & 1u) s.push_back(p);
      PointSet oracle;
      for (const auto& u : a.members)
        if (intersects(u, s)) oracle = set_union(oracle, u);
      EXPECT_EQ(star(a, s), oracle);
      EXPECT_EQ(image(d, s), oracle);
    }
  }
}

TEST(Refines, Examples) {
  const Cover a{{{1, 2}, {2, 3, 4}}, {1, 2, 3, 4}};
  const auto w = refines(singleton_cover(a.target), a);
  EXPECT_TRUE(check_witness(singleton_cover(a.target), a, w));
  EXPECT_EQ(refines(a, a).assignment, (std::vector<std::size_t>{0, 1}));
  const Cover straddle{{{1, 3}, {4}}, a.target};
  EXPECT_EQ(code_of([&] { refines(straddle, a); }), ErrorCode::NotARefinement);
  EXPECT_FALSE(is_refinement(straddle, a));
}

TEST(Lebesgue, Examples) {
  const auto pack = line5();
  EXPECT_DOUBLE_EQ(lebesgue_number(pack, whole_cover(pack.interior())), pack.diameter(pack.interior()));
  EXPECT_DOUBLE_EQ(lebesgue_number(pack, Cover{{{1, 2}, {3, 4}}, pack.interior()}), 1.0);
  EXPECT_EQ(code_of([&] { lebesgue_number(pack, Cover{{{1, 2}}, pack.interior()}); }), ErrorCode::NotACover);
}

TEST(Lebesgue, GuaranteeOnRandomCovers) {
  Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    const auto pack = random_pack(rng, 3 + uniform_index(rng, 7));
    const PointSet& in = pack.interior();
    const auto b = random_cover(rng, in, 1 + uniform_index(rng, 4));
    const double l = lebesgue_number(pack, b);
    for (std::uint32_t m = 1; m < (1u << in.size()); ++m) {
      PointSet s;
      for (std::size_t j = 0; j < in.size(); ++j)
        if (m >> j & 1u) s.push_back(in[j]);
      if (pack.diameter(s) < l) EXPECT_TRUE(embedding_member(b, s).has_value());
    }
  }
}

TEST(Uniformity, SingletonsAccept) {
  const auto pack = fixtures::small(PackKindTag::finite_cylinder);
  const auto v = uniformity_verdict(pack, harmonic_ladder(pack), singleton_cover(pack.interior()));
  for (const auto& s : v.curve.samples()) EXPECT_EQ(s.value, 0.0);
  EXPECT_EQ(v.verdict, Verdict::ACCEPT);
}

TEST(Uniformity, WholeSpaceRejects) {
  const auto pack = fixtures::cyl();
  const auto v = uniformity_verdict(pack, harmonic_ladder(pack), whole_cover(pack.interior()));
  const double diam = pack.diameter(pack.interior());
  for (const auto& s : v.curve.samples())
    if (s.t >= pack.delta_res()) EXPECT_DOUBLE_EQ(s.value, diam);
  EXPECT_DOUBLE_EQ(v.floor_value, diam);
  EXPECT_EQ(v.verdict, Verdict::REJECT);
}

TEST(DimAtScale, Examples) {
  const auto fin = fixtures::small(PackKindTag::finite_cylinder);
  const auto d0 = dim_at_scale(fin, fin.boundary(), 0.1);
  EXPECT_EQ(d0.value, 0);
  EXPECT_FALSE(d0.upper_bound);

  const auto itv = generate_pack(default_params(PackKindTag::interval_cylinder));
  EXPECT_FALSE(zero_dim_oracle(itv, itv.boundary(), 0.1));
  const auto d1 = dim_at_scale(itv, itv.boundary(), 0.1);
  EXPECT_EQ(d1.value, 1);
  EXPECT_FALSE(d1.upper_bound);
  // a cover of multiplicity 2 with mesh <= ε that links all neighbours: overlapping arcs
  Cover arcs{{}, itv.boundary()};
  for (double lo = 0.0; lo < 1.0; lo += 0.05) {
    PointSet m;
    for (PointId x : itv.boundary())
      if (itv.meta().base_param[x] >= lo - 1e-12 && itv.meta().base_param[x] <= lo + 0.1 + 1e-12) m.push_back(x);
    arcs.members.push_back(m);
  }
  EXPECT_LE(mesh(itv, arcs), 0.1 + 1e-12);
  EXPECT_TRUE(arcs.covers());

  const auto cube = generate_pack(default_params(PackKindTag::cube_face));
  EXPECT_TRUE(dim_at_scale(cube, cube.boundary(), 0.3).upper_bound);
}

TEST(DimAtScale, AgreesWithZeroDimOracle) {
  for (auto kind : {PackKindTag::finite_cylinder, PackKindTag::interval_cylinder, PackKindTag::circle_in_disk}) {
    const auto pack = generate_pack(default_params(kind));
    for (double eps : {0.01, 0.05, 0.2, 0.6, 3.0})
      EXPECT_EQ(dim_at_scale(pack, pack.boundary(), eps).value == 0, zero_dim_oracle(pack, pack.boundary(), eps))
          << to_string(kind) << " " << eps;
  }
}

TEST(CoverValidation, MakeCover) {
  EXPECT_EQ(code_of([] { make_cover({{}}, {1, 2}); }), ErrorCode::BadInput);
  EXPECT_EQ(code_of([] { make_cover({{3}}, {1, 2}); }), ErrorCode::BadInput);
  EXPECT_EQ(make_cover({{2, 1}}, {1, 2}).members[0], (PointSet{1, 2}));
}
