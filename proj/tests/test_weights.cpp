#include "support.hpp"

#include <gtest/gtest.h>

using namespace tropdeg;
using namespace testing_support;

TEST(Balance, EllipticExamples) {
  const auto e = fixtures::elliptic();
  EXPECT_TRUE(is_balanced(LatticeWeight(e, 1, {1, 1, 1})));
  EXPECT_TRUE(is_balanced(LatticeWeight(e, 1, {1, 2, 0})));
  const auto r = check_balanced(LatticeWeight(e, 1, {1, 1, 0}));
  EXPECT_FALSE(r.balanced);
  ASSERT_TRUE(r.failing.has_value());
  EXPECT_TRUE(r.failing->empty());
}

TEST(Balance, EuclideanFlavour) {
  const auto p2 = fixtures::p2();
  EXPECT_TRUE(is_balanced(normalize(fundamental_cycle(p2))));
  // Unit normals at the apex: e1 + e2 + sqrt2 * e3/|e3| = 0.
  EXPECT_TRUE(is_balanced(EuclideanWeight(p2, 1, {1.0, 1.0, std::sqrt(2.0)})));
  EXPECT_FALSE(is_balanced(EuclideanWeight(p2, 1, {1.0, 1.0, 1.0})));
}

TEST(Balance, FundamentalCyclesOfFixtures) {
  for (const auto& cx : all_fixtures()) {
    EXPECT_TRUE(is_balanced(fundamental_cycle(cx)));
    EXPECT_NO_THROW(BalancedSpace{cx});
  }
}

TEST(PullBack, Examples) {
  const auto p2 = fixtures::p2();
  const Subdivision s = stellar_subdivide(p2, {{0, 1}, {1, 1}}, "e12");
  const auto& f = *s.fine();
  const auto top = pull_back(fundamental_cycle(p2), s);
  EXPECT_EQ(top.size(), 4u);
  for (const auto& v : top.values()) EXPECT_EQ(v, 1);

  LatticeWeight ray(p2, 1);
  ray.set({0}, 1);
  const auto pr = pull_back(ray, s);
  EXPECT_EQ(pr.at({*f.find_ray("e1")}), 1);
  EXPECT_EQ(pr.at({*f.find_ray("e12")}), 0);

  LatticeWeight five(p2, 2);
  five.set({0, 1}, 5);
  const auto p5 = pull_back(five, s);
  EXPECT_EQ(p5.at(f.cone_from_ids({"e1", "e12"})), 5);
  EXPECT_EQ(p5.at(f.cone_from_ids({"e12", "e2"})), 5);
  EXPECT_EQ(p5.at(f.cone_from_ids({"e2", "e3"})), 0);
}

TEST(PullBack, PreservesBalancing) {
  Rng rng(seed());
  for (int trial = 0; trial < 20; ++trial)
    for (const auto& cx : all_fixtures()) {
      const Subdivision s = random_refinement(cx, rng, 3);
      for (std::size_t k = 0; k <= cx->dim(); ++k) {
        const auto w = random_balanced(cx, k, rng);
        ASSERT_TRUE(is_balanced(w));
        EXPECT_TRUE(is_balanced(pull_back(w, s))) << "seed " << seed();
        EXPECT_TRUE(is_balanced(normalize(w)));
      }
    }
}

TEST(Degree, Examples) {
  const auto p2 = fixtures::p2();
  EXPECT_EQ(degree(LatticeWeight(p2, 0, {7})), 7);
  EXPECT_EQ(degree(LatticeWeight(p2, 0, {0})), 0);
  EXPECT_THROW(degree(fundamental_cycle(p2)), std::invalid_argument);
  EXPECT_EQ(degree(normalize(LatticeWeight(p2, 0, {Rat(3) / 7}))), to_double(Rat(3) / 7));
}

TEST(Normalize, Examples) {
  const auto p2 = fixtures::p2();
  EXPECT_EQ(normalize(LatticeWeight(p2, 0, {3})).values()[0], 3.0);
  LatticeWeight r(p2, 1);
  r.set({2}, 3);
  EXPECT_DOUBLE_EQ(normalize(r).at({2}), 3 * std::sqrt(2.0));
  const auto x = normalize(fundamental_cycle(p2));
  for (auto v : x.values()) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(Positive, Examples) {
  const auto e = fixtures::elliptic();
  EXPECT_TRUE(is_positive(LatticeWeight(e, 1, {1, 1, 1})));
  EXPECT_TRUE(is_positive(LatticeWeight(e, 1, {1, 2, 0})));
  EXPECT_FALSE(is_positive(LatticeWeight(e, 1, {1, -1, 2})));
}

TEST(BalancedBasis, DimensionsOfSurfaceFans) {
  // Balanced 1-weights on a complete fan with m rays in the plane: m - 2 of them.
  EXPECT_EQ(balanced_basis(fixtures::p2(), 1).size(), 1u);
  EXPECT_EQ(balanced_basis(fixtures::p1xp1(), 1).size(), 2u);
  EXPECT_EQ(balanced_basis(fixtures::hirzebruch1(), 1).size(), 2u);
  EXPECT_EQ(balanced_basis(fixtures::p2(), 2).size(), 1u);
  for (const auto& b : balanced_basis(fixtures::p3(), 2)) EXPECT_TRUE(is_balanced(b));
}

TEST(BalancedSpace, RejectsBadTop) {
  const auto e = fixtures::elliptic();
  EXPECT_THROW(BalancedSpace(e, LatticeWeight(e, 1, {1, 1, 0})), std::invalid_argument);
  EXPECT_THROW(BalancedSpace(e, LatticeWeight(e, 1, {1, 2, 0})), std::invalid_argument);
  EXPECT_NO_THROW(BalancedSpace(e, LatticeWeight(e, 1, {2, 2, 2})));
}

TEST(TropicalCycle, RequiresBalance) {
  const auto e = fixtures::elliptic();
  EXPECT_THROW(TropicalCycle<Rat>(LatticeWeight(e, 1, {1, 1, 0})), std::invalid_argument);
  EXPECT_NO_THROW(TropicalCycle<Rat>(LatticeWeight(e, 1, {1, 2, 0})));
}
