#include "support.hpp"

#include "tropdeg/measure.hpp"

#include <gtest/gtest.h>

using namespace tropdeg;
using namespace testing_support;

TEST(Measure, HyperplaneOnPlane) {
  const BalancedSpace s(fixtures::p2());
  const auto mu = ma_measure(PLFunction(fixtures::p2(), {0, 0, -1}), s);
  ASSERT_EQ(mu.atoms().size(), 3u);
  EXPECT_NEAR(mu.atoms()[0].mass, 1.0, 1e-12);
  EXPECT_NEAR(mu.atoms()[1].mass, 1.0, 1e-12);
  EXPECT_NEAR(mu.atoms()[2].mass, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(mu.total_variation(), 2 + std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(mu.atoms()[2].at.unit_image[0], -1 / std::sqrt(2.0), 1e-15);
}

TEST(Measure, EllipticCurve) {
  const auto e = fixtures::elliptic();
  const auto mu = measure(normalize(LatticeWeight(e, 1, {1, 2, 0})));
  ASSERT_EQ(mu.atoms().size(), 2u);
  EXPECT_DOUBLE_EQ(mu.atoms()[0].mass, 2.0);
  EXPECT_DOUBLE_EQ(mu.atoms()[1].mass, 2.0);
  EXPECT_DOUBLE_EQ(mu.total_mass(), 4.0);
}

TEST(Measure, ZeroWeightGivesEmptyMeasure) {
  const auto mu = measure(EuclideanWeight(fixtures::p2(), 1));
  EXPECT_TRUE(mu.atoms().empty());
  EXPECT_EQ(mu.total_variation(), 0.0);
  EXPECT_EQ(pairing(PLFunction(fixtures::p2(), {1, 2, 3}), mu), 0.0);
  EXPECT_THROW(measure(EuclideanWeight(fixtures::p2(), 2)), std::invalid_argument);
}

TEST(Measure, PairingIsTheDegree) {
  Rng rng(seed());
  for (const auto& base : surface_fixtures()) {
    const Subdivision sub = random_refinement(base, rng, 3);
    const BalancedSpace s(sub.fine(), pull_back(fundamental_cycle(base), sub));
    const auto f = random_pl(sub.fine(), rng);
    const auto g = random_pl(sub.fine(), rng);
    const std::vector<PLFunction> gs{g};
    const auto mu = mixed_ma_measure(gs, s);
    const auto z = euclidean_product(g, s.normalized());
    const double deg = degree(euclidean_product(f, z));
    EXPECT_EQ(pairing(f, mu), deg);
    EXPECT_EQ(naive_integral(f, mu), -deg);
    double tv = 0;
    for (const auto& a : mu.atoms()) tv += std::abs(a.mass);
    EXPECT_EQ(mu.total_variation(), tv);
  }
}

TEST(SphereRange, HyperplaneOnPlane) {
  const auto r = sphere_range(PLFunction(fixtures::p2(), {0, 0, -1}));
  EXPECT_NEAR(r.min, -1.0, 1e-12);
  EXPECT_NEAR(r.max, 0.0, 1e-12);
  EXPECT_NEAR(r.sup_abs(), 1.0, 1e-12);
  const auto lin = sphere_range(PLFunction(fixtures::p1xp1(), {3, 4, -3, -4}));
  EXPECT_NEAR(lin.max, 5.0, 1e-12);
  EXPECT_NEAR(lin.min, -5.0, 1e-12);
}

TEST(Auxiliary, BelowNegativeNorm) {
  Rng rng(seed());
  const std::vector<InnerProduct> ips{
      InnerProduct::identity(2), InnerProduct::identity(3),
      InnerProduct(RatMatrix::from_rows({{2, 1}, {1, 3}})),
      InnerProduct(RatMatrix::from_rows({{5, 1, 0}, {1, 2, 1}, {0, 1, 4}}))};
  for (const auto& ip : ips) {
    const AuxiliaryConcave aux(ip);
    EXPECT_EQ(aux.forms().size(), aux.r() + 1);
    for (int i = 0; i < 200; ++i) {
      RatVector x(ip.dim());
      for (auto& c : x) c = random_rat(rng, 9);
      const double norm = std::sqrt(to_double(ip(x, x)));
      EXPECT_LE(to_double(aux.evaluate(x)), -norm + 1e-12);
      // min of the forms
      Rat m = dot(aux.forms()[0], x);
      for (const auto& l : aux.forms()) m = std::min(m, dot(l, x));
      EXPECT_EQ(aux.evaluate(x), m);
    }
  }
}

TEST(Size, ProjectivePlane) {
  const auto cx = fixtures::p2();
  const AuxiliaryConcave aux(cx->inner_product());
  ASSERT_TRUE(aux.is_pl_on(*cx));
  const BalancedSpace s(cx);
  EXPECT_NEAR(size(s.normalized(), aux), 16.0, 1e-12);
}

TEST(Size, ProductOfLinesNeedsRefinement) {
  const auto cx = fixtures::p1xp1();
  const AuxiliaryConcave aux(cx->inner_product());
  EXPECT_FALSE(aux.is_pl_on(*cx));
  EXPECT_THROW(aux.on(cx), std::invalid_argument);
  const Subdivision sub = aux.refine(cx);
  EXPECT_TRUE(check_subdivision(sub).ok());
  EXPECT_TRUE(aux.is_pl_on(*sub.fine()));
  const auto z = normalize(pull_back(fundamental_cycle(cx), sub));
  const double sz = size(z, aux);
  EXPECT_TRUE(std::isfinite(sz));
  EXPECT_GT(sz, 0);
}

TEST(Size, LowDimensions) {
  const auto cx = fixtures::p2();
  const AuxiliaryConcave aux(cx->inner_product());
  EXPECT_DOUBLE_EQ(size(EuclideanWeight(cx, 0, {2.5}), aux), 2.5);
  // -aux >= ||.|| at unit vectors, so size dominates the total mass.
  const EuclideanWeight c(cx, 1, {1.0, 2.0, 3.0 * std::sqrt(2.0)});
  double mass = 0;
  for (auto v : c.values()) mass += v;
  EXPECT_GE(size(c, aux), mass - 1e-12);
  EXPECT_THROW(size(EuclideanWeight(cx, 1, {1.0, -1.0, 0.0}), aux), std::invalid_argument);
}

TEST(Cln, Cases) {
  const auto cx = fixtures::p2();
  const AuxiliaryConcave aux(cx->inner_product());
  const BalancedSpace s(cx);
  const auto h = cln_check(PLFunction(cx, {0, 0, -1}), s.normalized(), aux);
  EXPECT_EQ(h.status, ClnResult::Status::holds);
  EXPECT_LE(h.lhs, h.rhs);
  EXPECT_NEAR(h.sup, 1.0, 1e-12);
  const auto n = cln_check(PLFunction(cx, {-1, -1, 5}), s.normalized(), aux);
  EXPECT_EQ(n.status, ClnResult::Status::inapplicable);
  EXPECT_EQ(cln_status_name(ClnResult::Status::violated), "violated");
}

TEST(Cln, RandomConcaveFunctions) {
  Rng rng(seed());
  const auto cx = fixtures::p2();
  const AuxiliaryConcave aux(cx->inner_product());
  const BalancedSpace s(cx);
  for (int i = 0; i < 50; ++i) {
    // a*phi_H + linear is concave, so the product is positive.
    const Rat a(uniform(rng, 0, 6));
    const RatVector m{random_rat(rng), random_rat(rng)};
    RatVector v(3);
    for (std::size_t r = 0; r < 3; ++r) v[r] = dot(m, cx->image(r));
    v[2] -= a;
    const auto res = cln_check(PLFunction(cx, v), s.normalized(), aux);
    EXPECT_EQ(res.status, ClnResult::Status::holds) << res.lhs << " " << res.rhs;
  }
}

TEST(Polarization, MixedNumbersOnThreeSpace) {
  Rng rng(seed());
  const auto cx = fixtures::p3();
  const BalancedSpace s(cx);
  const std::vector<PLFunction> fs{random_pl(cx, rng), random_pl(cx, rng), random_pl(cx, rng)};
  const std::vector<PLFunction> mixed{fs[0], fs[1], fs[2]};
  Rat sum = 0;
  for (unsigned mask = 1; mask < 8; ++mask) {
    PLFunction x(cx);
    for (unsigned i = 0; i < 3; ++i)
      if (mask & (1u << i)) x += fs[i];
    const std::vector<PLFunction> diag{x, x, x};
    const int sign = (3 - __builtin_popcount(mask)) % 2 == 0 ? 1 : -1;
    sum += Rat(sign) * top_number_lattice(diag, s);
  }
  EXPECT_EQ(top_number_lattice(mixed, s), sum / 6);
}
