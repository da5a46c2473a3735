#include "tropdeg/linalg.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tropdeg;

TEST(Rat, ParsesToLowestTerms) {
  EXPECT_EQ(to_string(parse_rat("-6/4")), "-3/2");
  EXPECT_EQ(to_string(parse_rat("4/2")), "2");
  EXPECT_EQ(to_string(parse_rat("0.25")), "1/4");
  EXPECT_EQ(to_string(parse_rat("3/-6")), "-1/2");
  EXPECT_THROW(parse_rat("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rat("abc"), std::invalid_argument);
}

TEST(Rat, DoubleConversionIsExact) {
  EXPECT_EQ(rat_from_double(0.375), Rat(3) / 8);
  EXPECT_EQ(to_double(rat_from_double(0.1)), 0.1);
}

TEST(SolveInSpan, Examples) {
  std::vector<RatVector> std2{{1, 0}, {0, 1}};
  EXPECT_EQ(*solve_in_span(std2, RatVector{3, 5}), (RatVector{3, 5}));
  std::vector<RatVector> two{{2}};
  EXPECT_EQ(*solve_in_span(two, RatVector{-1}), (RatVector{Rat(-1) / 2}));
  std::vector<RatVector> diag{{1, 1}};
  EXPECT_FALSE(solve_in_span(diag, RatVector{1, 2}).has_value());
}

TEST(SolveInSpan, Errors) {
  std::vector<RatVector> dep{{1, 2}, {2, 4}};
  EXPECT_THROW(solve_in_span(dep, RatVector{1, 2}), std::invalid_argument);
  std::vector<RatVector> one{{1, 0}};
  EXPECT_THROW(solve_in_span(one, RatVector{1, 0, 0}), std::invalid_argument);
}

TEST(SolveInSpan, RecombinationRoundTrip) {
  std::vector<RatVector> basis{{1, 2, 3}, {0, Rat(1) / 3, -1}};
  const RatVector target = add(scale(Rat(5) / 7, basis[0]), scale(Rat(-2), basis[1]));
  const RatVector a = *solve_in_span(basis, target);
  EXPECT_EQ(add(scale(a[0], basis[0]), scale(a[1], basis[1])), target);
}

TEST(GramDet, Examples) {
  const auto ip = InnerProduct::identity(2);
  std::vector<RatVector> e1{{1, 0}}, d{{1, 1}}, pair{{1, 0}, {1, 2}};
  EXPECT_EQ(gram_det(e1, ip), 1);
  EXPECT_EQ(gram_det(d, ip), 2);
  EXPECT_EQ(gram_det(pair, ip), 4);
  std::vector<RatVector> dep{{1, 1}, {2, 2}};
  EXPECT_THROW(gram_det(dep, ip), std::invalid_argument);
}

TEST(GramDet, InvariantUnderUnimodularChange) {
  const InnerProduct ip(RatMatrix::from_rows({{2, 1}, {1, 3}}));
  std::vector<RatVector> v{{1, 2}, {3, -1}};
  // Rows of [[2,1],[1,1]] (det 1) applied to the list.
  std::vector<RatVector> w{add(scale(2, v[0]), v[1]), add(v[0], v[1])};
  EXPECT_EQ(gram_det(v, ip), gram_det(w, ip));
}

TEST(Primitive, Examples) {
  EXPECT_EQ(primitive({2, 4}), (IntVector{1, 2}));
  EXPECT_EQ(primitive({-3, 0}), (IntVector{-1, 0}));
  EXPECT_EQ(primitive({1, 1}), (IntVector{1, 1}));
  EXPECT_EQ(primitive(primitive({6, -9, 12})), primitive({6, -9, 12}));
  EXPECT_THROW(primitive({0, 0}), std::invalid_argument);
}

TEST(InnerProduct, RejectsNonSpd) {
  EXPECT_THROW(InnerProduct(RatMatrix::from_rows({{1, 2}, {2, 1}})), std::invalid_argument);
  EXPECT_THROW(InnerProduct(RatMatrix::from_rows({{1, 1}, {0, 1}})), std::invalid_argument);
  EXPECT_NO_THROW(InnerProduct(RatMatrix::from_rows({{2, 1}, {1, 2}})));
}

TEST(Matrix, DeterminantRankNullspace) {
  const RatMatrix m = RatMatrix::from_rows({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}});
  EXPECT_EQ(determinant(m), 0);
  EXPECT_EQ(rank(m), 2u);
  const auto ns = nullspace(m);
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_TRUE(is_zero(m.apply(ns[0])));
  EXPECT_EQ(determinant(RatMatrix::from_rows({{2, 1}, {1, 3}})), 5);
}

TEST(SqrtUpper, IsTightDyadicUpperBound) {
  for (int x : {2, 3, 5, 10, 12345}) {
    const Rat q = sqrt_upper(Rat(x), 40);
    EXPECT_GE(q * q, Rat(x));
    const Rat below = q - Rat(1) / Rat(Integer(1) << 40);
    EXPECT_LT(below * below, Rat(x));
    EXPECT_NEAR(to_double(q), std::sqrt(double(x)), 1e-11 * std::sqrt(double(x)));
  }
  EXPECT_EQ(sqrt_upper(Rat(4)), 2);
}
