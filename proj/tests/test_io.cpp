#include "support.hpp"

#include "tropdeg/io.hpp"

#include <gtest/gtest.h>

using namespace tropdeg;
using namespace testing_support;

TEST(Io, RationalParsing) {
  EXPECT_EQ(io::rat_from_json(io::Json("3/4")), Rat(3) / 4);
  EXPECT_EQ(io::rat_from_json(io::Json(-2)), -2);
  EXPECT_EQ(io::rat_json(Rat(5)), io::Json("5"));
  EXPECT_EQ(io::rat_json(Rat(-1) / 3), io::Json("-1/3"));
  EXPECT_THROW(io::rat_from_json(io::Json(0.5)), io::FormatError);
}

TEST(Io, ComplexRoundTrip) {
  for (const auto& cx : all_fixtures()) {
    const auto back = io::complex_from_json(io::to_json(*cx));
    EXPECT_EQ(io::to_json(*back), io::to_json(*cx));
    EXPECT_EQ(back->ray_count(), cx->ray_count());
    EXPECT_EQ(back->maximal_cones(), cx->maximal_cones());
  }
}

TEST(Io, NonStandardInnerProductRoundTrip) {
  const auto j = io::Json::parse(R"({"ambient_dim":2,"inner_product":[["2","1"],["1","3"]],
    "rays":[{"id":"a","image":[1,0]},{"id":"b","image":[0,1]}],"cones":[["a","b"]]})");
  const auto cx = io::complex_from_json(j);
  EXPECT_FALSE(cx->inner_product().is_identity());
  EXPECT_EQ(io::complex_from_json(io::to_json(*cx))->inner_product(), cx->inner_product());
}

TEST(Io, WeightsAndFunctionsRoundTrip) {
  Rng rng(seed());
  for (const auto& cx : all_fixtures()) {
    const auto w = random_balanced(cx, 1, rng);
    const auto back = io::weight_from_json(io::to_json(w), cx);
    ASSERT_TRUE(back.lattice.has_value());
    EXPECT_EQ(back.lattice->values(), w.values());
    const auto f = random_pl(cx, rng);
    EXPECT_EQ(io::function_from_json(io::to_json(f), cx), f);
    EXPECT_EQ(io::divisor_from_json(io::divisor_json(to_divisor(f)), cx).coefficients, to_divisor(f).coefficients);
    const auto e = normalize(w);
    const auto eb = io::weight_from_json(io::to_json(e), cx);
    ASSERT_TRUE(eb.euclidean.has_value());
    EXPECT_EQ(eb.euclidean->values(), e.values());
  }
}

TEST(Io, SubdivisionRoundTrip) {
  const auto p2 = fixtures::p2();
  const Subdivision s = stellar_subdivide(p2, {{0, 1}, {1, 1}}, "e12");
  const auto back = io::subdivision_from_json(io::to_json(s), p2);
  EXPECT_TRUE(check_subdivision(back).ok());
  EXPECT_EQ(back.fine()->ray_count(), 4u);
  const std::size_t r = *back.fine()->find_ray("e12");
  EXPECT_EQ(back.location(r).coefficients, (RatVector{1, 1}));
}

TEST(Io, Errors) {
  const auto p2 = fixtures::p2();
  EXPECT_THROW(io::function_from_json(io::Json::parse(R"({"ray_values":{"nope":1}})"), p2), std::exception);
  EXPECT_THROW(io::complex_from_json(io::Json::parse(R"({"rays":[]})")), std::exception);
  EXPECT_THROW(io::load_json("/nonexistent/file.json"), std::exception);
}

TEST(Io, TowerGenerator) {
  const auto towers = io::towers_from_json(io::Json::parse(
      R"({"generator":"neg-norm-ladder","fixture":"p2","slots":["neg-norm",{"divisor":{"e3":1}}],"steps":2})"));
  ASSERT_EQ(towers.size(), 2u);
  EXPECT_EQ(towers[0].size(), 3u);
  EXPECT_TRUE(bdiv_validate(towers[1]).compatible);
}
