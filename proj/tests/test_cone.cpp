#include "fano4/cone.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace fano4;
using cones::RationalCone;

namespace {

std::vector<IVec> random_gens(std::mt19937& rng, std::size_t dim, std::size_t count, int range) {
  std::vector<IVec> g;
  while (g.size() < count) {
    IVec v(dim);
    for (auto& x : v) x = static_cast<int>(rng() % static_cast<unsigned>(2 * range + 1)) - range;
    if (!is_zero(v)) g.push_back(v);
  }
  return g;
}

IVec random_point(std::mt19937& rng, std::size_t dim, int range) {
  IVec v(dim);
  for (auto& x : v) x = static_cast<int>(rng() % static_cast<unsigned>(2 * range + 1)) - range;
  return v;
}

}  // namespace

// Membership and facets against Carathéodory enumeration.
TEST(Cone, MatchesBruteForceOracle) {
  std::mt19937 rng(20240601);
  int full = 0;
  for (int trial = 0; trial < 250; ++trial) {
    std::size_t dim = 2 + rng() % 4;
    std::size_t count = dim + rng() % (9 - dim);
    // Bias towards pointed cones: most generators in a half-space.
    auto g = random_gens(rng, dim, count, 2);
    for (auto& v : g)
      if (v[0] < 0 && rng() % 4) v[0] = -v[0];
    auto c = RationalCone::from_generators(g, dim);
    for (int k = 0; k < 12; ++k) {
      IVec p = random_point(rng, dim, 3);
      ASSERT_EQ(c.contains(p), oracle::brute_contains(g, p, dim)) << "trial " << trial;
    }
    for (const auto& v : g) ASSERT_TRUE(c.contains(v));
    if (c.full_dimensional() && c.pointed()) {
      ++full;
      auto ours = c.facet_normals();
      std::set<IVec> mine(ours.begin(), ours.end());
      ASSERT_EQ(mine, oracle::brute_facets(g, dim)) << "trial " << trial;
      // Extreme rays are generators not in the cone of the others.
      std::set<IVec> extreme;
      for (std::size_t i = 0; i < g.size(); ++i) {
        std::vector<IVec> rest;
        for (std::size_t j = 0; j < g.size(); ++j)
          if (primitive(g[j]) != primitive(g[i])) rest.push_back(g[j]);
        if (!oracle::brute_contains(rest, g[i], dim)) extreme.insert(primitive(g[i]));
      }
      std::set<IVec> er(c.extreme_rays().begin(), c.extreme_rays().end());
      ASSERT_EQ(er, extreme);
    }
  }
  EXPECT_GT(full, 50);
}

TEST(Cone, DualOfDualIsIdentity) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t dim = 1 + rng() % 5;
    auto g = random_gens(rng, dim, 1 + rng() % 8, 3);
    auto c = RationalCone::from_generators(g, dim);
    auto d = cones::dual_cone(c);
    ASSERT_EQ(cones::dual_cone(d), c);
    for (const auto& r : d.generators())
      for (const auto& v : g) ASSERT_GE(dot(r, v), 0);
    ASSERT_EQ(c.dim() + d.lineality().size(), dim);
  }
}

TEST(Cone, CanonicalFormIndependentOfInput) {
  std::vector<IVec> a{ivec({1, 0}), ivec({0, 1}), ivec({1, 1}), ivec({2, 0})};
  std::vector<IVec> b{ivec({0, 3}), ivec({5, 0})};
  EXPECT_EQ(RationalCone::from_generators(a, 2), RationalCone::from_generators(b, 2));
  EXPECT_EQ(RationalCone::from_generators(b, 2), RationalCone::from_inequalities({ivec({1, 0}), ivec({0, 1})}, 2));
}

TEST(Cone, NonPointedAndLowerDimensional) {
  auto half = RationalCone::from_generators({ivec({1, 0}), ivec({-1, 0}), ivec({0, 1})}, 2);
  EXPECT_FALSE(half.pointed());
  EXPECT_TRUE(half.full_dimensional());
  EXPECT_EQ(half.lineality().size(), 1u);
  EXPECT_TRUE(half.contains(ivec({-7, 2})));
  EXPECT_FALSE(half.contains(ivec({0, -1})));
  auto ray = RationalCone::from_generators({ivec({1, 1, 0})}, 3);
  EXPECT_EQ(ray.dim(), 1u);
  EXPECT_FALSE(ray.full_dimensional());
  EXPECT_TRUE(ray.contains(ivec({3, 3, 0})));
  EXPECT_FALSE(ray.contains(ivec({3, 3, 1})));
  EXPECT_TRUE(RationalCone::full(3).contains(ivec({-1, 5, 2})));
  EXPECT_EQ(cones::dual_cone(RationalCone::full(3)), RationalCone::zero(3));
}

TEST(Cone, IntersectionAndFaces) {
  // Cube cone over a square: 4 rays, 4 facets, 4 edges.
  std::vector<IVec> g{ivec({1, 1, 1}), ivec({1, -1, 1}), ivec({-1, 1, 1}), ivec({-1, -1, 1})};
  auto c = RationalCone::from_generators(g, 3);
  EXPECT_EQ(c.facets().size(), 4u);
  EXPECT_EQ(cones::faces_of_dim(c, 1).size(), 4u);
  EXPECT_EQ(cones::faces_of_dim(c, 2).size(), 4u);
  auto pos = RationalCone::from_inequalities({ivec({1, 0, 0})}, 3);
  auto i = cones::intersect(c, pos);
  EXPECT_EQ(i.extreme_rays().size(), 4u);
  EXPECT_TRUE(i.contains(ivec({0, 1, 1})));
  EXPECT_FALSE(i.contains(ivec({-1, 1, 1})));
}

TEST(Cone, DimensionMismatchThrows) {
  auto c = RationalCone::from_generators({ivec({1, 0})}, 2);
  EXPECT_THROW(c.contains(ivec({1, 0, 0})), DimensionError);
  EXPECT_THROW(RationalCone::from_generators({ivec({1, 0, 0})}, 2), DimensionError);
}
