#include "fano4/fan.hpp"
#include "fano4/library.hpp"

#include <gtest/gtest.h>

using namespace fano4;

TEST(Fan, CorpusValidates) {
  for (const auto& nf : library::corpus()) {
    auto rep = validate(nf.make());
    EXPECT_TRUE(rep.ok()) << nf.name << ": " << rep.first_failure();
  }
}

TEST(Fan, WeightedProjectiveSpaceFailsSmoothness) {
  auto rep = validate(library::weighted_p11112());
  EXPECT_TRUE(rep.check("primitivity").pass);
  EXPECT_TRUE(rep.check("compatibility").pass);
  EXPECT_TRUE(rep.check("completeness").pass);
  ASSERT_FALSE(rep.check("smoothness").pass);
  EXPECT_NE(rep.check("smoothness").witness.find("|det| = 2"), std::string::npos);
}

TEST(Fan, DeletedConeBreaksCompleteness) {
  Fan f = library::p4();
  f.max_cones.pop_back();
  auto rep = validate(f);
  EXPECT_TRUE(rep.check("smoothness").pass);
  EXPECT_FALSE(rep.check("completeness").pass);
  EXPECT_FALSE(rep.check("completeness").witness.empty());
}

TEST(Fan, OverlappingConesBreakCompatibility) {
  // Two cones of P² plus a cone overlapping both.
  Fan f;
  f.dim = 2;
  f.rays = {ivec({1, 0}), ivec({0, 1}), ivec({-1, -1}), ivec({1, 1})};
  f.max_cones = {{0, 1}, {1, 2}, {0, 2}, {1, 3}};
  EXPECT_FALSE(validate(f).check("compatibility").pass);
}

TEST(Fan, NonPrimitiveAndDuplicateRays) {
  Fan f = library::p4();
  f.rays[0] = ivec({2, 0, 0, 0});
  EXPECT_FALSE(validate(f).check("primitivity").pass);
  Fan g = library::p4();
  g.rays[1] = g.rays[0];
  EXPECT_FALSE(validate(g).ok());
}

TEST(Fan, StructureErrors) {
  Fan f = library::p4();
  f.max_cones[0] = {0, 1, 2, 9};
  auto rep = validate(f);
  EXPECT_FALSE(rep.check("structure").pass);
  EXPECT_NE(rep.first_failure().find("missing ray"), std::string::npos);
  EXPECT_THROW(require_valid(f), FanError);
}

TEST(Fan, HashIsInvariantUnderRelabelling) {
  Fan f = library::bl_pt_p4();
  Fan g = f;
  std::reverse(g.rays.begin(), g.rays.end());
  const int m = g.num_rays();
  for (auto& c : g.max_cones)
    for (auto& i : c) i = m - 1 - i;
  g.normalize_cones();
  g.labels.clear();
  EXPECT_EQ(fan_hash(f), fan_hash(g));
  EXPECT_NE(fan_hash(f), fan_hash(library::p4()));
  EXPECT_EQ(fan_hash(f).size(), 16u);
}
