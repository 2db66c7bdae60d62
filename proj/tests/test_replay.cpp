#include "fano4/replay.hpp"

#include <gtest/gtest.h>

using namespace fano4;

namespace {

void expect_all_pass(const replay::Report& r) {
  ASSERT_FALSE(r.items.empty());
  for (const auto& c : r.items) EXPECT_TRUE(c.pass) << r.example << ": " << c.name << " (" << c.detail << ")";
}

}  // namespace

TEST(Replay, EightPointLedger) { expect_all_pass(replay::eight_points()); }
TEST(Replay, AmbiguousSection) { expect_all_pass(replay::section_divisor()); }
TEST(Replay, SurfaceBlowupOfBundle) { expect_all_pass(replay::surface_blowup()); }
TEST(Replay, TwoPointTower) { expect_all_pass(replay::two_point_tower()); }

TEST(Replay, UnknownNameThrows) { EXPECT_THROW(replay::run("nonesuch"), Error); }

TEST(Replay, TowerUsesTheFirstWorkingPair) {
  auto sqm = library::two_point_sqm(library::plane_over_point());
  ASSERT_TRUE(sqm.has_value());
  EXPECT_EQ(sqm->point_a, sqm->base.max_cones[0]);
  EXPECT_EQ(sqm->point_b, sqm->base.max_cones[6]);
  auto inv = birational::invariants(toric::ToricVariety(sqm->fano));
  EXPECT_EQ(inv.degK4, 305);
  // Each flip step is −K-negative and lowers ρ-preserving progress.
  for (const auto& s : sqm->flips.trace.steps) EXPECT_LT(s.divisor_degree, 0);
}
