#include "fano4/mori.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace fano4;
using namespace fano4::mori;
using toric::ToricVariety;

namespace {

IVec random_class(std::mt19937& rng, int rho) {
  IVec v(static_cast<std::size_t>(rho));
  for (auto& x : v) x = static_cast<int>(rng() % 9) - 4;
  return v;
}

}  // namespace

TEST(Mori, ConeSuiteOnCorpus) {
  std::mt19937 rng(1);
  for (const auto& nf : library::corpus()) {
    ToricVariety X(nf.make());
    auto s = cone_suite(X);
    for (const auto& c : s.checks) EXPECT_TRUE(c.pass) << nf.name << ": " << c.name;
    EXPECT_TRUE(s.nef.full_dimensional());
    EXPECT_TRUE(s.eff.pointed());
    // Nef: nonnegative on every wall curve (toric cone theorem).
    for (int k = 0; k < 30; ++k) {
      IVec d = random_class(rng, X.rho());
      bool nef = true;
      for (const auto& w : X.walls()) nef = nef && dot(to_qvec(d), birational::to_ivec(w.curve.coords)) >= 0;
      ASSERT_EQ(s.nef.contains(d), nef) << nf.name;
    }
    // Eff is generated by the prime classes.
    auto v = prime_classes(X);
    for (int k = 0; k < 30; ++k) {
      IVec d = random_class(rng, X.rho());
      if (v.size() <= 12) { ASSERT_EQ(s.eff.contains(d), oracle::brute_contains(v, d, static_cast<std::size_t>(X.rho()))); }
    }
  }
}

TEST(Mori, ProductsHaveNoFixedDivisors) {
  for (auto f : {library::p4(), library::p1xp3(), library::p2xp2(), library::p1_4()}) {
    ToricVariety X(f);
    EXPECT_TRUE(fixed_prime_divisors(X).empty());
    EXPECT_EQ(cone_suite(X).nef, cone_suite(X).mov);
  }
}

TEST(Mori, FixedDivisorsOfBlowups) {
  struct Row {
    Fan f;
    std::string type;
    long DC, KC;
  };
  std::vector<Row> rows{{library::bl_pt_p4(), "(3,0)^sm", -1, 3},
                        {library::bl_line_p4(), "(3,1)^sm", -1, 2},
                        {library::bl_plane_p4(), "(3,2)", -1, 1}};
  for (const auto& r : rows) {
    ToricVariety X(r.f);
    auto fx = classify_all(X);
    ASSERT_EQ(fx.size(), 1u);
    EXPECT_EQ(fx[0].ray_index, r.f.num_rays() - 1);
    EXPECT_EQ(fx[0].type_label, r.type);
    ASSERT_TRUE(fx[0].pairing_D_CD && fx[0].degK_CD);
    EXPECT_EQ(*fx[0].pairing_D_CD, r.DC);
    EXPECT_EQ(*fx[0].degK_CD, r.KC);
  }
}

TEST(Mori, ClassificationRejectsNonFixed) {
  ToricVariety X(library::bl_pt_p4());
  FixedDivisorReport rep;
  rep.ray_index = 0;
  EXPECT_THROW(classify_fixed_divisor(X, rep), MoriError);
  rep.ray_index = 17;
  EXPECT_THROW(classify_fixed_divisor(X, rep), MoriError);
}

// C_D is D-negative with the tabulated anticanonical degree, on corpus fans and
// random Fano blow-ups.
TEST(Mori, FixedCurvesAreNegative) {
  std::vector<Fan> fans;
  for (const auto& nf : library::corpus()) fans.push_back(nf.make());
  std::mt19937 rng(555);
  for (int guard = 0; guard < 400 && fans.size() < 40; ++guard) {
    Fan f = oracle::random_blowup_fan(rng, 2);
    if (ToricVariety(f).is_fano()) fans.push_back(f);
  }
  int checked = 0;
  for (const auto& f : fans) {
    ToricVariety X(f);
    if (!X.is_fano()) continue;
    for (const auto& rep : classify_all(X)) {
      if (!rep.pairing_D_CD) continue;
      ASSERT_LT(*rep.pairing_D_CD, 0) << fan_hash(f) << " ray " << rep.ray_index;
      ASSERT_GT(*rep.degK_CD, 0);
      auto want = expected_degK(rep.type_label);
      if (want) { ASSERT_EQ(*rep.degK_CD, *want) << rep.type_label; }
      ++checked;
    }
  }
  EXPECT_GE(checked, 20);
}

TEST(Mori, LefschetzDefect) {
  struct Row {
    Fan f;
    int delta;
  };
  std::vector<Row> rows{{library::p4(), 0},      {library::p1xp3(), 1},    {library::p2xp2(), 0},
                        {library::bl_pt_p4(), 1}, {library::s6xs6(), 3},   {library::s7xp1xp1(), 2},
                        {library::p1_4(), 1}};
  for (const auto& r : rows) EXPECT_EQ(lefschetz_defect(ToricVariety(r.f)).delta, r.delta) << fan_hash(r.f);
  auto b = lefschetz_defect(ToricVariety(library::bl_pt_p4()));
  EXPECT_EQ(library::bl_pt_p4().label(b.witness), "E");
}

// δ from its definition: ρ(X) − dim of the span of curves lying in D_u, with
// curves in D_u taken from every torus-invariant curve (all 3-cones).
TEST(Mori, DefectAgreesWithInvariantCurveOracle) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    Fan f = oracle::random_blowup_fan(rng, 3);
    ToricVariety X(f);
    int best = 0;
    for (int u = 0; u < f.num_rays(); ++u) {
      std::vector<IVec> curves;
      for (const auto& w : X.walls())
        if (std::binary_search(w.cone.begin(), w.cone.end(), u)) curves.push_back(w.relation);
      int r = static_cast<int>(rank(curves, static_cast<std::size_t>(f.num_rays())));
      best = std::max(best, X.rho() - r);
    }
    ASSERT_EQ(lefschetz_defect(X).delta, best);
  }
}

TEST(Mori, ProductOfSurfacesDetection) {
  EXPECT_TRUE(product_of_surfaces(library::s6xs6()).has_value());
  EXPECT_TRUE(product_of_surfaces(library::p2xp2()).has_value());
  EXPECT_FALSE(product_of_surfaces(library::p4()).has_value());
  EXPECT_FALSE(product_of_surfaces(library::bl_pt_p4()).has_value());
  EXPECT_FALSE(product_of_surfaces(library::p1xp3()).has_value());
}

TEST(Mori, BoundsHoldOnFanoCorpus) {
  for (const auto& nf : library::corpus()) {
    ToricVariety X(nf.make());
    if (!X.is_fano()) {
      EXPECT_THROW(verify_bounds(X), MoriError);
      continue;
    }
    for (const auto& c : verify_bounds(X)) EXPECT_TRUE(c.holds) << nf.name << ": " << c.claim;
  }
  // S6×S6 is exempt from δ <= 3 only because it is a product.
  auto claims = verify_bounds(ToricVariety(library::s6xs6()));
  EXPECT_FALSE(claims[0].applicable);
}

TEST(Mori, MmpStepsAreNegativeAndProgress) {
  std::mt19937 rng(2718);
  int traces = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Fan f = oracle::random_blowup_fan(rng, 3);
    ToricVariety X(f);
    for (const auto& rep : fixed_prime_divisors(X)) {
      for (const auto& r : mmp_exhaustive(f, rep.ray_index)) {
        ++traces;
        for (const auto& s : r.trace.steps) ASSERT_LT(s.divisor_degree, 0);
        ASSERT_GE(r.progress.size(), r.trace.steps.size());
        for (std::size_t k = 0; k + 1 < r.progress.size(); ++k) ASSERT_LT(r.progress[k + 1], r.progress[k]);
        if (r.end == MmpEnd::Nef) {
          ToricVariety Y(r.final_fan);
          for (const auto& w : Y.walls()) ASSERT_GE(dot(r.final_divisor, w.relation), 0);
        }
        if (r.end == MmpEnd::ContractedD) { ASSERT_TRUE(r.terminal_ray.has_value()); }
      }
    }
  }
  EXPECT_GT(traces, 20);
}

TEST(Mori, MmpOfAmpleDivisorIsTrivial) {
  Fan f = library::bl_pt_p4();
  auto r = mmp_for_divisor(f, QVec(6, Rational(1)));
  EXPECT_EQ(r.end, MmpEnd::Nef);
  EXPECT_TRUE(r.trace.steps.empty());
  auto e = mmp_for_divisor(f, 5);
  EXPECT_EQ(e.end, MmpEnd::ContractedD);
  ASSERT_EQ(e.trace.steps.size(), 1u);
  EXPECT_EQ(*e.trace.steps[0].type_label, birational::TypeLabel::T30sm);
  // A pullback of an ample class from P⁴ is nef, not ample.
  QVec h(6, Rational(0));
  h[0] = 1;
  EXPECT_EQ(mmp_for_divisor(f, h).end, MmpEnd::Nef);
}

// Chamber counts against the circuit-flip graph of regular triangulations.
TEST(Mori, ChambersMatchTriangulationFlipGraph) {
  std::vector<Fan> fans{library::bl_pt_p4(), library::bl_line_p4(), library::special_example(),
                        library::ambiguous_example(), library::plane_over_point()};
  std::mt19937 rng(404);
  for (int k = 0; k < 8; ++k) fans.push_back(oracle::random_blowup_fan(rng, 2));
  for (const auto& f : fans) {
    ToricVariety X(f);
    auto ch = mori_chambers(X);
    ASSERT_EQ(ch.chambers.size(), oracle::flip_graph_size(f)) << fan_hash(f);
    EXPECT_EQ(ch.chambers[0].cone, cone_suite(X).nef);
    // Chambers tile Mov: each lies in it and distinct chambers meet in lower dimension.
    for (std::size_t a = 0; a < ch.chambers.size(); ++a) {
      ASSERT_TRUE(ch.mov.contains(ch.chambers[a].cone));
      ASSERT_TRUE(ch.chambers[a].cone.full_dimensional());
      for (std::size_t b = a + 1; b < ch.chambers.size(); ++b)
        ASSERT_FALSE(cones::intersect(ch.chambers[a].cone, ch.chambers[b].cone).full_dimensional());
    }
  }
}

TEST(Mori, ChambersOfSpecialExample) {
  auto ch = mori_chambers(ToricVariety(library::special_example()));
  EXPECT_EQ(ch.chambers.size(), 2u);
  ASSERT_EQ(ch.edges.size(), 1u);
}
