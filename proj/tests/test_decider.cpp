#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "catmaj/catalyst.hpp"
#include "catmaj/decide.hpp"
#include "catmaj/majorize.hpp"
#include "testutil.hpp"

using namespace catmaj;

namespace {

ProbVec vec(std::initializer_list<const char*> comps) {
  std::vector<Rat> v;
  for (const char* s : comps) v.push_back(parse_scalar(s));
  return canonicalize(std::move(v));
}

ProbVec classic_x() { return vec({"0.4", "0.4", "0.1", "0.1"}); }
ProbVec classic_y() { return vec({"0.5", "0.25", "0.25", "0"}); }

// Interior-dip instances. At d = 3 a valid endpoint pattern with equal sums
// already forces plain majorization, so the smallest genuine dips live at
// d = 4. Both pairs are strictly positive with two-sided finite windows.
ProbVec posdip_x() { return vec({"54/115", "53/115", "6/115", "2/115"}); }
ProbVec posdip_y() { return vec({"1/2", "21/61", "17/122", "1/61"}); }
ProbVec negdip_x() { return vec({"35/73", "29/73", "5/73", "4/73"}); }
ProbVec negdip_y() { return vec({"51/92", "19/92", "17/92", "5/92"}); }

ProbVec curated_x() {
  return vec({"32823/65536", "233441/524288", "28263/524288"});
}
ProbVec curated_y() {
  return vec({"705829/1048576", "42735/131072", "867/1048576"});
}

}  // namespace

TEST(Window, ClassicUpperBoundAndZeroSentinel) {
  RWindow w = window_bounds(classic_x(), classic_y());
  // r_hi = ln 4 / ln(0.5/0.4)
  EXPECT_NEAR(w.r_hi, std::log(4.0) / std::log(1.25), 1e-9);
  EXPECT_NEAR(w.r_hi, 6.2125676, 1e-6);
  EXPECT_TRUE(w.lo_open_at_zero);
  EXPECT_EQ(w.r_lo, 0.0);
  EXPECT_NE(w.lo_rationale, nullptr);
  EXPECT_NE(w.hi_rationale, nullptr);
}

TEST(Window, DoublingTopGivesUnitBound) {
  RWindow w = window_bounds(vec({"1/2", "1/2"}), vec({"1", "0"}));
  EXPECT_NEAR(w.r_hi, 1.0, 1e-12);
  EXPECT_TRUE(w.lo_open_at_zero);
}

TEST(Window, TwoSidedFiniteWhenBothPositive) {
  RWindow w = window_bounds(posdip_x(), posdip_y());
  EXPECT_NEAR(w.r_lo, -23.461157, 1e-4);
  EXPECT_NEAR(w.r_hi, 22.074434, 1e-4);
  EXPECT_FALSE(w.lo_open_at_zero);

  w = window_bounds(negdip_x(), negdip_y());
  EXPECT_NEAR(w.r_lo, -169.358015, 1e-4);
  EXPECT_NEAR(w.r_hi, 9.550874, 1e-4);
}

TEST(Window, EndpointViolationsThrow) {
  // Top fails: x1 >= y1.
  EXPECT_THROW(window_bounds(vec({"0.5", "0.25", "0.25"}), vec({"0.48", "0.48", "0.04"})),
               Error);
  // Bottom fails against a strictly positive y: xd <= yd.
  EXPECT_THROW(window_bounds(vec({"0.5", "0.3", "0.2"}), vec({"0.55", "0.24", "0.21"})),
               Error);
}

TEST(Decide, ClassicPairIsTrumpedNotMajorized) {
  ProbVec x = classic_x(), y = classic_y();

  MajorizationReport plain = majorizes(x, y);
  EXPECT_FALSE(plain.holds);
  ASSERT_TRUE(plain.first_violation_index.has_value());
  EXPECT_EQ(*plain.first_violation_index, 2);  // 0.8 > 0.75

  Verdict v = decide(x, y);
  EXPECT_EQ(v.kind, VerdictKind::Trumped);
  EXPECT_FALSE(v.witness_r.has_value());
  // The curve's minimum sits at the right window edge.
  EXPECT_NEAR(v.min_margin, 0.02222, 1e-3);
  ASSERT_TRUE(v.argmin_r.has_value());
  EXPECT_NEAR(*v.argmin_r, 6.2126, 1e-2);
  EXPECT_EQ(v.window.r_lo, 0.0);
  EXPECT_TRUE(v.window.lo_open_at_zero);
  EXPECT_NEAR(v.window.r_hi, 6.2126, 1e-3);
}

TEST(Decide, UpperEndpointWitness) {
  Verdict v = decide(vec({"0.5", "0.25", "0.25"}), vec({"0.48", "0.48", "0.04"}));
  EXPECT_EQ(v.kind, VerdictKind::NotTrumped);
  ASSERT_TRUE(v.witness_r.has_value());
  EXPECT_EQ(*v.witness_r, kInf);
  EXPECT_EQ(v.min_margin, -kInf);
}

TEST(Decide, LowerEndpointWitness) {
  Verdict v = decide(vec({"0.5", "0.3", "0.2"}), vec({"0.55", "0.24", "0.21"}));
  EXPECT_EQ(v.kind, VerdictKind::NotTrumped);
  ASSERT_TRUE(v.witness_r.has_value());
  EXPECT_EQ(*v.witness_r, -kInf);
  EXPECT_EQ(v.min_margin, -kInf);
}

TEST(Decide, InteriorDipPositiveR) {
  Verdict v = decide(posdip_x(), posdip_y());
  EXPECT_EQ(v.kind, VerdictKind::NotTrumped);
  EXPECT_NEAR(v.min_margin, -0.17624323, 1e-3);
  ASSERT_TRUE(v.witness_r.has_value());
  EXPECT_NEAR(*v.witness_r, 0.13350027, 2e-2);
  // A single f_r evaluated at the witness confirms the counterexample.
  double r = *v.witness_r;
  EXPECT_GT(f_r(posdip_x(), r), f_r(posdip_y(), r));
}

TEST(Decide, InteriorDipNegativeR) {
  Verdict v = decide(negdip_x(), negdip_y());
  EXPECT_EQ(v.kind, VerdictKind::NotTrumped);
  EXPECT_NEAR(v.min_margin, -0.12299248, 1e-3);
  ASSERT_TRUE(v.witness_r.has_value());
  EXPECT_NEAR(*v.witness_r, -0.28950348, 2e-2);
  double r = *v.witness_r;
  EXPECT_GT(f_r(negdip_x(), r), f_r(negdip_y(), r));
}

TEST(Decide, EqualVectorsAfterPermutation) {
  Verdict v = decide(vec({"1/6", "1/2", "1/3"}), vec({"1/2", "1/3", "1/6"}));
  EXPECT_EQ(v.kind, VerdictKind::Equal);
}

TEST(Decide, ZeroOnXSideOnly) {
  // After reduction x keeps a zero while y is strictly positive, so
  // f_r(x) = +inf for r <= 0 and r = 0 witnesses the failure.
  Verdict v = decide(vec({"0.6", "0.4", "0"}), vec({"0.5", "0.3", "0.2"}));
  EXPECT_EQ(v.kind, VerdictKind::NotTrumped);
  ASSERT_TRUE(v.witness_r.has_value());
  EXPECT_EQ(*v.witness_r, 0.0);
}

TEST(Decide, SharedComponentsCancelBeforeZeroAnalysis) {
  // The shared 1/2 cancels; the residual x side carries the zero.
  Verdict v = decide(vec({"1/2", "1/2", "0"}), vec({"1/2", "0.3", "0.2"}));
  EXPECT_EQ(v.kind, VerdictKind::NotTrumped);
  ASSERT_TRUE(v.witness_r.has_value());
  EXPECT_EQ(*v.witness_r, 0.0);
}

TEST(Decide, InputValidation) {
  ProbVec bad = canonicalize({parse_scalar("1/2"), parse_scalar("1/4")});
  EXPECT_THROW(decide(bad, classic_y()), Error);
  EXPECT_THROW(decide(classic_x(), bad), Error);
  EXPECT_THROW(decide(classic_x(), classic_y(), 0.0), Error);
  EXPECT_THROW(decide(classic_x(), classic_y(), -1e-9), Error);
}

TEST(Decide, CoarseToleranceReportsBoundary) {
  Verdict v = decide(classic_x(), classic_y(), 1.0);
  EXPECT_EQ(v.kind, VerdictKind::Boundary);
  EXPECT_TRUE(v.witness_r.has_value());
}

TEST(Decide, CuratedPairTwoSidedWindow) {
  Verdict v = decide(curated_x(), curated_y());
  EXPECT_EQ(v.kind, VerdictKind::Trumped);
  EXPECT_GT(v.min_margin, 0.05);
  EXPECT_FALSE(v.window.lo_open_at_zero);
  EXPECT_LT(v.window.r_lo, 0.0);
  EXPECT_GT(v.window.r_lo, -1e4);
  EXPECT_GT(v.window.r_hi, 1.0);
}

TEST(Decide, SoundAgainstBruteForceSearch) {
  // One-sided checks against the exhaustive catalyst search at d = 3:
  // NotTrumped must mean no lattice catalyst exists, and any found catalyst
  // must preclude NotTrumped.
  std::mt19937_64 rng(71);
  int not_trumped = 0, found = 0;
  for (int trial = 0; trial < 500; ++trial) {
    ProbVec x = testutil::rand_normalized(rng, 3, 1 << 10);
    ProbVec y = testutil::rand_normalized(rng, 3, 1 << 10);
    if (x == y) continue;
    Verdict v = decide(x, y);
    auto z = brute_force_search(x, y, 3, 64);
    if (v.kind == VerdictKind::NotTrumped) {
      ++not_trumped;
      EXPECT_FALSE(z.has_value()) << "trial " << trial;
    }
    if (z.has_value()) {
      ++found;
      EXPECT_NE(v.kind, VerdictKind::NotTrumped) << "trial " << trial;
      EXPECT_TRUE(catalyzed_majorizes(x, y, *z).holds);
    }
  }
  EXPECT_GT(not_trumped, 50);
  EXPECT_GT(found, 20);
}

TEST(Decide, PlainMajorizationNeverNotTrumped) {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 100; ++trial) {
    ProbVec y = testutil::rand_normalized(rng, 4, 1 << 12);
    ProbVec x = testutil::t_transform_down(rng, y, 6);
    ASSERT_TRUE(majorizes(x, y).holds);
    Verdict v = decide(x, y);
    EXPECT_NE(v.kind, VerdictKind::NotTrumped) << "trial " << trial;
  }
}

TEST(Decide, DeterministicAcrossRunsAndThreads) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 30; ++trial) {
    int d = 2 + static_cast<int>(rng() % 4);
    ProbVec x = testutil::rand_normalized(rng, d, 1 << 10);
    ProbVec y = testutil::rand_normalized(rng, d, 1 << 10);
    Verdict a = decide(x, y);
    Verdict b = decide(x, y);
    Verdict c = decide(x, y, 1e-9, 2);
    EXPECT_EQ(a.kind, b.kind);
    EXPECT_EQ(a.kind, c.kind);
    EXPECT_EQ(a.witness_r, b.witness_r);
    EXPECT_EQ(a.witness_r, c.witness_r);
    EXPECT_EQ(a.argmin_r, b.argmin_r);
    EXPECT_EQ(a.argmin_r, c.argmin_r);
    // Margins must agree bit for bit, -inf included.
    EXPECT_TRUE(a.min_margin == c.min_margin ||
                (std::isinf(a.min_margin) && std::isinf(c.min_margin)));
    EXPECT_TRUE(a.min_margin == b.min_margin ||
                (std::isinf(a.min_margin) && std::isinf(b.min_margin)));
  }
}

TEST(Decide, WindowIsSufficientBeyondBothEdges) {
  // Outside the scan window the endpoint terms dominate, so g stays positive.
  {
    ProbVec x = classic_x(), y = classic_y();
    RWindow w = window_bounds(x, y);
    for (int i = 1; i <= 50; ++i) {
      double r = w.r_hi + 0.3 * i;
      CurveSample s = g_sample(VecD(x), VecD(y), r);
      EXPECT_GT(s.g, 0.0) << "r = " << r;
    }
  }
  {
    ProbVec x = curated_x(), y = curated_y();
    RWindow w = window_bounds(x, y);
    VecD vx(x), vy(y);
    for (int i = 1; i <= 50; ++i) {
      EXPECT_GT(g_sample(vx, vy, w.r_hi + 0.3 * i).g, 0.0);
      EXPECT_GT(g_sample(vx, vy, w.r_lo - 0.3 * i).g, 0.0);
    }
  }
}

TEST(Curve, ClassicGridShapeAndFlags) {
  auto samples = sample_curve(classic_x(), classic_y(), -1.0, 8.0, 181);
  ASSERT_EQ(samples.size(), 181u);
  EXPECT_EQ(samples.front().r, -1.0);
  EXPECT_EQ(samples.back().r, 8.0);

  int infinite = 0, indeterminate = 0, limit_r1 = 0, ok = 0;
  for (const auto& s : samples) {
    switch (s.flag) {
      case CurveFlag::Infinite:
        ++infinite;
        EXPECT_LT(s.r, 0.0);
        EXPECT_EQ(s.g, kInf);  // zero in y blows up the r < 0 side
        break;
      case CurveFlag::Indeterminate:
        ++indeterminate;
        EXPECT_EQ(s.r, 0.0);
        break;
      case CurveFlag::LimitR1:
        ++limit_r1;
        EXPECT_EQ(s.r, 1.0);
        break;
      case CurveFlag::LimitR0:
        ADD_FAILURE() << "r = 0 limit needs strict positivity on both sides";
        break;
      default:
        ++ok;
    }
  }
  EXPECT_EQ(infinite, 20);  // grid points -1, -0.95, ..., -0.05
  EXPECT_EQ(indeterminate, 1);
  EXPECT_EQ(limit_r1, 1);
  EXPECT_EQ(ok, 159);

  // Spot value on the grid: r = 2 lands at index 60.
  const CurveSample& at2 = samples[60];
  ASSERT_EQ(at2.r, 2.0);
  EXPECT_NEAR(at2.g, 0.0489902, 1e-6);
}

TEST(Curve, IdenticalInputsGiveZeroCurve) {
  ProbVec p = vec({"1/2", "1/2", "0"});
  auto samples = sample_curve(p, p, -1.0, 1.0, 5);
  ASSERT_EQ(samples.size(), 5u);
  for (const auto& s : samples) EXPECT_EQ(s.g, 0.0);
  EXPECT_EQ(samples[0].flag, CurveFlag::Ok);
  EXPECT_EQ(samples[2].flag, CurveFlag::LimitR0);  // snapped exact zero
  EXPECT_EQ(samples[2].r, 0.0);
  EXPECT_EQ(samples[4].flag, CurveFlag::LimitR1);
}

TEST(Curve, TwoPointGridHitsEndpointsExactly) {
  auto samples = sample_curve(posdip_x(), posdip_y(), 0.25, 3.75, 2);
  ASSERT_EQ(samples.size(), 2u);
  EXPECT_EQ(samples[0].r, 0.25);
  EXPECT_EQ(samples[1].r, 3.75);
}

TEST(Curve, ParameterValidation) {
  EXPECT_THROW(sample_curve(classic_x(), classic_y(), 2.0, 1.0, 10), Error);
  EXPECT_THROW(sample_curve(classic_x(), classic_y(), 0.0, 1.0, 1), Error);
  EXPECT_THROW(sample_curve(classic_x(), vec({"1/2", "1/2"}), 0.0, 1.0, 3), Error);
}
