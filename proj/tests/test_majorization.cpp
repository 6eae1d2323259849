#include <gtest/gtest.h>

#include <optional>
#include <random>
#include <vector>

#include "catmaj/majorize.hpp"
#include "catmaj/vec.hpp"
#include "testutil.hpp"

using namespace catmaj;

namespace {

ProbVec vec(std::initializer_list<const char*> comps) {
  std::vector<Rat> v;
  for (const char* s : comps) v.push_back(parse_scalar(s));
  return canonicalize(std::move(v));
}

}  // namespace

using testutil::t_transform_down;

TEST(Majorizes, ClassicPairFailsAtPrefixTwo) {
  ProbVec x = vec({"0.4", "0.4", "0.1", "0.1"});
  ProbVec y = vec({"0.5", "0.25", "0.25", "0"});
  MajorizationReport rep = majorizes(x, y);
  EXPECT_FALSE(rep.holds);
  ASSERT_TRUE(rep.first_violation_index.has_value());
  EXPECT_EQ(*rep.first_violation_index, 2);  // 0.8 > 0.75
  EXPECT_TRUE(rep.sums_equal);
}

TEST(Majorizes, UniformIsBottomElement) {
  std::mt19937_64 rng(500);
  for (int d = 2; d <= 6; ++d) {
    std::vector<Rat> u(static_cast<size_t>(d), make_rat(1, d));
    ProbVec uniform = canonicalize(std::move(u));
    for (int trial = 0; trial < 50; ++trial) {
      ProbVec y = testutil::rand_normalized(rng, d);
      EXPECT_TRUE(majorizes(uniform, y).holds);
    }
  }
}

TEST(Majorizes, PointMassIsTopElement) {
  std::mt19937_64 rng(501);
  for (int trial = 0; trial < 100; ++trial) {
    int d = 2 + static_cast<int>(rng() % 5);
    ProbVec x = testutil::rand_normalized(rng, d);
    std::vector<Rat> p{Rat(1)};
    for (int i = 1; i < d; ++i) p.push_back(0);
    ProbVec point = canonicalize(std::move(p));
    EXPECT_TRUE(majorizes(x, point).holds);
  }
}

TEST(Majorizes, UnequalSumsNeverHold) {
  ProbVec x = vec({"0.3", "0.3"});
  ProbVec y = vec({"0.5", "0.2"});
  MajorizationReport rep = majorizes(x, y);
  EXPECT_FALSE(rep.holds);
  EXPECT_FALSE(rep.sums_equal);
  EXPECT_FALSE(rep.first_violation_index.has_value());
}

TEST(Majorizes, DimensionMismatchThrows) {
  ProbVec x = vec({"0.5", "0.5"});
  ProbVec y = vec({"0.5", "0.25", "0.25"});
  EXPECT_THROW(majorizes(x, y), Error);
}

TEST(OrderFree, ThreeFormsAgreeOnRandomPairs) {
  std::mt19937_64 rng(502);
  for (int trial = 0; trial < 2000; ++trial) {
    int d = 2 + static_cast<int>(rng() % 5);
    ProbVec x = testutil::rand_normalized(rng, d, 64);
    ProbVec y = testutil::rand_normalized(rng, d, 64);
    bool prefix = majorizes(x, y).holds;
    bool sub = majorizes_orderfree(x, y, OrderFreeForm::Sub).holds;
    bool super = majorizes_orderfree(x, y, OrderFreeForm::Super).holds;
    EXPECT_EQ(prefix, sub) << format_vector(x) << " vs " << format_vector(y);
    EXPECT_EQ(prefix, super) << format_vector(x) << " vs " << format_vector(y);
  }
}

TEST(OrderFree, ViolationIndexCountsComponentsAboveThreshold) {
  ProbVec x = vec({"0.4", "0.4", "0.1", "0.1"});
  ProbVec y = vec({"0.5", "0.25", "0.25", "0"});
  MajorizationReport rep = majorizes_orderfree(x, y, OrderFreeForm::Sub);
  EXPECT_FALSE(rep.holds);
  ASSERT_TRUE(rep.first_violation_index.has_value());
  EXPECT_EQ(*rep.first_violation_index, 2);  // at t = 1/4: lhs 3/10 > rhs 1/4, two x components above t
}

TEST(Majorization, Transitivity) {
  std::mt19937_64 rng(503);
  for (int trial = 0; trial < 300; ++trial) {
    int d = 2 + static_cast<int>(rng() % 4);
    ProbVec z = testutil::rand_normalized(rng, d, 128);
    ProbVec y = t_transform_down(rng, z, 3);
    ProbVec x = t_transform_down(rng, y, 3);
    ASSERT_TRUE(majorizes(y, z).holds);
    ASSERT_TRUE(majorizes(x, y).holds);
    EXPECT_TRUE(majorizes(x, z).holds);
  }
}

TEST(Majorization, TensorMonotone) {
  // x ≺ y implies x ⊗ w ≺ y ⊗ w for any w.
  std::mt19937_64 rng(504);
  for (int trial = 0; trial < 200; ++trial) {
    int d = 2 + static_cast<int>(rng() % 3);
    ProbVec y = testutil::rand_normalized(rng, d, 128);
    ProbVec x = t_transform_down(rng, y, 4);
    ProbVec w = testutil::rand_vec(rng, 1 + static_cast<int>(rng() % 3));
    ASSERT_TRUE(majorizes(x, y).holds);
    EXPECT_TRUE(catalyzed_majorizes(x, y, w).holds);
  }
}

TEST(Catalyzed, ClassicPairWithKnownCatalyst) {
  ProbVec x = vec({"0.4", "0.4", "0.1", "0.1"});
  ProbVec y = vec({"0.5", "0.25", "0.25", "0"});
  ProbVec z = vec({"0.6", "0.4"});
  EXPECT_FALSE(majorizes(x, y).holds);
  MajorizationReport rep = catalyzed_majorizes(x, y, z);
  EXPECT_TRUE(rep.holds);

  // Frozen prefix sums of the two tensor products, computed by hand.
  ProbVec tx = tensor(x, z), ty = tensor(y, z);
  std::vector<Rat> px, py;
  Rat ax = 0, ay = 0;
  for (int i = 0; i < tx.dim(); ++i) {
    ax += tx[i];
    ay += ty[i];
    px.push_back(ax);
    py.push_back(ay);
  }
  std::vector<Rat> expect_x{make_rat(6, 25), make_rat(12, 25), make_rat(16, 25), make_rat(4, 5),
                            make_rat(43, 50), make_rat(23, 25), make_rat(24, 25), Rat(1)};
  std::vector<Rat> expect_y{make_rat(3, 10), make_rat(1, 2), make_rat(13, 20), make_rat(4, 5),
                            make_rat(9, 10), Rat(1), Rat(1), Rat(1)};
  EXPECT_EQ(px, expect_x);
  EXPECT_EQ(py, expect_y);

  // Scale invariance: the same z scaled keeps the relation.
  ProbVec z2 = vec({"3", "2"});
  EXPECT_TRUE(catalyzed_majorizes(x, y, z2).holds);
}

TEST(Catalyzed, SelfCatalysisMatchesPlainOnTensorPowers) {
  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 100; ++trial) {
    int d = 2 + static_cast<int>(rng() % 3);
    ProbVec x = testutil::rand_normalized(rng, d, 64);
    ProbVec y = testutil::rand_normalized(rng, d, 64);
    if (!majorizes(x, y).holds) continue;
    // x ≺ y twice through tensor monotonicity: x⊗x ≺ y⊗x and x⊗y ≺ y⊗y.
    EXPECT_TRUE(majorizes(tensor(x, x), tensor(y, y)).holds);
  }
}
