#include <gtest/gtest.h>

#include "gwasym/bounds.hpp"
#include "gwasym/singularity.hpp"
#include "shared_tables.hpp"

using namespace gwasym;

TEST(Sandwich, FirstDegreeByHand) {
  // 8/135 <= 1/2 <= 3/4
  CountTable t = p2_genus0(1);
  const BoundReport r = check_p2_sandwich(t);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.checked, 1u);
  EXPECT_LT(make_rational(8, 135), t.at(1));
  EXPECT_LT(t.at(1), make_rational(3, 4));
}

TEST(Sandwich, HoldsThroughDegree400) {
  const BoundReport r = check_p2_sandwich(testing_tables::p2(0));
  EXPECT_EQ(r.bound_id, "p2-sandwich");
  EXPECT_EQ(r.d_hi, 400);
  EXPECT_EQ(r.checked, 400u);
  EXPECT_TRUE(r.pass());
}

TEST(Sandwich, ForcedEntryIsCaught) {
  CountTable t = p2_genus0(10);
  t.at(2) = 1;
  const BoundReport r = check_p2_sandwich(t);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].index, 2);
  EXPECT_FALSE(r.pass());
}

TEST(Sandwich, RejectsOtherTables) {
  EXPECT_THROW(check_p2_sandwich(p3_genus0(2)), Error);
  EXPECT_THROW(check_p2_sandwich(p2_genus1(3, p2_genus0(3))), Error);
}

TEST(CentralBinomial, SmallDegrees) {
  // d=2 squared: 2 * 256 * 16 / 2025 <= 72 <= 2 * 144
  const BoundReport r = check_stirling(2);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.checked, 2u);
  EXPECT_LE(make_rational(2 * 256 * 16, 2025), ExactRational(72));
  EXPECT_LE(ExactRational(72), ExactRational(288));
}

TEST(CentralBinomial, HoldsToTenThousand) {
  const BoundReport r = check_stirling(10000);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.checked, 10000u);
}

TEST(ModelComparison, BothSandwichesHold) {
  const auto reports = check_p2_comparison(testing_tables::p2(0));
  ASSERT_EQ(reports.size(), 2u);
  for (const auto& r : reports) {
    EXPECT_TRUE(r.pass()) << r.bound_id;
    EXPECT_EQ(r.checked, 400u) << r.bound_id;
  }
}

TEST(SpaceBounds, CoarseBoundOnGrid) {
  const BoundReport r = check_p3_coarse_bound(testing_tables::p3());
  EXPECT_TRUE(r.pass());
  // sum over d of (2d + 1)
  EXPECT_EQ(r.checked, static_cast<std::size_t>(40 * 42));
}

TEST(SpaceBounds, CoarseBoundFirstEntry) {
  CountTable t = p3_genus0(1);
  EXPECT_EQ(t.at(1, 0), make_rational(1, 2));
  EXPECT_TRUE(check_p3_coarse_bound(t).pass());
}

TEST(SpaceBounds, ForcedEntryIsCaught) {
  CountTable t = p3_genus0(4);
  t.at(3, 2) = pow(ExactRational(2), 27);
  const BoundReport r = check_p3_coarse_bound(t);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].index, 3);
  EXPECT_EQ(r.violations[0].sub_index, 2);
}

TEST(Majorant, HandValues) {
  const auto m = p3_majorant_grid(3);
  EXPECT_EQ(m[0][0], make_rational(1, 2));
  EXPECT_EQ(m[1][0], ExactRational(2));
  EXPECT_EQ(m[0][1], make_rational(1, 4));
  EXPECT_EQ(m[0].size(), 3u);
  EXPECT_EQ(m[2].size(), 7u);
}

TEST(Majorant, DominatesGrid) {
  const MajorantReport r = p3_majorants(testing_tables::p3());
  EXPECT_TRUE(r.comparison.pass());
  EXPECT_EQ(r.comparison.checked, static_cast<std::size_t>(40 * 42));
  EXPECT_EQ(r.majorants.size(), 40u);
}

TEST(Majorant, ForcedEntryIsCaught) {
  CountTable t = p3_genus0(5);
  t.at(5, 0) = pow(ExactRational(2), 45);
  EXPECT_FALSE(p3_majorants(t).comparison.pass());
}

class Ordering : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    series_ = new GenusZeroSeries(testing_tables::p2(0));
    x0_ = new X0Estimate(solve_x0(*series_));
  }
  static void TearDownTestSuite() {
    delete series_;
    delete x0_;
  }
  static BigReal shifted(double dx) { return x0_->value + BigReal(dx, x0_->value.precision()); }

  static inline GenusZeroSeries* series_ = nullptr;
  static inline X0Estimate* x0_ = nullptr;
};

TEST_F(Ordering, ChainBelowRoot) {
  const std::vector<BigReal> xs = {shifted(-1.0), shifted(-0.1), BigReal(-10L, 256)};
  const BoundReport r = check_ordering_F0(*series_, xs, x0_->value, x0_->error_bar, 400);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.checked, 3u);
}

TEST_F(Ordering, FarLeftValuesAreTiny) {
  const auto s = series_->partial_sums(BigReal(-10L, 256), 400);
  EXPECT_GT(s[0], 0);
  EXPECT_LT(s[3].to_double(), 1e-3);
}

TEST_F(Ordering, SampleAboveRootIsRejected) {
  const std::vector<BigReal> xs = {shifted(0.01)};
  try {
    check_ordering_F0(*series_, xs, x0_->value, x0_->error_bar, 400);
    FAIL() << "expected sample-above-x0";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::sample_above_x0);
  }
}
