#include <gtest/gtest.h>

#include <cmath>

#include "gwasym/empirics.hpp"
#include "shared_tables.hpp"

using namespace gwasym;

namespace {

ExactRational to_rational(const BigReal& x) {
  ExactRational q;
  mpfr_get_q(q.get_mpq_t(), x.get());
  return q;
}

// b^d d^s, with d^s rounded to 512 bits and stored exactly.
Sequence power_law(const ExactRational& b, double s, int d_max) {
  Sequence seq;
  seq.id = "synthetic";
  const BigReal exponent(s, 512);
  for (int d = 1; d <= d_max; ++d) {
    const BigReal ds = pow(BigReal(static_cast<long>(d), 512), exponent);
    seq.values.push_back(pow(b, static_cast<unsigned long>(d)) * to_rational(ds));
  }
  return seq;
}

}  // namespace

TEST(Roots, CatalanModel) {
  const Sequence s = sequence_from(ModelSpec{1, 0, 1}, 5);
  const auto r = root_sequence(s);
  const double expected[] = {1.0, 1.0, std::cbrt(2.0), std::pow(5.0, 0.25), std::pow(14.0, 0.2)};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(r[static_cast<std::size_t>(i)].to_double(), expected[i], 1e-15) << i;
}

TEST(Roots, ExactComparisonAgreesWithRoots) {
  const Sequence s = sequence_from(testing_tables::p2(0, 400));
  const auto r = root_sequence(s);
  for (int d = 1; d < 400; ++d) {
    const bool exact = root_nondecreasing(s.at(d), s.at(d + 1), static_cast<unsigned long>(d));
    const auto i = static_cast<std::size_t>(d - 1);
    if (r[i] != r[i + 1]) EXPECT_EQ(exact, r[i] < r[i + 1]) << d;
  }
}

TEST(Roots, NonpositiveEntry) {
  Sequence s{"bad", 1, {1, 0, 2}};
  try {
    root_sequence(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::nonpositive_entry);
  }
}

TEST(Roots, Genus1SkipsLeadingZeros) {
  const Sequence s = sequence_from(testing_tables::p2(1, 400));
  EXPECT_EQ(s.first_degree, 3);
  EXPECT_EQ(s.last_degree(), 400);
  EXPECT_NO_THROW(root_sequence(s));
}

TEST(Monotone, CatalanFromStart) {
  const MonotoneResult m = monotone_from(sequence_from(ModelSpec{1, 0, 1}, 60));
  ASSERT_TRUE(m.d_star.has_value());
  EXPECT_LE(*m.d_star, 2);
  EXPECT_TRUE(root_nondecreasing(1, 1, 1));
}

TEST(Monotone, CubicModelSettles) {
  const MonotoneResult m = monotone_from(sequence_from(ModelSpec{1, 3, 1}, 200));
  ASSERT_TRUE(m.d_star.has_value());
  EXPECT_LT(*m.d_star, 200);
}

TEST(Monotone, WholeModelGrid) {
  for (const ExactRational& a : {make_rational(1, 2), ExactRational(1), ExactRational(3)})
    for (unsigned k = 0; k <= 3; ++k)
      for (const ExactRational& n1 : {make_rational(1, 2), ExactRational(1), ExactRational(2)}) {
        const Sequence s = sequence_from(ModelSpec{a, k, n1}, 100);
        const MonotoneResult m = monotone_from(s);
        EXPECT_TRUE(m.d_star.has_value()) << s.id;
      }
}

TEST(Monotone, DecreasingTailHasNoStart) {
  const Sequence s{"down", 1, {8, 4, 2, 1}};
  // 8^2 > 4, so roots 8, 2, 1.26, 1 decrease throughout
  const MonotoneResult m = monotone_from(s);
  EXPECT_FALSE(m.d_star.has_value());
  EXPECT_EQ(m.decreasing_at.size(), 3u);
}

TEST(Monotone, TooShort) {
  try {
    monotone_from(Sequence{"short", 1, {1, 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::insufficient_length);
  }
}

TEST(Monotone, PlaneGenus0Observed) {
  const MonotoneResult m = monotone_from(sequence_from(testing_tables::p2(0, 400)));
  ASSERT_TRUE(m.d_star.has_value());
  EXPECT_LT(*m.d_star, 20);
}

TEST(Ratio, GeometricIsExact) {
  Sequence s{"geometric", 1, {}};
  for (unsigned d = 1; d <= 20; ++d) s.values.push_back(pow(ExactRational(3), d));
  const RatioEstimate r = ratio_extrapolate(s, 0);
  EXPECT_EQ(r.b, BigReal(3L, 256));
  EXPECT_TRUE(r.error.is_zero());
  EXPECT_EQ(r.order, 0);
}

TEST(Ratio, SyntheticPowerLaw) {
  const Sequence s = power_law(make_rational(1, 5), -3.5, 300);
  const RatioEstimate r = ratio_extrapolate(s, 3);
  EXPECT_LT(abs(r.b - BigReal(make_rational(1, 5), 256)).to_double(), 1e-8);
  EXPECT_LT(r.error.to_double(), 1e-6);
}

TEST(Ratio, TooShort) {
  try {
    ratio_extrapolate(Sequence{"s", 1, {1, 2, 3}}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::insufficient_length);
  }
}

TEST(Ratio, PlaneGeneraAgree) {
  const RatioEstimate b0 = ratio_extrapolate(sequence_from(testing_tables::p2(0)), 12);
  const RatioEstimate b1 =
      ratio_extrapolate(sequence_from(testing_tables::p2(1)), 12, RatioStep::inverse_sqrt_d);
  EXPECT_NEAR(b0.b.to_double(), std::exp(-1.9804338668828110), 1e-15);
  EXPECT_LT(abs(b0.b - b1.b), b0.error + b1.error + BigReal(1e-12, 256));
}

TEST(Exponent, SyntheticSlopes) {
  const ExactRational b = make_rational(1, 5);
  for (double s : {-3.5, -1.0, 0.0}) {
    const ExponentFit f = fit_exponent(power_law(b, s, 120), BigReal(b, 256), 50, 120);
    EXPECT_NEAR(f.slope.to_double(), s, 1e-6) << s;
    EXPECT_LT(f.rms_residual.to_double(), 1e-6);
  }
}

TEST(Exponent, DegenerateWindow) {
  const Sequence s = power_law(make_rational(1, 5), -1.0, 20);
  EXPECT_THROW(fit_exponent(s, BigReal(0.2, 128), 10, 10), Error);
  EXPECT_THROW(fit_exponent(s, BigReal(0.2, 128), 10, 21), Error);
  EXPECT_THROW(fit_exponent(s, BigReal(0L, 128), 5, 10), Error);
}

TEST(Exponent, PlaneCounts) {
  const Sequence g0 = sequence_from(testing_tables::p2(0));
  const Sequence g1 = sequence_from(testing_tables::p2(1));
  const RatioEstimate b = ratio_extrapolate(g0, 12);
  EXPECT_NEAR(fit_exponent(g0, b.b, 200, 400).slope.to_double(), -3.5, 0.05);
  EXPECT_NEAR(fit_exponent(g1, b.b, 200, 400).slope.to_double(), -1.0, 0.1);
}

TEST(Rays, LinesOnly) {
  const CountTable& t = testing_tables::p3(40);
  const RayReport r = p3_ray(t, 1, 2);
  EXPECT_EQ(r.roots.size(), 40u);
  EXPECT_TRUE(r.zero_degrees.empty());
  for (std::size_t i = 0; i < r.roots.size(); ++i) {
    EXPECT_GT(r.roots[i], 0);
    EXPECT_LE(r.roots[i], 256L);
  }
  EXPECT_EQ(r.differences.size(), 39u);
}

TEST(Rays, PointsOnly) {
  const RayReport r = p3_ray(testing_tables::p3(40), 1, 0);
  // no conic passes through four general points of space
  EXPECT_FALSE(r.roots.empty());
  for (const auto& x : r.roots) EXPECT_GT(x, 0);
  EXPECT_EQ(r.degrees.size() + r.zero_degrees.size(), 40u);
  EXPECT_EQ(r.verdict, "slow");
}

TEST(Rays, OutOfRange) {
  try {
    p3_ray(p3_genus0(3), 1, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ray_out_of_range);
  }
}

TEST(Rays, LongerRay) {
  const RayReport r = p3_ray(testing_tables::p3(40), 2, 2);
  EXPECT_EQ(r.roots.size() + r.zero_degrees.size(), 20u);
}
