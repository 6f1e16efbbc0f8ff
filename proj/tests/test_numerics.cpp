#include <gtest/gtest.h>

#include <random>

#include "gwasym/numerics/big_real.hpp"
#include "gwasym/numerics/exact_rational.hpp"
#include "gwasym/numerics/half_power_coeff.hpp"
#include "gwasym/numerics/special_functions.hpp"

using namespace gwasym;

TEST(ExactRational, CanonicalAfterConstruction) {
  ExactRational q = make_rational(6, -4);
  EXPECT_TRUE(is_canonical(q));
  EXPECT_EQ(q.get_num(), -3);
  EXPECT_EQ(q.get_den(), 2);
  EXPECT_THROW(make_rational(1, 0), Error);
}

TEST(ExactRational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("10/4"), make_rational(5, 2));
  EXPECT_EQ(parse_rational("-7"), make_rational(-7));
  EXPECT_EQ(format_rational(make_rational(3)), "3/1");
  EXPECT_EQ(format_rational(ExactRational(0)), "0/1");
  EXPECT_THROW(parse_rational("1/x"), Error);
  EXPECT_THROW(parse_rational("3/0"), Error);
}

TEST(ExactRational, RandomFieldIdentities) {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<long> dist(-1'000'000'000L, 1'000'000'000L);
  for (int i = 0; i < 500; ++i) {
    long a = dist(rng), b = dist(rng), c = dist(rng), e = dist(rng);
    if (b == 0) b = 1;
    if (e == 0) e = 7;
    ExactRational x = make_rational(a, b) * make_rational(c, 13);
    ExactRational y = make_rational(c, e);
    ExactRational s = x + y;
    EXPECT_EQ(ExactRational(s - y), x);
    if (x != 0) EXPECT_EQ(ExactRational(x * (1 / x)), 1);
    EXPECT_TRUE(is_canonical(s));
  }
}

TEST(ExactRational, Binomials) {
  EXPECT_EQ(binomial(10, 3), 120);
  EXPECT_EQ(binomial(3, 4), 0);
  EXPECT_EQ(binomial(3, -1), 0);
  EXPECT_EQ(binomial(-1, 0), 0);
  BinomialTable t(40);
  for (long n = 0; n <= 40; ++n)
    for (long k = -1; k <= n + 1; ++k) EXPECT_EQ(t(n, k), binomial(n, k));
  FactorialTable f(20);
  EXPECT_EQ(f(8), 40320);
  EXPECT_EQ(f(0), 1);
}

TEST(RationalToReal, DyadicIsExact) {
  BigReal half = rational_to_real(make_rational(1, 2), 256);
  EXPECT_TRUE(half == BigReal(0.5, 256));
}

TEST(RationalToReal, ThirdAt64Bits) {
  BigReal third = rational_to_real(make_rational(1, 3), 64);
  BigReal ref(make_rational(1, 3), 512);
  BigReal rel = abs((third - ref) / ref);
  EXPECT_LT(rel, unit_roundoff(64));
}

TEST(RationalToReal, LongDivisionOracle) {
  // 87304/479001600 to 40 digits by long division.
  BigReal v = rational_to_real(make_rational(87304, 479001600), 128);
  BigReal ref = BigReal::parse("1.82262439206883651328095772540216984661429e-4", 256);
  EXPECT_LT(abs((v - ref) / ref), BigReal::parse("1e-30", 256));
}

TEST(RationalToReal, PrecisionTooLow) {
  try {
    rational_to_real(make_rational(1, 3), 63);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::precision_too_low);
  }
}

TEST(LogRational, HugeOperands) {
  BigInt big;
  mpz_ui_pow_ui(big.get_mpz_t(), 10, 5000);
  ExactRational q(big, big * 3);
  q.canonicalize();
  BigReal l = log_rational(q, 256);
  BigReal ref = -log(BigReal(3L, 256));
  EXPECT_LT(abs(l - ref), BigReal::parse("1e-70", 256));
  EXPECT_THROW(log_rational(ExactRational(0), 256), Error);
}

TEST(GammaHalfInteger, SmallValues) {
  const BigReal sp = sqrt(pi(256));
  EXPECT_LT(abs(gamma_half_integer(0) - sp), BigReal::parse("1e-70"));
  EXPECT_LT(abs(gamma_half_integer(1) - sp / 2L), BigReal::parse("1e-70"));
  EXPECT_LT(abs(gamma_half_integer(3) - sp * 15L / 8L), BigReal::parse("1e-70"));
  EXPECT_NEAR(gamma_half_integer(0).to_double(), 1.7724538509055159, 1e-15);
}

TEST(GammaHalfInteger, AgreesWithMpfrGamma) {
  for (unsigned long m = 0; m <= 30; ++m) {
    BigReal x(static_cast<long>(2 * m + 1), 256);
    x = x / 2L;
    BigReal ref(256);
    mpfr_gamma(ref.get(), x.get(), MPFR_RNDN);
    EXPECT_LT(abs((gamma_half_integer(m) - ref) / ref), BigReal::parse("1e-70")) << m;
  }
}

TEST(GammaHalfInteger, RecurrenceWithinFourUlp) {
  const BigReal tol = unit_roundoff(256) * 4L;
  for (unsigned long m = 0; m <= 40; ++m) {
    BigReal lhs = gamma_half_integer(m + 1);
    BigReal factor(static_cast<long>(2 * m + 1), 256);
    BigReal rhs = factor / 2L * gamma_half_integer(m);
    EXPECT_LE(abs((lhs - rhs) / lhs), tol) << m;
  }
}

TEST(GammaHalfInteger, HalfIndexHelper) {
  EXPECT_TRUE(gamma_of_half_index(-1) == gamma_half_integer(0));
  EXPECT_TRUE(gamma_of_half_index(5) == gamma_half_integer(3));
  EXPECT_THROW(gamma_of_half_index(2), Error);
}

TEST(Bernoulli, FirstValues) {
  auto b = bernoulli_numbers(12);
  EXPECT_EQ(b[0], 1);
  EXPECT_EQ(b[1], make_rational(-1, 2));
  EXPECT_EQ(b[2], make_rational(1, 6));
  EXPECT_EQ(b[3], 0);
  EXPECT_EQ(b[4], make_rational(-1, 30));
  EXPECT_EQ(b[12], make_rational(-691, 2730));
}

TEST(HurwitzZeta, MatchesRiemannZetaAtOne) {
  for (long twice_s : {3L, 5L, 7L, 9L, 15L}) {
    BigReal s = BigReal(twice_s, 256) / 2L;
    BigReal ref(256);
    mpfr_zeta(ref.get(), s.get(), MPFR_RNDN);
    BigReal h = hurwitz_zeta(s, BigReal(1L, 256));
    EXPECT_LT(abs((h - ref) / ref), BigReal::parse("1e-70")) << twice_s;
  }
}

TEST(HurwitzZeta, ShiftIdentity) {
  // zeta(s, a) = a^-s + zeta(s, a + 1)
  BigReal s = BigReal(7L, 256) / 2L;
  for (long a : {1L, 5L, 201L, 401L}) {
    BigReal av(a, 256);
    BigReal lhs = hurwitz_zeta(s, av);
    BigReal rhs = pow(av, -s) + hurwitz_zeta(s, av + 1L);
    EXPECT_LT(abs((lhs - rhs) / lhs), BigReal::parse("1e-70")) << a;
  }
}

TEST(HurwitzZeta, DomainErrors) {
  EXPECT_THROW(hurwitz_zeta(BigReal(1L, 256), BigReal(1L, 256)), Error);
  EXPECT_THROW(hurwitz_zeta(BigReal(2L, 256), BigReal(0L, 256)), Error);
}

TEST(HalfPowerCoeff, ParityFollowsIndex) {
  for (long j = -3; j <= 12; ++j) {
    SignedHalfPowerCoeff c(j, BigReal(1L, 64));
    EXPECT_EQ(c.parity(), j % 2 == 0 ? Parity::real : Parity::imaginary);
  }
}

TEST(HalfPowerCoeff, ParityArithmetic) {
  BigReal two(2L, 64), three(3L, 64);
  EXPECT_TRUE(parity_product(two, Parity::imaginary, three, Parity::imaginary) == BigReal(-6L, 64));
  EXPECT_TRUE(parity_product(two, Parity::real, three, Parity::imaginary) == BigReal(6L, 64));
  EXPECT_EQ(parity_sum(Parity::imaginary, Parity::imaginary), Parity::real);
  // (6) / (3i) = -2i
  EXPECT_TRUE(parity_quotient(BigReal(6L, 64), Parity::real, three, Parity::imaginary) == BigReal(-2L, 64));
  EXPECT_TRUE(parity_quotient(BigReal(6L, 64), Parity::imaginary, three, Parity::imaginary) == two);
}

TEST(BigReal, PrecisionPropagation) {
  BigReal a(1L, 64), b(1L, 512);
  EXPECT_EQ((a + b).precision(), 512);
  EXPECT_EQ((a * 3L).precision(), 64);
  EXPECT_EQ(BigReal().precision(), kDefaultPrecision);
}
