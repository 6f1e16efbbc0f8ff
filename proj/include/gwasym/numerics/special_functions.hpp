#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "gwasym/numerics/big_real.hpp"
#include "gwasym/numerics/exact_rational.hpp"

namespace gwasym {

/// sqrt(pi) at `prec` bits, computed once per precision.
inline const BigReal& sqrt_pi(Precision prec = kDefaultPrecision) {
  static std::mutex mutex;
  static std::map<Precision, BigReal> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(prec);
  if (it == cache.end()) it = cache.emplace(prec, sqrt(pi(prec))).first;
  return it->second;
}

/// (2m)! / (4^m m!), the rational factor in Gamma(m + 1/2) = factor * sqrt(pi).
inline ExactRational gamma_half_integer_factor(unsigned long m) {
  BigInt num, den;
  mpz_fac_ui(num.get_mpz_t(), 2 * m);
  mpz_fac_ui(den.get_mpz_t(), m);
  den <<= 2 * m;
  return make_rational(num, den);
}

/// Gamma(m + 1/2) for m >= 0.
inline BigReal gamma_half_integer(unsigned long m, Precision prec = kDefaultPrecision) {
  return (sqrt_pi(prec + 16) * gamma_half_integer_factor(m)).with_precision(prec);
}

/// Gamma(k + 1) for k = j/2 with j odd and j >= -1, i.e. Gamma at a positive
/// half-integer (j + 2)/2.
inline BigReal gamma_of_half_index(long j, Precision prec = kDefaultPrecision) {
  // (j + 2)/2 = m + 1/2 with m = (j + 1)/2.
  if (j < -1 || j % 2 == 0) throw Error(ErrorCode::domain_error, "half-index must be odd and >= -1");
  return gamma_half_integer(static_cast<unsigned long>((j + 1) / 2), prec);
}

/// Bernoulli numbers B_0..B_n (B_1 = -1/2), exact.
inline std::vector<ExactRational> bernoulli_numbers(std::size_t n) {
  // Akiyama-Tanigawa produces B_1 = +1/2; the sign is fixed afterwards.
  std::vector<ExactRational> out(n + 1);
  std::vector<ExactRational> work(n + 1);
  for (std::size_t m = 0; m <= n; ++m) {
    work[m] = make_rational(1, static_cast<long>(m + 1));
    for (std::size_t j = m; j >= 1; --j) work[j - 1] = ExactRational(static_cast<long>(j)) * (work[j - 1] - work[j]);
    out[m] = work[0];
  }
  if (n >= 1) out[1] = -out[1];
  return out;
}

/// Hurwitz zeta sum_{n >= 0} (a + n)^(-s) for real s > 1 and a > 0, by
/// Euler-Maclaurin after shifting the base far enough that the Bernoulli
/// remainder drops below the working precision.
inline BigReal hurwitz_zeta(const BigReal& s, const BigReal& a) {
  if (!(s > 1)) throw Error(ErrorCode::domain_error, "hurwitz_zeta needs s > 1");
  if (!(a > 0)) throw Error(ErrorCode::domain_error, "hurwitz_zeta needs a > 0");
  const Precision prec = std::max(s.precision(), a.precision());
  const Precision work = prec + 32;

  static std::mutex mutex;
  static std::vector<ExactRational> bernoulli;
  const std::size_t kmax = static_cast<std::size_t>(work / 4 + 20);
  {
    std::lock_guard lock(mutex);
    if (bernoulli.size() < 2 * kmax + 1) bernoulli = bernoulli_numbers(2 * kmax);
  }

  const BigReal sw = s.with_precision(work);
  const BigReal aw = a.with_precision(work);
  // The Euler-Maclaurin terms shrink roughly like ((s + 2k) / (2 pi A))^2.
  const long shift_target = static_cast<long>(work) / 4 + static_cast<long>(std::ceil(s.to_double()));
  long shift = 0;
  if (aw.to_double() < static_cast<double>(shift_target))
    shift = shift_target - static_cast<long>(std::floor(aw.to_double()));

  BigReal sum(work);
  for (long n = 0; n < shift; ++n) sum += pow(aw + n, -sw);

  const BigReal base = aw + shift;
  const BigReal base_pow = pow(base, -sw);
  sum += base * base_pow / (sw - 1L);
  sum += base_pow / 2L;

  const BigReal eps = unit_roundoff(work) * abs(sum);
  BigReal rising = sw;  // s (s+1) ... (s + 2k - 2)
  BigReal inv_base_sq = 1L / (base * base);
  BigReal power = base_pow / base;  // base^(-s-1)
  BigReal factorial(1L, work);      // (2k)!
  for (std::size_t k = 1; k <= kmax; ++k) {
    factorial = factorial * static_cast<long>((2 * k - 1) * (2 * k));
    BigReal term = (rising * power / factorial) * bernoulli[2 * k];
    sum += term;
    if (abs(term) < eps) break;
    rising = rising * (sw + static_cast<long>(2 * k - 1)) * (sw + static_cast<long>(2 * k));
    power = power * inv_base_sq;
  }
  return sum.with_precision(prec);
}

}  // namespace gwasym
