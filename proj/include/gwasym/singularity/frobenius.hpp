#pragma once

// Puiseux expansion F0(x0 + z) = sum_j a_j z^{j/2} at the singular point,
// and the genus-1 expansion F1'(x0 + z) = -1/(48 z) + sum_j b_j z^{j/2}.
//
// a_j is real for even j and purely imaginary for odd j; coefficients are
// stored as the real factor of i^(j mod 2). On the negative real axis,
// z = -w with w > 0, the branch with a_5 in i R^- is z^{1/2} = -i sqrt(w),
// which gives a_j z^{j/2} = (-1)^floor(j/2) r_j w^{j/2}.

#include <cstddef>
#include <string>
#include <vector>

#include "gwasym/error.hpp"
#include "gwasym/numerics/big_real.hpp"
#include "gwasym/numerics/exact_rational.hpp"
#include "gwasym/numerics/half_power_coeff.hpp"

namespace gwasym {

inline BigReal frobenius_discriminant(const BigReal& a0, const BigReal& a2) {
  return a2 * a2 * 4L + a2 * 45L + a0 * 18L + 567L;
}

/// a_0 .. a_M with a_1 = a_3 = 0, a_4 = 3/2 + a_2/3,
/// a_5 = -i sqrt((32/6075) (4 a_2^2 + 45 a_2 + 18 a_0 + 567)), and a_{d+5}
/// for d >= 1 from the order-d coefficient identity of the ODE.
inline std::vector<SignedHalfPowerCoeff> frobenius_coeffs(const BigReal& a0, const BigReal& a2, int M) {
  if (M < 6) throw Error(ErrorCode::domain_error, "need M >= 6");
  const Precision prec = std::max(a0.precision(), a2.precision());
  const BigReal disc = frobenius_discriminant(a0, a2);
  if (!(disc > 0))
    throw Error(ErrorCode::discriminant_nonpositive,
                "4 a2^2 + 45 a2 + 18 a0 + 567 = " + disc.to_string(20) + " is not positive");

  std::vector<BigReal> r(static_cast<std::size_t>(M + 1), BigReal(prec));
  r[0] = a0;
  r[2] = a2;
  r[4] = BigReal(3L, prec) / 2L + a2 / 3L;
  r[5] = -sqrt(disc * make_rational(32, 6075));
  if (r[5].is_zero()) throw Error(ErrorCode::leading_coefficient_zero, "a5 vanishes");

  auto par = [](long j) { return SignedHalfPowerCoeff::parity_of(j); };
  for (long d = 1; d + 5 <= M; ++d) {
    // Right-hand side has the parity of d.
    BigReal rhs = r[static_cast<std::size_t>(d)] * -2L;
    rhs += r[static_cast<std::size_t>(d + 2)] * make_rational(11 * (d + 2), 2);
    const BigReal c4 = (r[4] * (d - 2) - 9L) * make_rational((d + 2) * (d + 4), 2);
    rhs += c4 * r[static_cast<std::size_t>(d + 4)];
    for (long d1 = 1; d1 < d; ++d1) {
      const long d2 = d - d1;
      const ExactRational w5 = make_rational(3 * (d + 2) * (d1 + 3) * (d1 + 5) * (d2 + 3) * (d2 + 5), 64);
      rhs -= parity_product(r[static_cast<std::size_t>(d1 + 5)], par(d1 + 5), r[static_cast<std::size_t>(d2 + 5)],
                            par(d2 + 5)) *
             w5;
      const ExactRational w4 = make_rational((d1 * d1 + d2 * d2 - d1 * d2 - 4) * (d1 + 4) * (d2 + 4), 16);
      rhs += parity_product(r[static_cast<std::size_t>(d1 + 4)], par(d1 + 4), r[static_cast<std::size_t>(d2 + 4)],
                            par(d2 + 4)) *
             w4;
    }
    const BigReal lead = r[5] * make_rational(45 * (d + 2) * (d + 3) * (d + 5), 32);
    r[static_cast<std::size_t>(d + 5)] = parity_quotient(rhs, par(d), lead, Parity::imaginary);
  }

  std::vector<SignedHalfPowerCoeff> out;
  out.reserve(r.size());
  for (long j = 0; j <= M; ++j) out.emplace_back(j, r[static_cast<std::size_t>(j)]);
  return out;
}

/// Value of the k-th z-derivative of sum_{j<=M} a_j z^{j/2} at z = -w, w > 0.
inline BigReal puiseux_derivative(const std::vector<SignedHalfPowerCoeff>& a, const BigReal& w, int k, int M) {
  BigReal total(w.precision());
  const BigReal sw = sqrt(w);
  for (const auto& c : a) {
    const long j = c.index();
    if (j < 0 || j > M || c.signed_part().is_zero()) continue;
    // d^k/dz^k = (-1)^k d^k/dw^k; falling factorial of j/2.
    ExactRational ff = 1;
    for (int i = 0; i < k; ++i) ff *= make_rational(j - 2 * i, 2);
    if (ff == 0) continue;
    long sign = ((j / 2) % 2 == 0 ? 1 : -1) * (k % 2 == 0 ? 1 : -1);
    BigReal term = pow(sw, j - 2L * k) * ff * c.signed_part();
    total += sign > 0 ? term : -term;
  }
  return total;
}

/// |F''' - (2F - 11F' + 18F'' + F''^2) / (9 + 2F' - 3F'')| for the expansion
/// truncated after a_M, at each sample z < 0. The solved form vanishes to
/// order (M - 5)/2.
inline constexpr double kOdeTrustRadius = 1e-2;

inline std::vector<BigReal> ode_residual(const std::vector<SignedHalfPowerCoeff>& a, int M,
                                         const std::vector<BigReal>& z_samples) {
  if (M < 6 || static_cast<int>(a.size()) <= M)
    throw Error(ErrorCode::insufficient_coefficients, "ode_residual needs a_0 .. a_" + std::to_string(M));
  std::vector<BigReal> out;
  for (const auto& z : z_samples) {
    if (!(z < 0) || abs(z).to_double() > kOdeTrustRadius)
      throw Error(ErrorCode::domain_error, "samples must lie in [-0.01, 0)");
    const BigReal w = -z;
    const BigReal f0 = puiseux_derivative(a, w, 0, M);
    const BigReal f1 = puiseux_derivative(a, w, 1, M);
    const BigReal f2 = puiseux_derivative(a, w, 2, M);
    const BigReal f3 = puiseux_derivative(a, w, 3, M);
    const BigReal rhs = (f0 * 2L - f1 * 11L + f2 * 18L + f2 * f2) / (f1 * 2L - f2 * 3L + 9L);
    out.push_back(abs(f3 - rhs));
  }
  return out;
}

/// Least-squares slope of ln(residual) against ln|z|.
inline BigReal log_log_slope(const std::vector<BigReal>& z, const std::vector<BigReal>& residual) {
  if (z.size() != residual.size() || z.size() < 2) throw Error(ErrorCode::degenerate_window, "need two samples");
  const Precision prec = z.front().precision();
  const long n = static_cast<long>(z.size());
  BigReal sx(prec), sy(prec), sxx(prec), sxy(prec);
  for (std::size_t i = 0; i < z.size(); ++i) {
    const BigReal x = log(abs(z[i])), y = log(residual[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (sxy * n - sx * sy) / (sxx * n - sx * sx);
}

struct Genus1Expansion {
  ExactRational residue;                   // coefficient of 1/z; -1/48
  std::vector<SignedHalfPowerCoeff> b;     // b_{-1} .. b_{M'}
  const SignedHalfPowerCoeff& at(long j) const {
    const long first = b.empty() ? 0 : b.front().index();
    if (b.empty() || j < first || j > b.back().index())
      throw Error(ErrorCode::insufficient_coefficients, "b_" + std::to_string(j) + " not computed");
    return b[static_cast<std::size_t>(j - first)];
  }
};

/// Divides (1/8)(F0''' - 3F0'' + 2F0') by 9 + 2F0' - 3F0''. With e >= 0,
///   9 + 2F0' - 3F0''     = z^{1/2}  sum_e A_e z^{e/2},
///   A_e = (e+3)/4 (4 a_{e+3} - 3(e+5) a_{e+5}),
///   F0''' - 3F0'' + 2F0' = z^{-1/2} sum_e N_e z^{e/2},
///   N_e = (e+1)(e+3)(e+5)/8 a_{e+5} - 3 (j/2)(j/2-1) a_j|_{j=e+3} + 2 (j/2) a_j|_{j=e+1},
/// so F1' = (1/8) z^{-1} sum_e Q_e z^{e/2} with Q = N / A. The residue Q_0/8 is
/// the exact ratio (15/8) / (-45/4) / 8 of the a_5 multiples.
inline Genus1Expansion genus1_coeffs(const std::vector<SignedHalfPowerCoeff>& a, int M_prime) {
  if (M_prime < -1) throw Error(ErrorCode::domain_error, "M' must be >= -1");
  const long need = M_prime + 7;
  if (static_cast<long>(a.size()) <= need)
    throw Error(ErrorCode::insufficient_coefficients,
                "b up to index " + std::to_string(M_prime) + " needs a_0 .. a_" + std::to_string(need));
  if (a[5].signed_part().is_zero()) throw Error(ErrorCode::leading_coefficient_zero, "a5 = 0");

  const Precision prec = a[5].signed_part().precision();
  auto ar = [&a, prec](long j) -> BigReal {
    if (j < 0 || j == 1 || j == 3) return BigReal(prec);
    return a[static_cast<std::size_t>(j)].signed_part();
  };
  // A_e and N_e share the parity of e + 1.
  auto par = [](long e) { return SignedHalfPowerCoeff::parity_of(e + 1); };
  const long E = M_prime + 2;  // Q_0 .. Q_E
  std::vector<BigReal> A, N;
  for (long e = 0; e <= E; ++e) {
    A.push_back((ar(e + 3) * 4L - ar(e + 5) * (3 * (e + 5))) * make_rational(e + 3, 4));
    BigReal n = ar(e + 5) * make_rational((e + 1) * (e + 3) * (e + 5), 8);
    const long j3 = e + 3, j1 = e + 1;
    n -= ar(j3) * make_rational(3 * j3 * (j3 - 2), 4);
    n += ar(j1) * j1;
    N.push_back(n);
  }

  Genus1Expansion out;
  // Leading terms: N_0 = (15/8) a_5 and A_0 = -(45/4) a_5 once a_1 = a_3 = 0.
  const ExactRational n0 = make_rational(15, 8), a0c = make_rational(-45, 4);
  out.residue = n0 / a0c / 8;

  std::vector<BigReal> Q(static_cast<std::size_t>(E + 1), BigReal(prec));
  Q[0] = BigReal(ExactRational(n0 / a0c), prec);
  for (long e = 1; e <= E; ++e) {
    // Q_e has the parity of e.
    BigReal s = N[static_cast<std::size_t>(e)];
    for (long k = 0; k < e; ++k)
      s -= parity_product(Q[static_cast<std::size_t>(k)], SignedHalfPowerCoeff::parity_of(k),
                          A[static_cast<std::size_t>(e - k)], par(e - k));
    Q[static_cast<std::size_t>(e)] = parity_quotient(s, par(e), A[0], par(0));
  }
  for (long e = 1; e <= E; ++e) out.b.emplace_back(e - 2, Q[static_cast<std::size_t>(e)] / 8L);
  return out;
}

}  // namespace gwasym
