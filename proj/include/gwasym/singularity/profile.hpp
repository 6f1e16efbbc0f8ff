#pragma once

// Singularity profile of F0 and F1 at x0, coefficient asymptotics through the
// transfer formula, and the analytic-continuation margin on Re z = x0.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gwasym/error.hpp"
#include "gwasym/numerics/big_real.hpp"
#include "gwasym/numerics/special_functions.hpp"
#include "gwasym/singularity/frobenius.hpp"
#include "gwasym/singularity/series.hpp"
#include "gwasym/singularity/x0.hpp"

namespace gwasym {

struct ProfileOptions {
  X0Options root{};
  int M = 40;        // a_0 .. a_M
  std::optional<int> M_prime;  // b_{-1} .. b_{M'}; default M - 7
};

struct SingularityProfile {
  X0Estimate x0;
  BigReal a0;
  BigReal a2;
  BigReal discriminant;
  std::vector<SignedHalfPowerCoeff> a;  // indices 0..M
  Genus1Expansion genus1;
  int M = 0;
  int M_prime = 0;

  const SignedHalfPowerCoeff& a_at(long j) const {
    if (j < 0 || j > M) throw Error(ErrorCode::insufficient_coefficients, "a_" + std::to_string(j) + " not computed");
    return a[static_cast<std::size_t>(j)];
  }
};

/// a_0 = F0(x0) and a_2 = F0'(x0) from tail-corrected sums, then the
/// coefficient recursions.
inline SingularityProfile build_profile(const GenusZeroSeries& series, const X0Estimate& x0,
                                        const ProfileOptions& opt = {}) {
  SingularityProfile p;
  p.x0 = x0;
  const int D = x0.terms;
  const auto s = series.partial_sums(x0.value, D);
  const TailFit fit = series.fit_tail(x0.value, D, opt.root.tail);
  p.a0 = s[0] + series.tail(fit, 0);
  p.a2 = s[1] + series.tail(fit, 1);
  p.discriminant = frobenius_discriminant(p.a0, p.a2);
  p.M = opt.M;
  p.a = frobenius_coeffs(p.a0, p.a2, p.M);
  p.M_prime = opt.M_prime.value_or(p.M - 7);
  if (p.M_prime + 7 > p.M)
    throw Error(ErrorCode::insufficient_coefficients,
                "b up to index " + std::to_string(p.M_prime) + " needs M >= " + std::to_string(p.M_prime + 7));
  p.genus1 = genus1_coeffs(p.a, p.M_prime);
  return p;
}

inline SingularityProfile build_profile(const CountTable& table, const ProfileOptions& opt = {}) {
  const X0Estimate x0 = solve_x0(table, opt.root);
  GenusZeroSeries series(table, opt.root.prec);
  return build_profile(series, x0, opt);
}

namespace detail {
// Sum over odd j with -1 < j/2 < N - 1 of -(1/pi) r_j Gamma(j/2 + 1) d^{-j/2-1},
// where a_j = i r_j. The sign follows from the branch z^{1/2} = -i sqrt(w).
template <class Lookup>
BigReal transfer_sum(Lookup&& coeff, long first_odd, long last_available, long d, int N, Precision prec) {
  BigReal total(prec);
  const BigReal dr(d, prec);
  for (long j = first_odd; 2 * (N - 1) > j; j += 2) {
    if (j > last_available)
      throw Error(ErrorCode::insufficient_coefficients,
                  "order " + std::to_string(N) + " needs the coefficient of index " + std::to_string(j));
    const BigReal& r = coeff(j);
    total += r * gamma_of_half_index(j, prec) * pow(dr, BigReal(-(j + 2), prec) / 2L);
  }
  return -total / pi(prec);
}
}  // namespace detail

/// Truncated transfer-formula prediction of n_{0,d} (genus 0) or n_{1,d}
/// (genus 1) at order N.
inline BigReal asymptotic_predict(int genus, const SingularityProfile& p, long d, int N) {
  if (d < 1) throw Error(ErrorCode::domain_error, "d must be >= 1");
  const Precision prec = p.x0.value.precision();
  const BigReal scale = exp(-p.x0.value * d);
  if (genus == 0) {
    // F0 carries a factor 1/3 and has no pole; odd indices start at 5.
    auto lookup = [&p](long j) -> const BigReal& { return p.a_at(j).signed_part(); };
    return scale * detail::transfer_sum(lookup, 5, p.M, d, N, prec) * 3L;
  }
  if (genus == 1) {
    // Coefficients of F1' are d n_{1,d}; the pole -1/(48 z) contributes +1/48.
    auto lookup = [&p](long j) -> const BigReal& { return p.genus1.at(j).signed_part(); };
    BigReal s = detail::transfer_sum(lookup, -1, p.M_prime, d, N, prec);
    s += BigReal(ExactRational(-p.genus1.residue), prec);
    return scale * s / d;
  }
  throw Error(ErrorCode::domain_error, "genus must be 0 or 1");
}

struct ContinuationSample {
  BigReal y;
  BigReal margin;                 // 9 - partial sum of Re(3F0'' - 2F0') at x0 + iy
  BigReal tail_corrected_margin;  // y = 0 only
  bool tail_corrected = false;
};

/// Re(3F0'' - 2F0')(x0 + iy) = (1/3) sum (3d^2 - 2d) n_d e^{d x0} cos(dy).
inline std::vector<ContinuationSample> continuation_check(const GenusZeroSeries& series, const X0Estimate& x0,
                                                          const std::vector<BigReal>& y_samples,
                                                          const TailOptions& tail = {}) {
  const int D = x0.terms;
  series.require_terms(D);
  const Precision prec = series.precision();
  const auto ex = series.exponentials(x0.value, D);
  std::vector<ContinuationSample> out;
  for (const auto& y : y_samples) {
    BigReal sum(series.work_precision());
    for (int d = 1; d <= D; ++d) {
      const BigReal w = series.coefficient(d) * ex[static_cast<std::size_t>(d - 1)] * static_cast<long>(3 * d * d - 2 * d);
      sum += w * cos(y.with_precision(series.work_precision()) * d);
    }
    ContinuationSample s;
    s.y = y;
    s.margin = (BigReal(9L, prec) - sum / 3L).with_precision(prec);
    if (y.is_zero()) {
      const TailFit fit = series.fit_tail(x0.value, D, tail);
      s.tail_corrected_margin = s.margin - series.tail(fit, 2) * 3L + series.tail(fit, 1) * 2L;
      s.tail_corrected = true;
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace gwasym
