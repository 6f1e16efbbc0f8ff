#pragma once

// The abscissa of convergence x0 of F0, defined as the root of
// g(x) = 3 F0''(x) - 2 F0'(x) - 9, with a ratio-extrapolation cross-check.

#include <algorithm>
#include <string>

#include "gwasym/empirics.hpp"
#include "gwasym/error.hpp"
#include "gwasym/numerics/big_real.hpp"
#include "gwasym/singularity/series.hpp"

namespace gwasym {

inline constexpr int kMinimumRootTerms = 200;

struct X0Options {
  Precision prec = kDefaultPrecision;
  int terms = 0;  // 0: use the whole table
  TailOptions tail{};
  int ratio_order = 12;
};

struct X0Estimate {
  BigReal value;
  BigReal error_bar;
  BigReal ratio_estimate;  // -ln b from ratio extrapolation
  BigReal ratio_error;
  BigReal discrepancy;     // |value - ratio_estimate|
  BigReal fit_variant;     // root with two fewer tail-fit points
  BigReal terms_variant;   // root from 3/4 of the terms
  int terms = 0;
  int fit_points = 0;
  int iterations = 0;      // bisection steps of the main solve
  BigReal bracket_lo;
  BigReal bracket_hi;
};

/// ln(15/4) and ln 27: the growth-rate bounds 1/27 <= b <= 4/15 place x0 here.
inline std::pair<BigReal, BigReal> x0_bracket(Precision prec) {
  return {log_rational(make_rational(15, 4), prec), log_rational(ExactRational(27), prec)};
}

/// g at x with the tail model refitted at x.
inline BigReal x0_residual(const GenusZeroSeries& series, const BigReal& x, int D, const TailOptions& tail) {
  const auto s = series.partial_sums(x, D);
  const TailFit fit = series.fit_tail(x, D, tail);
  const BigReal f1 = s[1] + series.tail(fit, 1);
  const BigReal f2 = s[2] + series.tail(fit, 2);
  return f2 * 3L - f1 * 2L - 9L;
}

/// Bisection on the bracket until it shrinks to a few ulps.
inline BigReal bisect_x0(const GenusZeroSeries& series, int D, const TailOptions& tail, int* iterations = nullptr) {
  if (D < kMinimumRootTerms)
    throw Error(ErrorCode::bracket_failure,
                "root solve needs at least " + std::to_string(kMinimumRootTerms) + " terms (have " +
                    std::to_string(D) + "); recompute the genus-0 cache with --dmax 200 or more");
  series.require_terms(D);
  const Precision prec = series.precision();
  auto [lo, hi] = x0_bracket(prec);
  const BigReal g_lo = x0_residual(series, lo, D, tail);
  const BigReal g_hi = x0_residual(series, hi, D, tail);
  if (!(g_lo < 0) || !(g_hi > 0))
    throw Error(ErrorCode::bracket_failure, "3F0'' - 2F0' - 9 has no sign change on [ln 15/4, ln 27] with " +
                                                std::to_string(D) + " terms; use a larger --dmax");
  const BigReal tol = ldexp(BigReal(1L, prec), 6 - static_cast<long>(prec));
  int it = 0;
  while (hi - lo > tol && it < static_cast<int>(prec) + 16) {
    BigReal mid = (lo + hi) / 2L;
    if (x0_residual(series, mid, D, tail) < 0)
      lo = mid;
    else
      hi = mid;
    ++it;
  }
  if (iterations) *iterations = it;
  return (lo + hi) / 2L;
}

/// Root solve with error bar max(|x(K) - x(K - 2)|, |x(D) - x(3D/4)|) plus
/// a few ulps, and the ratio-extrapolated -ln b alongside.
inline X0Estimate solve_x0(const GenusZeroSeries& series, const X0Options& opt = {}) {
  const int D = opt.terms > 0 ? opt.terms : series.d_max();
  X0Estimate out;
  out.terms = D;
  out.fit_points = opt.tail.fit_points;
  out.value = bisect_x0(series, D, opt.tail, &out.iterations);

  TailOptions fewer = opt.tail;
  fewer.fit_points = std::max(1, opt.tail.fit_points - 2);
  out.fit_variant = bisect_x0(series, D, fewer);
  out.terms_variant = bisect_x0(series, std::max(kMinimumRootTerms, (3 * D) / 4), opt.tail);

  const Precision prec = series.precision();
  out.error_bar = max(abs(out.value - out.fit_variant), abs(out.value - out.terms_variant)) +
                  unit_roundoff(prec) * 8L * abs(out.value);
  auto [lo, hi] = x0_bracket(prec);
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  return out;
}

inline X0Estimate solve_x0(const CountTable& table, const X0Options& opt = {}) {
  const int D = opt.terms > 0 ? opt.terms : table.d_max;
  if (D > table.d_max)
    throw Error(ErrorCode::insufficient_table,
                "root solve asks for " + std::to_string(D) + " terms, table has " + std::to_string(table.d_max));
  if (D < kMinimumRootTerms)
    throw Error(ErrorCode::bracket_failure, "root solve needs a genus-0 table with d_max >= " +
                                                std::to_string(kMinimumRootTerms) + " (have " + std::to_string(D) +
                                                "); recompute with --dmax 200 or more");
  GenusZeroSeries series(table, opt.prec);
  X0Estimate out = solve_x0(series, opt);

  Sequence seq = sequence_from(table);
  seq.values.resize(static_cast<std::size_t>(D));
  const RatioEstimate b = ratio_extrapolate(seq, opt.ratio_order, RatioStep::inverse_d, opt.prec);
  out.ratio_estimate = -log(b.b);
  out.ratio_error = b.error / b.b;
  out.discrepancy = abs(out.value - out.ratio_estimate);
  return out;
}

}  // namespace gwasym
