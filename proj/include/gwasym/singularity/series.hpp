#pragma once

// Evaluation of F0(x) = (1/3) sum n_{0,d} e^{dx} and its derivatives on the
// real axis from an exact genus-0 table, with an optional tail estimate.

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "gwasym/error.hpp"
#include "gwasym/numerics/big_real.hpp"
#include "gwasym/numerics/linear_solve.hpp"
#include "gwasym/numerics/special_functions.hpp"
#include "gwasym/recursions.hpp"

namespace gwasym {

struct SeriesEvaluation {
  BigReal x;
  int order = 0;
  BigReal partial_sum;
  int terms_used = 0;
  /// Fitted-model estimate of the omitted terms; not a bound.
  BigReal tail_estimate;
  bool tail_available = false;
  /// The partial sum is a rigorous lower bound (all terms positive).
  bool rigorous_lower = true;

  BigReal value() const { return tail_available ? partial_sum + tail_estimate : partial_sum; }
};

/// Tail model n_d e^{dx} d^{7/2} ~ sum_{j<K} c_j d^{-j}, fitted on K degrees
/// D, D - s, ..., D - (K - 1) s.
struct TailOptions {
  int fit_points = 8;
  int spacing = 4;
};

struct TailFit {
  int terms = 0;
  std::vector<BigReal> coefficients;
};

class GenusZeroSeries {
 public:
  GenusZeroSeries(const CountTable& table, Precision prec = kDefaultPrecision) : prec_(prec), work_(prec + 32) {
    if (table.target != Target::p2 || table.genus != 0)
      throw Error(ErrorCode::domain_error, "F0 needs a P2 genus-0 table");
    coeffs_.reserve(static_cast<std::size_t>(table.d_max));
    for (int d = 1; d <= table.d_max; ++d) coeffs_.emplace_back(table.at(d), work_);
  }

  int d_max() const { return static_cast<int>(coeffs_.size()); }
  Precision precision() const { return prec_; }
  Precision work_precision() const { return work_; }
  const BigReal& coefficient(int d) const { return coeffs_[static_cast<std::size_t>(d - 1)]; }

  void require_terms(int D) const {
    if (D < 1) throw Error(ErrorCode::domain_error, "need at least one term");
    if (D > d_max())
      throw Error(ErrorCode::insufficient_table,
                  "series needs " + std::to_string(D) + " terms, table has " + std::to_string(d_max()));
  }

  /// e^{dx} for d = 1..D.
  std::vector<BigReal> exponentials(const BigReal& x, int D) const {
    std::vector<BigReal> out;
    out.reserve(static_cast<std::size_t>(D));
    const BigReal e = exp(x.with_precision(work_));
    BigReal cur = e;
    for (int d = 1; d <= D; ++d) {
      out.push_back(cur);
      cur = cur * e;
    }
    return out;
  }

  /// (1/3) sum_{d<=D} d^r n_d e^{dx} for r = 0..3.
  std::array<BigReal, 4> partial_sums(const BigReal& x, int D) const {
    require_terms(D);
    const auto ex = exponentials(x, D);
    std::array<BigReal, 4> s{BigReal(work_), BigReal(work_), BigReal(work_), BigReal(work_)};
    for (int d = 1; d <= D; ++d) {
      BigReal t = coefficient(d) * ex[static_cast<std::size_t>(d - 1)];
      for (int r = 0; r < 4; ++r) {
        s[static_cast<std::size_t>(r)] += t;
        t = t * static_cast<long>(d);
      }
    }
    for (auto& v : s) v = (v / 3L).with_precision(prec_);
    return s;
  }

  bool tail_fittable(int D, const TailOptions& opt) const {
    return opt.fit_points >= 1 && opt.spacing >= 1 && D - opt.spacing * (opt.fit_points - 1) >= 1;
  }

  TailFit fit_tail(const BigReal& x, int D, const TailOptions& opt = {}) const {
    require_terms(D);
    if (!tail_fittable(D, opt)) throw Error(ErrorCode::insufficient_table, "too few terms for the tail fit");
    const auto K = static_cast<std::size_t>(opt.fit_points);
    const BigReal seven_halves = BigReal(7L, work_) / 2L;
    const BigReal xw = x.with_precision(work_);
    std::vector<std::vector<BigReal>> a(K, std::vector<BigReal>(K, BigReal(work_)));
    std::vector<BigReal> y(K, BigReal(work_));
    for (std::size_t i = 0; i < K; ++i) {
      const long d = D - static_cast<long>(i) * opt.spacing;
      const BigReal dr(d, work_);
      const BigReal inv = 1L / dr;
      BigReal p(1L, work_);
      for (std::size_t j = 0; j < K; ++j) {
        a[i][j] = p;
        p = p * inv;
      }
      y[i] = coefficient(static_cast<int>(d)) * exp(xw * d) * pow(dr, seven_halves);
    }
    TailFit fit;
    fit.terms = D;
    fit.coefficients = solve_dense(std::move(a), std::move(y));
    return fit;
  }

  /// (1/3) sum_j c_j zeta(7/2 + j - r, D + 1). Infinite when the leading
  /// exponent is not summable (r = 3).
  BigReal tail(const TailFit& fit, int r) const {
    BigReal total(work_);
    for (std::size_t j = 0; j < fit.coefficients.size(); ++j) {
      const BigReal s = BigReal(7L + 2 * static_cast<long>(j) - 2L * r, work_) / 2L;
      if (!(s > 1)) {
        BigReal inf(prec_);
        mpfr_set_inf(inf.get(), fit.coefficients[j].sign() >= 0 ? 1 : -1);
        return inf;
      }
      total += fit.coefficients[j] * zeta_cached(s, fit.terms + 1);
    }
    return (total / 3L).with_precision(prec_);
  }

 private:
  const BigReal& zeta_cached(const BigReal& s, int a) const {
    const long key_s = std::lround(s.to_double() * 2);
    for (const auto& e : zeta_cache_)
      if (e.twice_s == key_s && e.a == a) return e.value;
    zeta_cache_.push_back({key_s, a, hurwitz_zeta(s, BigReal(static_cast<long>(a), work_))});
    return zeta_cache_.back().value;
  }

  struct ZetaEntry {
    long twice_s;
    int a;
    BigReal value;
  };

  Precision prec_;
  Precision work_;
  std::vector<BigReal> coeffs_;
  mutable std::vector<ZetaEntry> zeta_cache_;  // memo only; not shared across threads
};

/// r-th derivative of F0 at real x from the first D terms, plus the tail
/// estimate from a model fitted at the same x.
inline SeriesEvaluation eval_F0(const GenusZeroSeries& series, const BigReal& x, int r, int D,
                                const TailOptions& opt = {}) {
  if (r < 0 || r > 3) throw Error(ErrorCode::domain_error, "derivative order must be 0..3");
  SeriesEvaluation ev;
  ev.x = x;
  ev.order = r;
  ev.terms_used = D;
  ev.partial_sum = series.partial_sums(x, D)[static_cast<std::size_t>(r)];
  ev.rigorous_lower = true;
  ev.tail_estimate = BigReal(series.precision());
  if (series.tail_fittable(D, opt)) {
    ev.tail_estimate = series.tail(series.fit_tail(x, D, opt), r);
    ev.tail_available = ev.tail_estimate.is_finite();
  }
  return ev;
}

inline SeriesEvaluation eval_F0(const CountTable& table, const BigReal& x, int r, int D,
                                const TailOptions& opt = {}) {
  if (D > table.d_max)
    throw Error(ErrorCode::insufficient_table,
                "series needs " + std::to_string(D) + " terms, table has " + std::to_string(table.d_max));
  return eval_F0(GenusZeroSeries(table, x.precision()), x, r, D, opt);
}

}  // namespace gwasym
