#pragma once

// Data-driven checks on positive sequences: d-th roots and their eventual
// monotonicity, growth-constant extrapolation, exponent fits, and roots along
// rays of the P3 grid.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gwasym/error.hpp"
#include "gwasym/numerics/big_real.hpp"
#include "gwasym/numerics/exact_rational.hpp"
#include "gwasym/recursions.hpp"

namespace gwasym {

/// Values n_d for d = first_degree .. first_degree + size - 1.
struct Sequence {
  std::string id;
  int first_degree = 1;
  std::vector<ExactRational> values;

  int last_degree() const { return first_degree + static_cast<int>(values.size()) - 1; }
  bool covers(int d) const { return d >= first_degree && d <= last_degree(); }
  const ExactRational& at(int d) const {
    if (!covers(d)) throw Error(ErrorCode::domain_error, id + ": degree " + std::to_string(d) + " not in sequence");
    return values[static_cast<std::size_t>(d - first_degree)];
  }
};

/// P2 tables as sequences. Genus-1 tables start at d = 3, dropping the two
/// leading zeros.
inline Sequence sequence_from(const CountTable& table) {
  if (table.target != Target::p2) throw Error(ErrorCode::domain_error, "P3 tables are read along rays");
  Sequence s;
  s.id = "p2-genus" + std::to_string(table.genus);
  s.first_degree = table.genus == 1 ? 3 : 1;
  for (int d = s.first_degree; d <= table.d_max; ++d) s.values.push_back(table.at(d));
  return s;
}

inline Sequence sequence_from(const ModelSpec& spec, int d_max) {
  Sequence s;
  s.id = "model(a=" + spec.a.get_str() + ",k=" + std::to_string(spec.k) + ",n1=" + spec.n1.get_str() + ")";
  s.values = model_closed_form(spec, d_max);
  return s;
}

namespace detail {
inline void require_positive(const Sequence& s) {
  for (std::size_t i = 0; i < s.values.size(); ++i)
    if (s.values[i] <= 0)
      throw Error(ErrorCode::nonpositive_entry,
                  s.id + ": entry at d = " + std::to_string(s.first_degree + static_cast<int>(i)) + " is not positive");
}
}  // namespace detail

/// n_d^{1/d} = exp(ln(n_d) / d). Display and extrapolation only; ordering
/// verdicts come from monotone_from.
inline std::vector<BigReal> root_sequence(const Sequence& s, Precision prec = kDefaultPrecision) {
  detail::require_positive(s);
  std::vector<BigReal> out;
  out.reserve(s.values.size());
  for (int d = s.first_degree; d <= s.last_degree(); ++d)
    out.push_back(exp(log_rational(s.at(d), prec + 16) / static_cast<long>(d)).with_precision(prec));
  return out;
}

/// Exact test of n_d^{1/d} <= n_{d+1}^{1/(d+1)}, i.e. n_d^{d+1} <= n_{d+1}^d.
inline bool root_nondecreasing(const ExactRational& n_d, const ExactRational& n_next, unsigned long d) {
  // p/q and r/s: p^{d+1} s^d <= r^d q^{d+1}, i.e. (p s)^d p <= (r q)^d q.
  // The common factor of p s and r q is divided out before powering.
  BigInt u = n_d.get_num() * n_next.get_den();
  BigInt v = n_next.get_num() * n_d.get_den();
  BigInt g;
  mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
  u /= g;
  v /= g;
  BigInt lhs, rhs;
  mpz_pow_ui(lhs.get_mpz_t(), u.get_mpz_t(), d);
  mpz_pow_ui(rhs.get_mpz_t(), v.get_mpz_t(), d);
  lhs *= n_d.get_num();
  rhs *= n_d.get_den();
  return lhs <= rhs;
}

struct MonotoneResult {
  std::optional<int> d_star;  // empty: the last checked pair decreases
  int checked_from = 0;
  int checked_to = 0;  // pairs (d, d + 1) with d < checked_to
  std::vector<int> decreasing_at;
};

/// Smallest d* with n_d^{d+1} <= n_{d+1}^d for every checked d >= d*.
inline MonotoneResult monotone_from(const Sequence& s) {
  detail::require_positive(s);
  if (s.values.size() < 3) throw Error(ErrorCode::insufficient_length, s.id + ": need at least 3 terms");
  MonotoneResult r;
  r.checked_from = s.first_degree;
  r.checked_to = s.last_degree();
  for (int d = s.first_degree; d < s.last_degree(); ++d)
    if (!root_nondecreasing(s.at(d), s.at(d + 1), static_cast<unsigned long>(d))) r.decreasing_at.push_back(d);
  if (r.decreasing_at.empty())
    r.d_star = s.first_degree;
  else if (r.decreasing_at.back() < s.last_degree() - 1)
    r.d_star = r.decreasing_at.back() + 1;
  return r;
}

/// Abscissa used by the ratio extrapolation: h = 1/d, or h = d^{-1/2} for
/// sequences whose ratios carry half-integer corrections.
enum class RatioStep { inverse_d, inverse_sqrt_d };

struct RatioEstimate {
  BigReal b;
  BigReal error;  // |b(order) - b(order - 1)|
  int order = 0;
  RatioStep step = RatioStep::inverse_d;
  int last_degree = 0;
};

namespace detail {
inline BigReal ratio_extrapolate_once(const Sequence& s, int order, RatioStep step, Precision work) {
  const int hi = s.last_degree() - 1;  // last ratio n_{hi+1}/n_hi
  const int lo = hi - order;
  std::vector<BigReal> h, r;
  for (int d = lo; d <= hi; ++d) {
    BigReal dr(static_cast<long>(d), work);
    h.push_back(step == RatioStep::inverse_d ? 1L / dr : 1L / sqrt(dr));
    r.emplace_back(ExactRational(s.at(d + 1) / s.at(d)), work);
  }
  // Lagrange interpolation polynomial in h evaluated at h = 0.
  BigReal total(work);
  for (std::size_t i = 0; i < h.size(); ++i) {
    BigReal w(1L, work);
    for (std::size_t j = 0; j < h.size(); ++j)
      if (j != i) w = w * (-h[j]) / (h[i] - h[j]);
    total += w * r[i];
  }
  return total;
}
}  // namespace detail

/// Extrapolates r_d = n_{d+1}/n_d to d = infinity with a degree-`order`
/// polynomial in h through the last order + 1 ratios.
inline RatioEstimate ratio_extrapolate(const Sequence& s, int order, RatioStep step = RatioStep::inverse_d,
                                       Precision prec = kDefaultPrecision) {
  if (order < 0) throw Error(ErrorCode::domain_error, "order must be >= 0");
  detail::require_positive(s);
  if (static_cast<int>(s.values.size()) < order + 3)
    throw Error(ErrorCode::insufficient_length,
                s.id + ": order " + std::to_string(order) + " needs " + std::to_string(order + 3) + " terms");
  const Precision work = prec + 64 + static_cast<Precision>(8 * order);
  RatioEstimate out;
  out.order = order;
  out.step = step;
  out.last_degree = s.last_degree();
  BigReal b = detail::ratio_extrapolate_once(s, order, step, work);
  BigReal prev(work);
  if (order > 0) {
    prev = detail::ratio_extrapolate_once(s, order - 1, step, work);
  } else {
    // Order 0 is the last ratio; compare with the one before it.
    Sequence shorter = s;
    shorter.values.pop_back();
    prev = detail::ratio_extrapolate_once(shorter, 0, step, work);
  }
  out.error = abs(b - prev).with_precision(prec);
  out.b = b.with_precision(prec);
  return out;
}

struct ExponentFit {
  BigReal slope;
  BigReal intercept;
  BigReal rms_residual;
  int d_lo = 0;
  int d_hi = 0;
};

/// Least-squares slope of ln(n_d b^{-d}) against ln d over [d_lo, d_hi].
inline ExponentFit fit_exponent(const Sequence& s, const BigReal& b, int d_lo, int d_hi) {
  if (!(b > 0)) throw Error(ErrorCode::domain_error, "fit_exponent needs b > 0");
  if (d_lo < s.first_degree || d_hi > s.last_degree())
    throw Error(ErrorCode::degenerate_window, s.id + ": window outside the computed range");
  if (d_hi - d_lo < 1) throw Error(ErrorCode::degenerate_window, "window needs at least two degrees");
  const Precision prec = b.precision();
  const BigReal lnb = log(b);
  std::vector<BigReal> xs, ys;
  for (int d = d_lo; d <= d_hi; ++d) {
    if (s.at(d) <= 0) throw Error(ErrorCode::nonpositive_entry, s.id + ": non-positive entry in window");
    xs.push_back(log(BigReal(static_cast<long>(d), prec)));
    ys.push_back(log_rational(s.at(d), prec) - lnb * static_cast<long>(d));
  }
  const long n = static_cast<long>(xs.size());
  BigReal sx(prec), sy(prec);
  for (long i = 0; i < n; ++i) {
    sx += xs[static_cast<std::size_t>(i)];
    sy += ys[static_cast<std::size_t>(i)];
  }
  const BigReal mx = sx / n, my = sy / n;
  BigReal sxx(prec), sxy(prec);
  for (long i = 0; i < n; ++i) {
    const BigReal dx = xs[static_cast<std::size_t>(i)] - mx;
    sxx += dx * dx;
    sxy += dx * (ys[static_cast<std::size_t>(i)] - my);
  }
  if (sxx.is_zero()) throw Error(ErrorCode::degenerate_window, "window has no spread in ln d");
  ExponentFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  BigReal ss(prec);
  for (long i = 0; i < n; ++i) {
    const BigReal e = ys[static_cast<std::size_t>(i)] - fit.intercept - fit.slope * xs[static_cast<std::size_t>(i)];
    ss += e * e;
  }
  fit.rms_residual = sqrt(ss / n);
  fit.d_lo = d_lo;
  fit.d_hi = d_hi;
  return fit;
}

struct RayReport {
  int alpha = 0;
  int beta = 0;
  std::vector<int> degrees;           // d with n_{0, alpha d}(beta d) > 0
  std::vector<int> zero_degrees;      // d where the entry vanishes
  std::vector<BigReal> roots;         // n^{1/d}
  std::vector<BigReal> differences;   // roots[i] - roots[i - 1]
  std::string verdict;                // "slow" or "settled"
};

/// d-th roots of n_{0, alpha d}(beta d) for every d the table covers.
inline RayReport p3_ray(const CountTable& table, int alpha, int beta, Precision prec = kDefaultPrecision) {
  if (table.target != Target::p3) throw Error(ErrorCode::domain_error, "rays need a P3 table");
  if (alpha < 1 || beta < 0) throw Error(ErrorCode::ray_out_of_range, "need alpha >= 1 and beta >= 0");
  if (beta > 2 * alpha)
    throw Error(ErrorCode::ray_out_of_range, "beta > 2 alpha puts p above 2 * degree");
  RayReport r;
  r.alpha = alpha;
  r.beta = beta;
  for (int d = 1; alpha * d <= table.d_max; ++d) {
    const ExactRational& n = table.at(alpha * d, beta * d);
    if (n <= 0) {
      r.zero_degrees.push_back(d);
      continue;
    }
    r.degrees.push_back(d);
    r.roots.push_back(exp(log_rational(n, prec + 16) / static_cast<long>(d)).with_precision(prec));
  }
  for (std::size_t i = 1; i < r.roots.size(); ++i) r.differences.push_back(r.roots[i] - r.roots[i - 1]);
  // Settled means the last step moved the root by less than 1e-6 relative.
  r.verdict = "slow";
  if (!r.differences.empty()) {
    const BigReal rel = abs(r.differences.back() / r.roots.back());
    if (rel < BigReal(1e-6, prec)) r.verdict = "settled";
  }
  return r;
}

}  // namespace gwasym
