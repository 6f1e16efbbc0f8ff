#pragma once

// Exact verification of the inequalities satisfied by the count tables.
// Half-integer powers of d are removed by squaring both sides, so every
// verdict below is decided in exact rational arithmetic, except the
// series-ordering check, whose partial sums are rigorous lower bounds.

#include <cstddef>
#include <string>
#include <vector>

#include "gwasym/error.hpp"
#include "gwasym/numerics/big_real.hpp"
#include "gwasym/numerics/exact_rational.hpp"
#include "gwasym/recursions.hpp"
#include "gwasym/singularity/series.hpp"

namespace gwasym {

struct Violation {
  long index = 0;
  long sub_index = -1;  // p for P3 entries, sample number for series checks
  std::string lhs;
  std::string rhs;
  std::string relation;  // the relation that failed, e.g. "lower <= n"
};

struct BoundReport {
  std::string bound_id;
  long d_lo = 0;
  long d_hi = 0;
  std::size_t checked = 0;
  std::vector<Violation> violations;

  bool pass() const { return violations.empty(); }
};

namespace detail {
inline void record(BoundReport& rep, long d, long p, const ExactRational& lhs, const ExactRational& rhs,
                   const char* relation) {
  rep.violations.push_back({d, p, format_rational(lhs), format_rational(rhs), relation});
}

inline ExactRational pow_rational(long num, long den, unsigned long e) { return pow(make_rational(num, den), e); }

inline void require_p2_genus0(const CountTable& t) {
  if (t.target != Target::p2 || t.genus != 0) throw Error(ErrorCode::domain_error, "needs a P2 genus-0 table");
}
}  // namespace detail

/// (8/5) 27^{-d} d^{-7/2} <= n_{0,d} <= (45/16) (4/15)^d d^{-7/2}, checked as
/// 64/25 27^{-2d} <= n^2 d^7 <= 2025/256 (4/15)^{2d}.
inline BoundReport check_p2_sandwich(const CountTable& table) {
  detail::require_p2_genus0(table);
  BoundReport rep{"p2-sandwich", 1, table.d_max, 0, {}};
  const ExactRational lo_c = make_rational(64, 25), hi_c = make_rational(2025, 256);
  for (int d = 1; d <= table.d_max; ++d) {
    const auto u = static_cast<unsigned long>(d);
    const ExactRational& n = table.at(d);
    if (n <= 0) {
      detail::record(rep, d, -1, n, ExactRational(0), "0 < n");
      ++rep.checked;
      continue;
    }
    ExactRational mid = n * n * pow(ExactRational(d), 7);
    ExactRational lo = lo_c * detail::pow_rational(1, 27, 2 * u);
    ExactRational hi = hi_c * detail::pow_rational(4, 15, 2 * u);
    if (!(lo <= mid)) detail::record(rep, d, -1, lo, mid, "lower^2 <= n^2 d^7");
    if (!(mid <= hi)) detail::record(rep, d, -1, mid, hi, "n^2 d^7 <= upper^2");
    ++rep.checked;
  }
  return rep;
}

/// (16/45) 4^d d^{-1/2} <= C(2d, d) <= (3/4) 4^d d^{-1/2}, squared:
/// (256/2025) 16^d <= d C(2d,d)^2 <= (9/16) 16^d.
inline BoundReport check_stirling(int d_max) {
  if (d_max < 1) throw Error(ErrorCode::domain_error, "d_max must be >= 1");
  BoundReport rep{"central-binomial", 1, d_max, 0, {}};
  BigInt c = 1;        // C(2d, d), updated incrementally
  BigInt sixteen = 1;  // 16^d
  for (long d = 1; d <= d_max; ++d) {
    c = c * (2 * (2 * d - 1));
    c /= d;
    sixteen *= 16;
    BigInt mid = c * c * d;
    // 256 * 16^d <= 2025 * mid  and  16 * mid <= 9 * 16^d
    if (!(256 * sixteen <= 2025 * mid))
      detail::record(rep, d, -1, make_rational(BigInt(256 * sixteen), BigInt(2025)), ExactRational(mid),
                     "lower^2 <= d C(2d,d)^2");
    if (!(16 * mid <= 9 * sixteen))
      detail::record(rep, d, -1, ExactRational(mid), make_rational(BigInt(9 * sixteen), BigInt(16)),
                     "d C(2d,d)^2 <= upper^2");
    ++rep.checked;
  }
  return rep;
}

/// The two comparison sequences from the kernel sandwich
/// (1/54) d1 d2 (3d1-2)(3d2-2) / (d(3d-2)) <= f(d1, d2) <= (2/15) d1^2 d2^2 / d^2,
/// and their central-binomial forms
/// (9/2) C(2d,d) 108^{-d} d^{-3} <= n_{0,d} <= (15/4) C(2d,d) 15^{-d} d^{-3}.
inline std::vector<BoundReport> check_p2_comparison(const CountTable& table) {
  detail::require_p2_genus0(table);
  const int D = table.d_max;
  const ExactRational half = make_rational(1, 2);
  auto lower = closed_form_sequence(
      make_rational(1, 54), [](long d) { return ExactRational(d * (3 * d - 2)); }, half, D);
  auto upper = closed_form_sequence(
      make_rational(2, 15), [](long d) { return ExactRational(d * d); }, half, D);

  BoundReport model{"p2-model-comparison", 1, D, 0, {}};
  BoundReport central{"p2-central-binomial", 1, D, 0, {}};
  for (int d = 1; d <= D; ++d) {
    const auto u = static_cast<unsigned long>(d);
    const ExactRational& n = table.at(d);
    if (!(lower[u - 1] <= n)) detail::record(model, d, -1, lower[u - 1], n, "lower model <= n");
    if (!(n <= upper[u - 1])) detail::record(model, d, -1, n, upper[u - 1], "n <= upper model");
    ++model.checked;

    const ExactRational c(binomial(2 * d, d));
    const ExactRational d3 = pow(ExactRational(d), 3);
    ExactRational lo = make_rational(9, 2) * c * detail::pow_rational(1, 108, u) / d3;
    ExactRational hi = make_rational(15, 4) * c * detail::pow_rational(1, 15, u) / d3;
    if (!(lo <= n)) detail::record(central, d, -1, lo, n, "lower <= n");
    if (!(n <= hi)) detail::record(central, d, -1, n, hi, "n <= upper");
    ++central.checked;
  }
  return {model, central};
}

/// n_{0,d}(p) <= 2^{8d} d^{-4} for every stored (d, p).
inline BoundReport check_p3_coarse_bound(const CountTable& table) {
  if (table.target != Target::p3) throw Error(ErrorCode::domain_error, "needs a P3 table");
  BoundReport rep{"p3-coarse", 1, table.d_max, 0, {}};
  for (int d = 1; d <= table.d_max; ++d) {
    BigInt num;
    mpz_ui_pow_ui(num.get_mpz_t(), 2, 8 * static_cast<unsigned long>(d));
    const ExactRational bound = make_rational(num, BigInt(d) * d * d * d);
    for (int p = 0; p <= 2 * d; ++p) {
      const ExactRational& n = table.at(d, p);
      if (!(n <= bound)) detail::record(rep, d, p, n, bound, "n <= 2^{8d} d^{-4}");
      if (n < 0) detail::record(rep, d, p, n, ExactRational(0), "0 <= n");
      ++rep.checked;
    }
  }
  return rep;
}

/// The simplified majorant grid n'_d(p): n'_1(0) = 1/2,
/// n'_d(0) = 8 sum n'_{d1}(0) n'_{d2}(0) for d >= 2, and
/// n'_d(p) = n'_d(p-1)/2 + 8 sum_{d1+d2=d} sum_{p1+p2=p, p_i<=2d_i} n'_{d1}(p1) n'_{d2}(p2) for p >= 1.
inline std::vector<std::vector<ExactRational>> p3_majorant_grid(int d_max) {
  if (d_max < 1) throw Error(ErrorCode::domain_error, "d_max must be >= 1");
  std::vector<std::vector<ExactRational>> m(static_cast<std::size_t>(d_max));
  auto at = [&m](int d, int p) -> ExactRational& {
    return m[static_cast<std::size_t>(d - 1)][static_cast<std::size_t>(p)];
  };
  ExactRational sum;
  for (int d = 1; d <= d_max; ++d) {
    m[static_cast<std::size_t>(d - 1)].resize(static_cast<std::size_t>(2 * d + 1));
    if (d == 1) {
      at(1, 0) = make_rational(1, 2);
    } else {
      sum = 0;
      for (int d1 = 1; d1 < d; ++d1) sum += at(d1, 0) * at(d - d1, 0);
      at(d, 0) = 8 * sum;
    }
    for (int p = 1; p <= 2 * d; ++p) {
      sum = 0;
      for (int d1 = 1; d1 < d; ++d1) {
        const int d2 = d - d1;
        for (int p1 = std::max(0, p - 2 * d2); p1 <= std::min(2 * d1, p); ++p1) sum += at(d1, p1) * at(d2, p - p1);
      }
      at(d, p) = at(d, p - 1) / 2 + 8 * sum;
    }
  }
  return m;
}

struct MajorantReport {
  std::vector<std::vector<ExactRational>> majorants;  // n'_d(p), [d-1][p]
  BoundReport comparison;
};

/// Builds n' up to the table's d_max and checks n_{0,d}(p) <= n'_d(p) / d^3.
inline MajorantReport p3_majorants(const CountTable& table) {
  if (table.target != Target::p3) throw Error(ErrorCode::domain_error, "needs a P3 table");
  MajorantReport out{p3_majorant_grid(table.d_max), {"p3-majorant", 1, table.d_max, 0, {}}};
  for (int d = 1; d <= table.d_max; ++d) {
    const ExactRational d3 = pow(ExactRational(d), 3);
    for (int p = 0; p <= 2 * d; ++p) {
      const ExactRational rhs = out.majorants[static_cast<std::size_t>(d - 1)][static_cast<std::size_t>(p)] / d3;
      const ExactRational& n = table.at(d, p);
      if (!(n <= rhs)) detail::record(out.comparison, d, p, n, rhs, "n <= n'/d^3");
      ++out.comparison.checked;
    }
  }
  return out;
}

/// At each sample x (strictly below x0 minus its error bar) the partial sums
/// satisfy 0 < F0 < F0' < F0'' < F0''' and 3 F0'' - 2 F0' < 9. All terms are
/// positive, so partial sums are lower bounds and the last check is rigorous.
inline BoundReport check_ordering_F0(const GenusZeroSeries& series, const std::vector<BigReal>& samples,
                                     const BigReal& x0, const BigReal& x0_error, int D) {
  series.require_terms(D);
  BoundReport rep{"f0-ordering", 1, D, 0, {}};
  const BigReal ceiling = x0 - abs(x0_error);
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (!(samples[i] < ceiling))
      throw Error(ErrorCode::sample_above_x0, "sample " + samples[i].to_string(12) + " is not below x0 - error (" +
                                                  ceiling.to_string(12) + ")");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto s = series.partial_sums(samples[i], D);
    const long idx = static_cast<long>(i);
    if (!(s[0] > 0)) rep.violations.push_back({D, idx, s[0].to_string(20), "0", "0 < F0"});
    for (std::size_t r = 0; r < 3; ++r)
      if (!(s[r] < s[r + 1]))
        rep.violations.push_back({D, idx, s[r].to_string(20), s[r + 1].to_string(20),
                                  "F0^(" + std::to_string(r) + ") < F0^(" + std::to_string(r + 1) + ")"});
    const BigReal g = s[2] * 3L - s[1] * 2L;
    if (!(g < 9)) rep.violations.push_back({D, idx, g.to_string(20), "9", "3 F0'' - 2 F0' < 9"});
    ++rep.checked;
  }
  return rep;
}

}  // namespace gwasym
