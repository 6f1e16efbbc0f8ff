#pragma once

// Exact count sequences: genus-0 and genus-1 plane curves, genus-0 space
// curves through points and lines, and the model recursions with a kernel of
// the form a (d1 d2 / d)^k.
//
// Everything is kept in the factorial-normalized form n = N / (number of
// conditions)!. Integrality of N is a post-hoc check, not an assumption.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "gwasym/error.hpp"
#include "gwasym/numerics/exact_rational.hpp"

namespace gwasym {

enum class Target { p2, p3 };

inline std::string to_string(Target t) { return t == Target::p2 ? "p2" : "p3"; }

/// Called with each finished degree; used by the CLI for progress lines.
using ProgressFn = std::function<void(int degree)>;

/// Normalized counts for one target and genus.
///
/// P2 tables hold n_{g,d} for 1 <= d <= d_max. P3 tables hold n_{0,d}(p) for
/// 1 <= d <= d_max and 0 <= p <= 2d, the count of degree-d rational curves
/// through 2d - p points and 2p lines divided by (2d + p)!.
struct CountTable {
  Target target = Target::p2;
  int genus = 0;
  int d_max = 0;
  std::vector<ExactRational> p2_values;               // [d - 1]
  std::vector<std::vector<ExactRational>> p3_values;  // [d - 1][p]
  std::string generated_at;                           // metadata only; not compared or serialized

  const ExactRational& at(int d) const {
    check_degree(d);
    if (target != Target::p2) throw Error(ErrorCode::domain_error, "P3 table needs (d, p)");
    return p2_values[static_cast<std::size_t>(d - 1)];
  }

  const ExactRational& at(int d, int p) const {
    check_degree(d);
    if (target != Target::p3) throw Error(ErrorCode::domain_error, "P2 table is indexed by d only");
    if (p < 0 || p > 2 * d) throw Error(ErrorCode::domain_error, "p outside [0, 2d]");
    return p3_values[static_cast<std::size_t>(d - 1)][static_cast<std::size_t>(p)];
  }

  ExactRational& at(int d) { return const_cast<ExactRational&>(static_cast<const CountTable&>(*this).at(d)); }
  ExactRational& at(int d, int p) {
    return const_cast<ExactRational&>(static_cast<const CountTable&>(*this).at(d, p));
  }

  /// Number of point/line conditions whose factorial normalizes the entry.
  int condition_count(int d, int p = 0) const { return target == Target::p2 ? 3 * d - 1 + genus : 2 * d + p; }

  /// The un-normalized count N = n * (conditions)!; exact, possibly non-integer
  /// if the table is corrupt.
  ExactRational count(int d, int p = 0) const {
    const ExactRational& n = target == Target::p2 ? at(d) : at(d, p);
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(condition_count(d, p)));
    return n * ExactRational(f);
  }

  friend bool operator==(const CountTable& a, const CountTable& b) {
    return a.target == b.target && a.genus == b.genus && a.d_max == b.d_max && a.p2_values == b.p2_values &&
           a.p3_values == b.p3_values;
  }

 private:
  void check_degree(int d) const {
    if (d < 1 || d > d_max) throw Error(ErrorCode::domain_error, "degree " + std::to_string(d) + " outside table");
  }
};

// ---------------------------------------------------------------------------
// P2

/// Kernel of the genus-0 plane recursion,
/// d1 d2 (3 d1 d2 (d + 2) - 2 d^2) / (2 (3d - 3)(3d - 2)(3d - 1)) with d = d1 + d2.
inline ExactRational p2_kernel(long d1, long d2) {
  if (d1 < 1 || d2 < 1) throw Error(ErrorCode::domain_error, "p2_kernel needs d1, d2 >= 1");
  const long d = d1 + d2;
  BigInt num = BigInt(d1) * d2 * (BigInt(3) * d1 * d2 * (d + 2) - BigInt(2) * d * d);
  BigInt den = BigInt(2) * (3 * d - 3) * (3 * d - 2) * (3 * d - 1);
  return make_rational(num, den);
}

inline CountTable p2_genus0(int d_max, const ProgressFn& progress = {}) {
  if (d_max < 1) throw Error(ErrorCode::domain_error, "d_max must be >= 1");
  CountTable t;
  t.target = Target::p2;
  t.genus = 0;
  t.d_max = d_max;
  t.p2_values.resize(static_cast<std::size_t>(d_max));
  t.p2_values[0] = make_rational(1, 2);
  ExactRational sum, term;
  for (int d = 2; d <= d_max; ++d) {
    // The kernel is symmetric, so pair (d1, d2) with (d2, d1).
    sum = 0;
    for (int d1 = 1; 2 * d1 <= d; ++d1) {
      const int d2 = d - d1;
      term = p2_kernel(d1, d2) * t.p2_values[static_cast<std::size_t>(d1 - 1)];
      term *= t.p2_values[static_cast<std::size_t>(d2 - 1)];
      if (d1 != d2) term *= 2;
      sum += term;
    }
    t.p2_values[static_cast<std::size_t>(d - 1)] = sum;
    if (progress) progress(d);
  }
  return t;
}

/// Genus-1 plane counts from the genus-0 table. No seed value is needed: the
/// d = 1 instance has an empty sum and a vanishing first term.
inline CountTable p2_genus1(int d_max, const CountTable& genus0, const ProgressFn& progress = {}) {
  if (d_max < 1) throw Error(ErrorCode::domain_error, "d_max must be >= 1");
  if (genus0.target != Target::p2 || genus0.genus != 0)
    throw Error(ErrorCode::missing_prerequisite, "genus-1 counts need a P2 genus-0 table");
  if (genus0.d_max < d_max)
    throw Error(ErrorCode::missing_prerequisite, "genus-0 table covers d <= " + std::to_string(genus0.d_max) +
                                                     ", need " + std::to_string(d_max));
  CountTable t;
  t.target = Target::p2;
  t.genus = 1;
  t.d_max = d_max;
  t.p2_values.resize(static_cast<std::size_t>(d_max));
  ExactRational acc, term;
  for (int d = 1; d <= d_max; ++d) {
    acc = 0;
    for (int d0 = 1; d0 < d; ++d0) {
      const int d1 = d - d0;
      const ExactRational& n1 = t.p2_values[static_cast<std::size_t>(d1 - 1)];
      if (n1 == 0) continue;
      term = genus0.at(d0) * n1;
      term *= static_cast<long>((3 * d0 * d0 - 2 * d0) * d1);
      acc += term;
    }
    acc /= static_cast<long>(27 * d);
    ExactRational lead = make_rational(static_cast<long>(d - 1) * (d - 2), 216) * genus0.at(d);
    t.p2_values[static_cast<std::size_t>(d - 1)] = lead + acc;
    if (progress) progress(d);
  }
  return t;
}

// ---------------------------------------------------------------------------
// P3

/// Admissible kernel arguments: p1 <= 2 d1, p2 <= 2 d2, 1 < p1 + p2 < 2(d1 + d2).
inline bool p3_kernel_domain(long d1, long d2, long p1, long p2) {
  const long d = d1 + d2, p = p1 + p2;
  return d1 >= 1 && d2 >= 1 && p1 >= 0 && p2 >= 0 && p1 <= 2 * d1 && p2 <= 2 * d2 && 1 < p && p < 2 * d;
}

namespace detail {
// (2d1+p1)!(2d2+p2)!/(2d+p)! is 1 / C(2d+p, 2d1+p1), so the kernel is a
// ratio of integers built from binomials only.
template <class Binom>
ExactRational p3_kernel_impl(long d1, long d2, long p1, long p2, const Binom& binom) {
  const long d = d1 + d2, p = p1 + p2;
  BigInt inner = BigInt(d1 * d1) * binom(2 * p - 2, 2 * p1) - BigInt(d2 * d2) * binom(2 * p - 2, 2 * p2);
  BigInt num = BigInt(d2) * binom(2 * d - p - 1, 2 * d1 - p1 - 1) * inner;
  if (num == 0) return ExactRational(0);
  return make_rational(num, binom(2 * d + p, 2 * d1 + p1));
}
}  // namespace detail

inline ExactRational p3_kernel(long d1, long d2, long p1, long p2) {
  if (!p3_kernel_domain(d1, d2, p1, p2))
    throw Error(ErrorCode::domain_error, "p3_kernel arguments violate p_i <= 2 d_i, 1 < p < 2d");
  return detail::p3_kernel_impl(d1, d2, p1, p2, [](long n, long k) { return binomial(n, k); });
}

/// Genus-0 space-curve grid n_{0,d}(p), 0 <= p <= 2d.
///
/// Per degree: p = 0 from the point-only recursion (d >= 2), p = 1 from its
/// one-line specialization, 2 <= p <= 2d - 1 from the general line-insertion
/// recursion, and p = 2d from the all-lines recursion. The general recursion
/// is not applied at p = 2d, where the kernel is undefined.
inline CountTable p3_genus0(int d_max, const ProgressFn& progress = {}) {
  if (d_max < 1) throw Error(ErrorCode::domain_error, "d_max must be >= 1");
  CountTable t;
  t.target = Target::p3;
  t.genus = 0;
  t.d_max = d_max;
  t.p3_values.resize(static_cast<std::size_t>(d_max));
  const BinomialTable binom(4 * d_max + 2);
  auto n = [&t](int d, int p) -> ExactRational& {
    return t.p3_values[static_cast<std::size_t>(d - 1)][static_cast<std::size_t>(p)];
  };

  ExactRational sum, term;
  for (int d = 1; d <= d_max; ++d) {
    t.p3_values[static_cast<std::size_t>(d - 1)].resize(static_cast<std::size_t>(2 * d + 1));

    if (d == 1) {
      n(1, 0) = make_rational(1, 2);
    } else {
      sum = 0;
      for (int d1 = 1; d1 < d; ++d1) {
        const long d2 = d - d1;
        BigInt num = BigInt((d2 - d1) * d1 * d1) * (d2 * (2 * d2 + 1));
        if (num == 0) continue;
        term = make_rational(num, BigInt(static_cast<long>(d) * (d - 1) * (2 * d - 1)));
        term *= n(d1, 0);
        term *= n(static_cast<int>(d2), 1);
        sum += term;
      }
      n(d, 0) = sum;
    }

    sum = make_rational(d, 2 * d + 1) * n(d, 0);
    for (int d1 = 1; d1 < d; ++d1) {
      const long d2 = d - d1;
      BigInt num = BigInt(static_cast<long>(d1) * d1 * d1) * (d2 * (2 * d2 + 1));
      term = make_rational(num, BigInt(static_cast<long>(d) * (2 * d - 1) * (2 * d + 1)));
      term *= n(d1, 0);
      term *= n(static_cast<int>(d2), 1);
      sum += term;
    }
    n(d, 1) = sum;

    for (int p = 2; p <= 2 * d - 1; ++p) {
      sum = make_rational(d, 2 * d + p) * n(d, p - 1);
      for (int d1 = 1; d1 < d; ++d1) {
        const int d2 = d - d1;
        const int p1_lo = std::max(0, p - 2 * d2);
        const int p1_hi = std::min(2 * d1, p);
        for (int p1 = p1_lo; p1 <= p1_hi; ++p1) {
          const int p2 = p - p1;
          term = detail::p3_kernel_impl(d1, d2, p1, p2, binom);
          if (term == 0) continue;
          term *= n(d1, p1);
          term *= n(d2, p2);
          sum += term;
        }
      }
      n(d, p) = sum;
    }

    sum = make_rational(1, 2) * n(d, 2 * d - 1);
    for (int d1 = 1; d1 < d; ++d1) {
      const long d2 = d - d1;
      BigInt num = BigInt(static_cast<long>(d1) * d2) * (4L * d * d1 * d2 - static_cast<long>(d) * d + 2L * d1 * d2);
      term = make_rational(num, BigInt(2L * d * (2 * d - 1) * (4 * d - 1)));
      term *= n(d1, 2 * d1);
      term *= n(static_cast<int>(d2), static_cast<int>(2 * d2));
      sum += term;
    }
    n(d, 2 * d) = sum;
    if (progress) progress(d);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Model recursions n_d = sum_{d1 + d2 = d} f(d1, d2) n_{d1} n_{d2}

struct ModelSpec {
  ExactRational a;
  unsigned k = 0;
  ExactRational n1;

  void validate() const {
    if (a <= 0) throw Error(ErrorCode::domain_error, "model needs a > 0");
    if (n1 <= 0) throw Error(ErrorCode::domain_error, "model needs n1 > 0");
  }

  /// a (d1 d2 / d)^k
  ExactRational kernel(long d1, long d2) const {
    ExactRational ratio = make_rational(d1 * d2, d1 + d2);
    return a * pow(ratio, k);
  }
};

/// Catalan number C_m = (2m)! / (m! (m+1)!).
inline BigInt catalan(unsigned long m) {
  BigInt c;
  mpz_bin_uiui(c.get_mpz_t(), 2 * m, m);
  return c / (m + 1);
}

/// Direct O(d^2) evaluation of the convolution recursion with seed n_1.
template <class Kernel>
std::vector<ExactRational> convolution_recursion(const ExactRational& n1, Kernel&& kernel, int d_max) {
  if (d_max < 1) throw Error(ErrorCode::domain_error, "d_max must be >= 1");
  std::vector<ExactRational> n(static_cast<std::size_t>(d_max));
  n[0] = n1;
  for (int d = 2; d <= d_max; ++d) {
    ExactRational sum = 0;
    for (int d1 = 1; d1 < d; ++d1) {
      const int d2 = d - d1;
      sum += ExactRational(kernel(d1, d2)) * n[static_cast<std::size_t>(d1 - 1)] * n[static_cast<std::size_t>(d2 - 1)];
    }
    n[static_cast<std::size_t>(d - 1)] = sum;
  }
  return n;
}

/// Closed form of the recursion with kernel a f(d1) f(d2) / f(d):
/// n_d = C_{d-1} a^{d-1} (f(1) n_1)^d / f(d).
template <class Weight>
std::vector<ExactRational> closed_form_sequence(const ExactRational& a, Weight&& f, const ExactRational& n1,
                                                int d_max) {
  if (d_max < 1) throw Error(ErrorCode::domain_error, "d_max must be >= 1");
  std::vector<ExactRational> n(static_cast<std::size_t>(d_max));
  const ExactRational base = ExactRational(f(1)) * n1;
  for (int d = 1; d <= d_max; ++d) {
    const auto u = static_cast<unsigned long>(d);
    n[static_cast<std::size_t>(d - 1)] =
        ExactRational(catalan(u - 1)) * pow(a, u - 1) * pow(base, u) / ExactRational(f(d));
  }
  return n;
}

inline std::vector<ExactRational> model_closed_form(const ModelSpec& spec, int d_max) {
  spec.validate();
  return closed_form_sequence(
      spec.a, [&spec](long d) { return pow(ExactRational(d), spec.k); }, spec.n1, d_max);
}

inline std::vector<ExactRational> model_recursion(const ModelSpec& spec, int d_max) {
  spec.validate();
  return convolution_recursion(spec.n1, [&spec](long d1, long d2) { return spec.kernel(d1, d2); }, d_max);
}

}  // namespace gwasym
