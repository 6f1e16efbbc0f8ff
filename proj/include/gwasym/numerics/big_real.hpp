#pragma once

#include <mpfr.h>

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <memory>
#include <ostream>
#include <string>
#include <utility>

#include "gwasym/error.hpp"
#include "gwasym/numerics/exact_rational.hpp"

namespace gwasym {

using Precision = mpfr_prec_t;
inline constexpr Precision kDefaultPrecision = 256;
inline constexpr Precision kMinimumConversionPrecision = 64;

enum class Rounding { nearest, down, up, toward_zero };

constexpr mpfr_rnd_t to_mpfr(Rounding r) noexcept {
  switch (r) {
    case Rounding::down: return MPFR_RNDD;
    case Rounding::up: return MPFR_RNDU;
    case Rounding::toward_zero: return MPFR_RNDZ;
    case Rounding::nearest: break;
  }
  return MPFR_RNDN;
}

/// Real number at a fixed binary precision, backed by an MPFR value.
///
/// Binary operations produce a result at the larger of the two operand
/// precisions and use the left operand's rounding mode. Values are otherwise
/// immutable through the public arithmetic interface.
class BigReal {
 public:
  explicit BigReal(Precision prec = kDefaultPrecision, Rounding rounding = Rounding::nearest)
      : rounding_(rounding) {
    mpfr_init2(value_, prec);
    mpfr_set_zero(value_, 1);
  }

  BigReal(long v, Precision prec, Rounding rounding = Rounding::nearest) : BigReal(prec, rounding) {
    mpfr_set_si(value_, v, rnd());
  }

  BigReal(int v, Precision prec, Rounding rounding = Rounding::nearest)
      : BigReal(static_cast<long>(v), prec, rounding) {}

  BigReal(double v, Precision prec, Rounding rounding = Rounding::nearest) : BigReal(prec, rounding) {
    mpfr_set_d(value_, v, rnd());
  }

  BigReal(const ExactRational& q, Precision prec, Rounding rounding = Rounding::nearest)
      : BigReal(prec, rounding) {
    mpfr_set_q(value_, q.get_mpq_t(), rnd());
  }

  BigReal(const BigInt& z, Precision prec, Rounding rounding = Rounding::nearest)
      : BigReal(prec, rounding) {
    mpfr_set_z(value_, z.get_mpz_t(), rnd());
  }

  /// Decimal (or "inf"/"nan") text.
  static BigReal parse(const std::string& text, Precision prec = kDefaultPrecision) {
    BigReal out(prec);
    if (mpfr_set_str(out.value_, text.c_str(), 10, MPFR_RNDN) != 0)
      throw Error(ErrorCode::parse_error, "not a real number: '" + text + "'");
    return out;
  }

  BigReal(const BigReal& other) : rounding_(other.rounding_) {
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }

  BigReal(BigReal&& other) noexcept : rounding_(other.rounding_) {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
  }

  BigReal& operator=(const BigReal& other) {
    if (this != &other) {
      mpfr_set_prec(value_, other.precision());
      mpfr_set(value_, other.value_, MPFR_RNDN);
      rounding_ = other.rounding_;
    }
    return *this;
  }

  BigReal& operator=(BigReal&& other) noexcept {
    mpfr_swap(value_, other.value_);
    std::swap(rounding_, other.rounding_);
    return *this;
  }

  ~BigReal() { mpfr_clear(value_); }

  Precision precision() const { return mpfr_get_prec(value_); }
  Rounding rounding() const { return rounding_; }

  /// Same value rounded to another precision.
  BigReal with_precision(Precision prec) const {
    BigReal out(prec, rounding_);
    mpfr_set(out.value_, value_, rnd());
    return out;
  }

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  /// Scientific notation with `digits` significant decimal digits (0 picks a
  /// count that represents the precision).
  std::string to_string(int digits = 0) const {
    if (mpfr_nan_p(value_)) return "nan";
    if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
    if (digits <= 0) digits = static_cast<int>(precision() * 0.30103) + 1;
    char* raw = nullptr;
    mpfr_asprintf(&raw, "%.*Re", digits - 1, value_);
    std::string out(raw);
    mpfr_free_str(raw);
    return out;
  }

  BigReal operator-() const {
    BigReal out(precision(), rounding_);
    mpfr_neg(out.value_, value_, rnd());
    return out;
  }

  friend BigReal operator+(const BigReal& a, const BigReal& b) {
    return binary(a, b, [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t m) { mpfr_add(r, x, y, m); });
  }
  friend BigReal operator-(const BigReal& a, const BigReal& b) {
    return binary(a, b, [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t m) { mpfr_sub(r, x, y, m); });
  }
  friend BigReal operator*(const BigReal& a, const BigReal& b) {
    return binary(a, b, [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t m) { mpfr_mul(r, x, y, m); });
  }
  friend BigReal operator/(const BigReal& a, const BigReal& b) {
    return binary(a, b, [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t m) { mpfr_div(r, x, y, m); });
  }

  friend BigReal operator+(const BigReal& a, long b) {
    BigReal out(a.precision(), a.rounding_);
    mpfr_add_si(out.value_, a.value_, b, a.rnd());
    return out;
  }
  friend BigReal operator+(long a, const BigReal& b) { return b + a; }
  friend BigReal operator-(const BigReal& a, long b) {
    BigReal out(a.precision(), a.rounding_);
    mpfr_sub_si(out.value_, a.value_, b, a.rnd());
    return out;
  }
  friend BigReal operator-(long a, const BigReal& b) {
    BigReal out(b.precision(), b.rounding_);
    mpfr_si_sub(out.value_, a, b.value_, b.rnd());
    return out;
  }
  friend BigReal operator*(const BigReal& a, long b) {
    BigReal out(a.precision(), a.rounding_);
    mpfr_mul_si(out.value_, a.value_, b, a.rnd());
    return out;
  }
  friend BigReal operator*(long a, const BigReal& b) { return b * a; }
  friend BigReal operator/(const BigReal& a, long b) {
    BigReal out(a.precision(), a.rounding_);
    mpfr_div_si(out.value_, a.value_, b, a.rnd());
    return out;
  }
  friend BigReal operator/(long a, const BigReal& b) {
    BigReal out(b.precision(), b.rounding_);
    mpfr_si_div(out.value_, a, b.value_, b.rnd());
    return out;
  }
  friend BigReal operator*(const BigReal& a, const ExactRational& q) {
    BigReal out(a.precision(), a.rounding_);
    mpfr_mul_q(out.value_, a.value_, q.get_mpq_t(), a.rnd());
    return out;
  }
  friend BigReal operator*(const ExactRational& q, const BigReal& a) { return a * q; }

  BigReal& operator+=(const BigReal& b) { return *this = *this + b; }
  BigReal& operator-=(const BigReal& b) { return *this = *this - b; }
  BigReal& operator*=(const BigReal& b) { return *this = *this * b; }
  BigReal& operator/=(const BigReal& b) { return *this = *this / b; }

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
    if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.value_, b.value_);
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
  }
  friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.value_, b) == 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, long b) {
    if (mpfr_nan_p(a.value_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp_si(a.value_, b);
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
  }

  friend std::ostream& operator<<(std::ostream& os, const BigReal& x) { return os << x.to_string(); }

 private:
  mpfr_rnd_t rnd() const { return to_mpfr(rounding_); }

  template <class Op>
  static BigReal binary(const BigReal& a, const BigReal& b, Op op) {
    BigReal out(std::max(a.precision(), b.precision()), a.rounding_);
    op(out.value_, a.value_, b.value_, a.rnd());
    return out;
  }

  mpfr_t value_;
  Rounding rounding_ = Rounding::nearest;
};

namespace detail {
template <class Fn>
BigReal unary(const BigReal& x, Fn fn) {
  BigReal out(x.precision(), x.rounding());
  fn(out.get(), x.get(), to_mpfr(x.rounding()));
  return out;
}
}  // namespace detail

inline BigReal sqrt(const BigReal& x) { return detail::unary(x, [](auto r, auto a, auto m) { mpfr_sqrt(r, a, m); }); }
inline BigReal exp(const BigReal& x) { return detail::unary(x, [](auto r, auto a, auto m) { mpfr_exp(r, a, m); }); }
inline BigReal log(const BigReal& x) { return detail::unary(x, [](auto r, auto a, auto m) { mpfr_log(r, a, m); }); }
inline BigReal abs(const BigReal& x) { return detail::unary(x, [](auto r, auto a, auto m) { mpfr_abs(r, a, m); }); }
inline BigReal cos(const BigReal& x) { return detail::unary(x, [](auto r, auto a, auto m) { mpfr_cos(r, a, m); }); }
inline BigReal sin(const BigReal& x) { return detail::unary(x, [](auto r, auto a, auto m) { mpfr_sin(r, a, m); }); }

inline BigReal pow(const BigReal& x, const BigReal& y) {
  BigReal out(std::max(x.precision(), y.precision()), x.rounding());
  mpfr_pow(out.get(), x.get(), y.get(), to_mpfr(x.rounding()));
  return out;
}

inline BigReal pow(const BigReal& x, long n) {
  BigReal out(x.precision(), x.rounding());
  mpfr_pow_si(out.get(), x.get(), n, to_mpfr(x.rounding()));
  return out;
}

inline BigReal pi(Precision prec) {
  BigReal out(prec);
  mpfr_const_pi(out.get(), MPFR_RNDN);
  return out;
}

inline BigReal ldexp(const BigReal& x, long e) {
  BigReal out(x.precision(), x.rounding());
  mpfr_mul_2si(out.get(), x.get(), e, to_mpfr(x.rounding()));
  return out;
}

/// 2^(1 - prec): the relative error bound of a correctly rounded conversion.
inline BigReal unit_roundoff(Precision prec) { return ldexp(BigReal(1L, prec), 1 - static_cast<long>(prec)); }

inline BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }
inline BigReal min(const BigReal& a, const BigReal& b) { return b < a ? b : a; }

/// Correctly rounded conversion; relative error below 2^(1 - p_bits).
inline BigReal rational_to_real(const ExactRational& x, Precision p_bits,
                                Rounding rounding = Rounding::nearest) {
  if (p_bits < kMinimumConversionPrecision)
    throw Error(ErrorCode::precision_too_low,
                "requested " + std::to_string(p_bits) + " bits, need at least 64");
  return BigReal(x, p_bits, rounding);
}

/// ln of an exact positive rational, computed as ln(num) - ln(den) so that
/// huge numerators and denominators never overflow the exponent range.
inline BigReal log_rational(const ExactRational& q, Precision prec) {
  if (q <= 0) throw Error(ErrorCode::nonpositive_entry, "logarithm of a non-positive rational");
  const Precision work = prec + 32;
  BigReal num(q.get_num(), work);
  BigReal den(q.get_den(), work);
  return (log(num) - log(den)).with_precision(prec);
}

}  // namespace gwasym
