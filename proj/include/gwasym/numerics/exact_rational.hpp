#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gwasym/error.hpp"

namespace gwasym {

/// Arbitrary-precision signed rational, always canonical (gcd 1, den > 0).
/// gmpxx expression templates canonicalize every arithmetic result; the
/// factories below canonicalize everything built from parts or text.
using ExactRational = mpq_class;
using BigInt = mpz_class;

inline ExactRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(ErrorCode::domain_error, "zero denominator");
  ExactRational q(num, den);
  q.canonicalize();
  return q;
}

inline ExactRational make_rational(long num, long den = 1) {
  return make_rational(BigInt(num), BigInt(den));
}

inline bool is_canonical(const ExactRational& q) {
  if (q.get_den() <= 0) return false;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return g == 1;
}

/// Parses `num/den` or a bare integer, both in decimal.
inline ExactRational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return ExactRational(BigInt(s, 10));
    BigInt num(s.substr(0, slash), 10);
    BigInt den(s.substr(slash + 1), 10);
    if (den == 0) throw Error(ErrorCode::parse_error, "zero denominator in '" + s + "'");
    return make_rational(num, den);
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::parse_error, "not a rational: '" + s + "'");
  }
}

/// Always `num/den`, including integers ("3/1") and zero ("0/1").
inline std::string format_rational(const ExactRational& q) {
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

inline ExactRational pow(const ExactRational& base, unsigned long exponent) {
  ExactRational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  // Powers of a canonical fraction are canonical; the sign lives in num.
  return out;
}

inline bool is_integer(const ExactRational& q) { return q.get_den() == 1; }

/// Memoized n! for 0 <= n <= max.
class FactorialTable {
 public:
  explicit FactorialTable(std::size_t max = 0) { extend(max); }

  void extend(std::size_t max) {
    if (values_.empty()) values_.emplace_back(1);
    while (values_.size() <= max) values_.push_back(values_.back() * BigInt(values_.size()));
  }

  const BigInt& operator()(std::size_t n) const {
    if (n >= values_.size()) throw Error(ErrorCode::domain_error, "factorial table too short");
    return values_[n];
  }

  std::size_t max() const { return values_.size() - 1; }

 private:
  std::vector<BigInt> values_;
};

/// C(n, k) with the convention C(n, k) = 0 outside 0 <= k <= n.
inline BigInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

/// Pascal triangle rows 0..max, for hot loops that need many small binomials.
class BinomialTable {
 public:
  explicit BinomialTable(long max) : max_(max) {
    rows_.resize(static_cast<std::size_t>(max + 1));
    for (long n = 0; n <= max; ++n) {
      auto& row = rows_[static_cast<std::size_t>(n)];
      row.resize(static_cast<std::size_t>(n + 1));
      row[0] = 1;
      row[static_cast<std::size_t>(n)] = 1;
      for (long k = 1; k < n; ++k) {
        const auto& prev = rows_[static_cast<std::size_t>(n - 1)];
        row[static_cast<std::size_t>(k)] = prev[static_cast<std::size_t>(k - 1)] + prev[static_cast<std::size_t>(k)];
      }
    }
  }

  const BigInt& operator()(long n, long k) const {
    static const BigInt zero = 0;
    if (n < 0 || k < 0 || k > n) return zero;
    if (n > max_) throw Error(ErrorCode::domain_error, "binomial table too short");
    return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
  }

 private:
  long max_;
  std::vector<std::vector<BigInt>> rows_;
};

}  // namespace gwasym
