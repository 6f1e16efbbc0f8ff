#pragma once

#include <utility>

#include "gwasym/error.hpp"
#include "gwasym/numerics/big_real.hpp"

namespace gwasym {

enum class Parity { real, imaginary };

/// Coefficient of z^(index/2) in a Puiseux expansion whose coefficients
/// alternate between the real line (even index) and the imaginary axis (odd
/// index). The value is `signed_part * i^(index mod 2)`; no general complex
/// arithmetic is ever performed.
class SignedHalfPowerCoeff {
 public:
  SignedHalfPowerCoeff(long index, BigReal signed_part)
      : index_(index), value_(std::move(signed_part)) {}

  long index() const { return index_; }
  Parity parity() const { return parity_of(index_); }
  /// Real factor multiplying i^(index mod 2).
  const BigReal& signed_part() const { return value_; }
  BigReal magnitude() const { return abs(value_); }
  int sign() const { return value_.sign(); }

  static constexpr Parity parity_of(long index) { return index % 2 == 0 ? Parity::real : Parity::imaginary; }

 private:
  long index_;
  BigReal value_;
};

/// Real factor of (r1 i^p1)(r2 i^p2), i.e. r1 r2 with i*i = -1 folded in.
inline BigReal parity_product(const BigReal& r1, Parity p1, const BigReal& r2, Parity p2) {
  BigReal out = r1 * r2;
  if (p1 == Parity::imaginary && p2 == Parity::imaginary) out = -out;
  return out;
}

inline Parity parity_sum(Parity a, Parity b) {
  return (a == Parity::imaginary) != (b == Parity::imaginary) ? Parity::imaginary : Parity::real;
}

/// Real factor of (r1 i^p1) / (r2 i^p2).
inline BigReal parity_quotient(const BigReal& r1, Parity p1, const BigReal& r2, Parity p2) {
  BigReal out = r1 / r2;
  // (i)/(1) = i; (1)/(i) = -i; (i)/(i) = 1.
  if (p1 == Parity::real && p2 == Parity::imaginary) out = -out;
  return out;
}

}  // namespace gwasym
