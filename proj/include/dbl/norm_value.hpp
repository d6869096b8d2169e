#pragma once

#include <compare>
#include <string>

#include <gmpxx.h>

namespace dbl {

/// A nonnegative real of the form q^e with q, e rational, or zero.
///
/// Values are kept canonical: the base is never a perfect power (its largest
/// integral root is pulled into the exponent), and base 1 or exponent 0 both
/// collapse to the value one. Canonical form makes structural equality agree
/// with numeric equality, which the spectrum code relies on when it reads an
/// exponent back off an evaluated seminorm.
class NormValue {
 public:
  /// The value zero.
  NormValue() = default;

  static NormValue zero() { return NormValue(); }
  static NormValue one();
  static NormValue rational(const mpq_class& q);
  static NormValue rational(long q) { return rational(mpq_class(q)); }
  /// q^e; q must be positive and e nonnegative.
  static NormValue power(const mpq_class& base, const mpq_class& exponent);

  bool is_zero() const noexcept { return zero_; }
  bool is_one() const noexcept { return !zero_ && exponent_ == 0; }
  /// True when the value is a rational number (zero, or integral exponent).
  bool is_rational() const;
  /// The value as a rational; throws UnsupportedValue when irrational.
  mpq_class as_rational() const;

  const mpq_class& base() const noexcept { return base_; }
  const mpq_class& exponent() const noexcept { return exponent_; }

  double to_double() const;
  std::string to_string() const;
  /// Inverse of to_string: "0", "p/q", or "p/q^(a/b)".
  static NormValue parse(const std::string& text);

  friend NormValue operator*(const NormValue& a, const NormValue& b);
  /// Exact sum; both operands must be rational.
  friend NormValue operator+(const NormValue& a, const NormValue& b);

  friend std::strong_ordering operator<=>(const NormValue& a, const NormValue& b);
  friend bool operator==(const NormValue& a, const NormValue& b);

 private:
  void canonicalize();

  bool zero_ = true;
  mpq_class base_ = 1;
  mpq_class exponent_ = 0;
};

NormValue max(const NormValue& a, const NormValue& b);

/// Exact q^k for a nonnegative integer k.
mpq_class pow_q(const mpq_class& q, unsigned long k);

}  // namespace dbl
