#pragma once

#include <mpfr.h>

#include <string>

#include "schmidt/arith.hpp"

namespace schmidt {

/// Owning MPFR value for the reporting layer. Exact quantities stay rational
/// everywhere else; only logs and their ratios pass through here.
/// All operations round to nearest.
class BigFloat {
 public:
  explicit BigFloat(unsigned precision_bits = 128);
  BigFloat(const Rational& q, unsigned precision_bits);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  /// log(q) for q > 0.
  static BigFloat log(const Rational& q, unsigned precision_bits);

  unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(value_)); }

  BigFloat operator+(const BigFloat& o) const;
  BigFloat operator-(const BigFloat& o) const;
  BigFloat operator*(const BigFloat& o) const;
  BigFloat operator/(const BigFloat& o) const;
  BigFloat abs() const;

  bool operator<(const BigFloat& o) const { return mpfr_less_p(value_, o.value_) != 0; }
  bool operator>(const BigFloat& o) const { return mpfr_greater_p(value_, o.value_) != 0; }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Decimal with `digits` significant digits, trailing zeros kept.
  std::string to_string(int digits = 12) const;

  mpfr_srcptr get() const { return value_; }

 private:
  mpfr_t value_;
};

}  // namespace schmidt
