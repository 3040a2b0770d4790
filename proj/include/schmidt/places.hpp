#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <set>
#include <string>

#include "schmidt/arith.hpp"

namespace schmidt {

/// A place of Q: the real absolute value or the p-adic one for a prime p.
class Place {
 public:
  static Place archimedean() { return Place(); }
  /// Throws DomainError unless p is prime.
  static Place finite(const Integer& p);
  static Place finite(unsigned long p) { return finite(Integer(p)); }

  bool is_archimedean() const { return prime_ == 0; }
  /// The prime of a finite place; 0 for the archimedean place.
  const Integer& prime() const { return prime_; }

  /// "inf" or the decimal prime.
  std::string to_string() const;

  friend bool operator==(const Place& a, const Place& b) { return a.prime_ == b.prime_; }
  // Archimedean first, then finite places by prime.
  friend std::strong_ordering operator<=>(const Place& a, const Place& b) {
    const int c = cmp(a.prime_, b.prime_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Place() = default;
  Integer prime_ = 0;
};

struct PlaceHash {
  std::size_t operator()(const Place& v) const;
};

/// Exact strictly positive rational (norms, Weil multipliers).
class ExactPositive {
 public:
  /// Throws DomainError if value <= 0.
  explicit ExactPositive(Rational value);
  static ExactPositive one() { return ExactPositive(Rational(1)); }

  const Rational& value() const { return value_; }

  ExactPositive operator*(const ExactPositive& o) const { return ExactPositive(value_ * o.value_); }
  ExactPositive operator/(const ExactPositive& o) const { return ExactPositive(value_ / o.value_); }
  ExactPositive pow(unsigned long e) const { return ExactPositive(schmidt::pow(value_, e)); }

  friend bool operator==(const ExactPositive& a, const ExactPositive& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const ExactPositive& a, const ExactPositive& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Rational value_;
};

/// h = log H, kept as the exact kernel H >= 1.
class HeightKernel {
 public:
  explicit HeightKernel(Rational kernel);
  const Rational& kernel() const { return kernel_; }
  HeightKernel operator*(const HeightKernel& o) const { return HeightKernel(kernel_ * o.kernel_); }
  friend bool operator==(const HeightKernel& a, const HeightKernel& b) { return a.kernel_ == b.kernel_; }

 private:
  Rational kernel_;
};

/// ||q||_v: |q| at the real place, p^(-ord_p q) at p.
ExactPositive local_norm(const Place& v, const Rational& q);

/// Places where ||q||_v != 1.
std::set<Place> support(const Rational& q);

/// Product of ||q||_v over support(q). Always 1.
Rational product_formula_check(const Rational& q);

/// max(|a|, |b|) for q = a/b in lowest terms.
HeightKernel height_kernel_scalar(const Rational& q);

/// prod_v max(1, ||q||_v) over support(q); the place-sum definition of h(q).
HeightKernel height_kernel_scalar_by_places(const Rational& q);

}  // namespace schmidt
