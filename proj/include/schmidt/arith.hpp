#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace schmidt {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", "p" or "-p/q" into a canonical rational. Throws DomainError.
Rational parse_rational(const std::string& text);

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

Integer binomial(unsigned long top, unsigned long bottom);
Integer lcm(const Integer& a, const Integer& b);
Rational pow(const Rational& base, unsigned long exponent);

/// Exponent of p in |z|; z must be nonzero.
unsigned long valuation(const Integer& z, const Integer& p);

bool is_prime(const Integer& z);

/// Distinct prime divisors of |z| in ascending order; z must be nonzero.
std::vector<Integer> prime_divisors(const Integer& z);

}  // namespace schmidt
