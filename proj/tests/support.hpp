#pragma once

#include <random>
#include <vector>

#include "schmidt/arith.hpp"
#include "schmidt/projgeom.hpp"

namespace schmidt::testing {

/// Uniform integer in [-bound, bound] \ {0} when nonzero is set.
inline Integer random_integer(std::mt19937_64& rng, const Integer& bound, bool nonzero = false) {
  gmp_randclass gen(gmp_randinit_default);
  gen.seed(static_cast<unsigned long>(rng()));
  for (;;) {
    Integer z = gen.get_z_range(2 * bound + 1) - bound;
    if (!nonzero || z != 0) return z;
  }
}

inline Rational random_rational(std::mt19937_64& rng, const Integer& bound) {
  Integer num = random_integer(rng, bound, true);
  Integer den = random_integer(rng, bound, true);
  if (den < 0) den = -den;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Dense random form; every coefficient drawn from [-bound, bound].
inline HomForm random_form(std::mt19937_64& rng, std::size_t n, unsigned d, const Integer& bound) {
  for (;;) {
    HomForm::Coefficients c;
    for (const auto& I : enumerate_Td(n, d)) c[I] = random_integer(rng, bound);
    if (auto f = HomForm::make(n, d, c)) return *f;
  }
}

inline std::vector<Rational> random_point(std::mt19937_64& rng, std::size_t n, const Integer& bound) {
  for (;;) {
    std::vector<Rational> x;
    bool nonzero = false;
    for (std::size_t i = 0; i <= n; ++i) {
      x.push_back(Rational(random_integer(rng, bound)));
      nonzero = nonzero || x.back() != 0;
    }
    if (nonzero) return x;
  }
}

inline Rational q(const char* text) { return parse_rational(text); }

}  // namespace schmidt::testing
