#include "schmidt/places.hpp"

#include <algorithm>
#include <utility>

#include "schmidt/errors.hpp"

namespace schmidt {

Place Place::finite(const Integer& p) {
  if (!is_prime(p)) throw DomainError("finite place requires a prime, got " + p.get_str());
  Place v;
  v.prime_ = p;
  return v;
}

std::string Place::to_string() const { return is_archimedean() ? "inf" : prime_.get_str(); }

std::size_t PlaceHash::operator()(const Place& v) const {
  return std::hash<std::string>{}(v.to_string());
}

ExactPositive::ExactPositive(Rational value) : value_(std::move(value)) {
  value_.canonicalize();
  if (sgn(value_) <= 0) throw DomainError("ExactPositive requires a positive value");
}

HeightKernel::HeightKernel(Rational kernel) : kernel_(std::move(kernel)) {
  kernel_.canonicalize();
  if (kernel_ < 1) throw DomainError("height kernel must be >= 1");
}

ExactPositive local_norm(const Place& v, const Rational& q) {
  if (q == 0) throw DomainError("local norm of zero");
  if (v.is_archimedean()) return ExactPositive(abs(q));
  const Integer& p = v.prime();
  const unsigned long up = mpz_divisible_p(q.get_num_mpz_t(), p.get_mpz_t()) ? valuation(q.get_num(), p) : 0;
  const unsigned long down = mpz_divisible_p(q.get_den_mpz_t(), p.get_mpz_t()) ? valuation(q.get_den(), p) : 0;
  Integer scale;
  if (up >= down) {
    mpz_pow_ui(scale.get_mpz_t(), p.get_mpz_t(), up - down);
    return ExactPositive(Rational(Integer(1), scale));
  }
  mpz_pow_ui(scale.get_mpz_t(), p.get_mpz_t(), down - up);
  return ExactPositive(Rational(scale));
}

std::set<Place> support(const Rational& q) {
  if (q == 0) throw DomainError("support of zero");
  std::set<Place> places;
  if (abs(q) != 1) places.insert(Place::archimedean());
  for (const auto& p : prime_divisors(q.get_num())) places.insert(Place::finite(p));
  for (const auto& p : prime_divisors(q.get_den())) places.insert(Place::finite(p));
  return places;
}

Rational product_formula_check(const Rational& q) {
  Rational product = 1;
  for (const auto& v : support(q)) product *= local_norm(v, q).value();
  return product;
}

HeightKernel height_kernel_scalar(const Rational& q) {
  if (q == 0) throw DomainError("height of zero");
  const Integer num = abs(q.get_num());
  return HeightKernel(Rational(num > q.get_den() ? num : q.get_den()));
}

HeightKernel height_kernel_scalar_by_places(const Rational& q) {
  Rational product = 1;
  for (const auto& v : support(q)) {
    const Rational norm = local_norm(v, q).value();
    if (norm > 1) product *= norm;
  }
  return HeightKernel(product);
}

}  // namespace schmidt
