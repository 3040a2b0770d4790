#include "schmidt/report.hpp"

#include <cstdio>
#include <vector>

#include "schmidt/errors.hpp"

namespace schmidt {

BigFloat::BigFloat(unsigned precision_bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(precision_bits));
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const Rational& q, unsigned precision_bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(precision_bits));
  mpfr_set_q(value_, q.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(value_, mpfr_get_prec(o.value_));
  mpfr_set(value_, o.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(value_, mpfr_get_prec(o.value_));
  mpfr_swap(value_, o.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(value_, mpfr_get_prec(o.value_));
    mpfr_set(value_, o.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  mpfr_swap(value_, o.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::log(const Rational& q, unsigned precision_bits) {
  if (q <= 0) throw DomainError("log of a non-positive value");
  // log(num) - log(den) with guard bits, then rounded once to the target precision
  const auto work = static_cast<mpfr_prec_t>(precision_bits + 32);
  mpfr_t num, den;
  mpfr_inits2(work, num, den, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_z(num, q.get_num_mpz_t(), MPFR_RNDN);
  mpfr_set_z(den, q.get_den_mpz_t(), MPFR_RNDN);
  mpfr_log(num, num, MPFR_RNDN);
  mpfr_log(den, den, MPFR_RNDN);
  BigFloat out(precision_bits);
  mpfr_sub(out.value_, num, den, MPFR_RNDN);
  mpfr_clears(num, den, static_cast<mpfr_ptr>(nullptr));
  return out;
}

BigFloat BigFloat::operator+(const BigFloat& o) const {
  BigFloat r(precision());
  mpfr_add(r.value_, value_, o.value_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::operator-(const BigFloat& o) const {
  BigFloat r(precision());
  mpfr_sub(r.value_, value_, o.value_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::operator*(const BigFloat& o) const {
  BigFloat r(precision());
  mpfr_mul(r.value_, value_, o.value_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::operator/(const BigFloat& o) const {
  BigFloat r(precision());
  mpfr_div(r.value_, value_, o.value_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::abs() const {
  BigFloat r(precision());
  mpfr_abs(r.value_, value_, MPFR_RNDN);
  return r;
}

std::string BigFloat::to_string(int digits) const {
  if (mpfr_zero_p(value_)) return "0";
  const int size = mpfr_snprintf(nullptr, 0, "%#.*Rg", digits, value_);
  std::vector<char> buf(static_cast<std::size_t>(size) + 1);
  mpfr_snprintf(buf.data(), buf.size(), "%#.*Rg", digits, value_);
  return std::string(buf.data());
}

}  // namespace schmidt
