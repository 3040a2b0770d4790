#include "schmidt/arith.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "schmidt/errors.hpp"

namespace schmidt {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw DomainError("empty rational literal");
  const auto slash = text.find('/');
  auto check_digits = [&](const std::string& part) {
    std::size_t start = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (start == part.size()) throw DomainError("malformed rational literal '" + text + "'");
    for (std::size_t i = start; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') throw DomainError("malformed rational literal '" + text + "'");
    }
  };
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  check_digits(num);
  check_digits(den);
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  Rational q{Integer(num), Integer(den)};
  if (q.get_den() == 0) throw DomainError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer binomial(unsigned long top, unsigned long bottom) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), top, bottom);
  return r;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Rational pow(const Rational& base, unsigned long exponent) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  return Rational(num, den);
}

unsigned long valuation(const Integer& z, const Integer& p) {
  if (z == 0) throw DomainError("valuation of zero");
  Integer rest = abs(z);
  return mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
}

bool is_prime(const Integer& z) {
  if (z < 2) return false;
  return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 e, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Brent's variant of Pollard rho; n is odd composite.
u64 rho_u64(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, q = 1, g = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      }
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_u64(u64 n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.emplace_back(static_cast<unsigned long>(n));
    return;
  }
  const u64 f = rho_u64(n);
  factor_u64(f, out);
  factor_u64(n / f, out);
}

// Brent's variant over GMP; differences are batched into one gcd per block.
// Works on raw mpz_t with preallocated limbs to keep the inner loop allocation-free.
Integer rho_big(const Integer& n) {
  const mpz_srcptr N = n.get_mpz_t();
  const mp_bitcnt_t bits = 2 * mpz_sizeinbase(N, 2) + 64;
  mpz_t x, y, ys, q, g, t;
  for (mpz_ptr z : {x, y, ys, q, g, t}) mpz_init2(z, bits);
  auto step = [&](mpz_ptr v, unsigned long c) {
    mpz_mul(t, v, v);
    mpz_add_ui(t, t, c);
    mpz_tdiv_r(v, t, N);
  };
  Integer factor;
  for (unsigned long c = 1;; ++c) {
    mpz_set_ui(y, 2);
    mpz_set_ui(q, 1);
    mpz_set_ui(g, 1);
    const unsigned long m = 128;
    unsigned long r = 1;
    do {
      mpz_set(x, y);
      for (unsigned long i = 0; i < r; ++i) step(y, c);
      unsigned long k = 0;
      while (k < r && mpz_cmp_ui(g, 1) == 0) {
        mpz_set(ys, y);
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          step(y, c);
          mpz_sub(t, x, y);
          mpz_mul(t, q, t);
          mpz_mod(q, t, N);
        }
        mpz_gcd(g, q, N);
        k += m;
      }
      r <<= 1;
    } while (mpz_cmp_ui(g, 1) == 0);
    if (mpz_cmp(g, N) == 0) {
      do {
        step(ys, c);
        mpz_sub(t, x, ys);
        mpz_gcd(g, t, N);
      } while (mpz_cmp_ui(g, 1) == 0);
    }
    if (mpz_cmp(g, N) != 0) {
      factor = Integer(g);
      break;
    }
  }
  for (mpz_ptr z : {x, y, ys, q, g, t}) mpz_clear(z);
  return factor;
}

u128 to_u128(const Integer& z) {
  const Integer hi = z >> 64;
  const Integer lo = z - (hi << 64);
  return (static_cast<u128>(hi.get_ui()) << 64) | lo.get_ui();
}

Integer from_u128(u128 v) {
  Integer z(static_cast<unsigned long>(v >> 64));
  z <<= 64;
  z += static_cast<unsigned long>(v);
  return z;
}

// Montgomery arithmetic modulo an odd n < 2^127, R = 2^128.
class Montgomery128 {
 public:
  explicit Montgomery128(u128 n) : n_(n) {
    u128 inv = n;  // correct to 3 bits; each step doubles
    for (int i = 0; i < 7; ++i) inv *= 2 - n * inv;
    neg_inv_ = -inv;
  }

  u128 mul(u128 a, u128 b) const {
    u128 hi, lo;
    wide_mul(a, b, hi, lo);
    const u128 m = lo * neg_inv_;
    u128 mhi, mlo;
    wide_mul(m, n_, mhi, mlo);
    u128 t = hi + mhi + (lo != 0 ? 1 : 0);
    return t >= n_ ? t - n_ : t;
  }

  u128 add(u128 a, u128 b) const {
    const u128 t = a + b;
    return t >= n_ ? t - n_ : t;
  }

 private:
  static void wide_mul(u128 a, u128 b, u128& hi, u128& lo) {
    const u128 mask = ~static_cast<u64>(0);
    const u128 a0 = a & mask, a1 = a >> 64, b0 = b & mask, b1 = b >> 64;
    const u128 p00 = a0 * b0, p01 = a0 * b1, p10 = a1 * b0, p11 = a1 * b1;
    const u128 mid = (p00 >> 64) + (p01 & mask) + (p10 & mask);
    lo = (mid << 64) | (p00 & mask);
    hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
  }

  u128 n_;
  u128 neg_inv_;
};

u128 gcd_u128(u128 a, u128 b) {
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Brent rho in the Montgomery domain; the factor R is a unit so gcds are unaffected.
u128 rho_u128(u128 n) {
  const Montgomery128 mont(n);
  for (u128 c = 1;; ++c) {
    u128 y = 2, x = 2, q = 1, g = 1, ys = 2;
    const u64 m = 256;
    u64 r = 1;
    auto f = [&](u128 v) { return mont.add(mont.mul(v, v), c); };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mont.mul(q, x > y ? x - y : y - x);
        }
        g = gcd_u128(n, q);
        k += m;
      }
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd_u128(n, x > ys ? x - ys : ys - x);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_big(const Integer& n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (mpz_fits_ulong_p(n.get_mpz_t()) && sizeof(unsigned long) == 8) {
    factor_u64(n.get_ui(), out);
    return;
  }
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  if (mpz_sizeinbase(n.get_mpz_t(), 2) < 127 && mpz_odd_p(n.get_mpz_t())) {
    const Integer f = from_u128(rho_u128(to_u128(n)));
    factor_big(f, out);
    factor_big(n / f, out);
    return;
  }
  const Integer f = rho_big(n);
  factor_big(f, out);
  factor_big(n / f, out);
}

}  // namespace

std::vector<Integer> prime_divisors(const Integer& z) {
  if (z == 0) throw DomainError("prime divisors of zero");
  Integer rest = abs(z);
  std::vector<Integer> primes;
  static const std::vector<unsigned long> small = [] {
    std::vector<unsigned long> out;
    std::vector<bool> composite(1000, false);
    for (unsigned long p = 2; p < 1000; ++p) {
      if (composite[p]) continue;
      out.push_back(p);
      for (unsigned long k = p * p; k < 1000; k += p) composite[k] = true;
    }
    return out;
  }();
  for (unsigned long p : small) {
    if (rest == 1) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      primes.emplace_back(p);
      Integer pp(p);
      mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), pp.get_mpz_t());
    }
  }
  std::vector<Integer> large;
  factor_big(rest, large);
  primes.insert(primes.end(), large.begin(), large.end());
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

}  // namespace schmidt
