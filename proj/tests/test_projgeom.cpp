#include <doctest.h>

#include <algorithm>
#include <random>

#include "schmidt/errors.hpp"
#include "schmidt/projgeom.hpp"
#include "support.hpp"

using namespace schmidt;
using schmidt::testing::q;

namespace {

HomForm F(const std::string& text, std::size_t n) { return parse_form(text, n); }

ProjectivePoint P(std::vector<Rational> raw) { return ProjectivePoint::from_raw(std::span<const Rational>(raw)); }

// max |c| of the coprime integer coefficient vector, computed without the library.
Integer naive_form_height(const HomForm& Q) {
  Integer den = 1;
  for (const auto& [I, c] : Q.coefficients()) den = lcm(den, c.get_den());
  Integer g = 0;
  std::vector<Integer> ints;
  for (const auto& [I, c] : Q.coefficients()) {
    ints.push_back(c.get_num() * (den / c.get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints.back().get_mpz_t());
  }
  Integer best = 0;
  for (const auto& z : ints) best = std::max<Integer>(best, abs(z) / g);
  return best;
}

}  // namespace

TEST_SUITE("projgeom") {
  TEST_CASE("enumerate_Td examples and length") {
    CHECK(enumerate_Td(2, 2).size() == 6);
    CHECK(enumerate_Td(3, 1).size() == 4);
    const auto t = enumerate_Td(1, 3);
    REQUIRE(t.size() == 4);
    CHECK(t[0] == MultiIndex{3, 0});
    CHECK(t[1] == MultiIndex{2, 1});
    CHECK(t[2] == MultiIndex{1, 2});
    CHECK(t[3] == MultiIndex{0, 3});
    for (std::size_t n = 0; n <= 4; ++n) {
      for (unsigned d = 0; d <= 6; ++d) {
        const auto all = enumerate_Td(n, d);
        CHECK(Integer(static_cast<unsigned long>(all.size())) == binomial(d + n, n));
        CHECK(std::is_sorted(all.begin(), all.end(), GradedLexLess{}));
        CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
        for (const auto& I : all) CHECK(I.degree() == d);
      }
    }
  }

  TEST_CASE("MonomialBasis index lookup") {
    const MonomialBasis b(2, 2);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(b.index_of(b.monomials()[i]) == i);
    CHECK_THROWS_AS(b.index_of(MultiIndex{1, 0, 0}), DomainError);
  }

  TEST_CASE("normalize_point examples") {
    CHECK(P({4, 6, 10}).coords() == std::vector<Integer>{2, 3, 5});
    CHECK(P({0, -3, 0}).coords() == std::vector<Integer>{0, 1, 0});
    CHECK(P({q("1/2"), q("1/3")}).coords() == std::vector<Integer>{3, 2});
    CHECK_THROWS_AS(P({0, 0}), DomainError);
    CHECK(P({-2, 4}).coords() == std::vector<Integer>{1, -2});
  }

  TEST_CASE("evaluate examples") {
    CHECK(evaluate(F("x0^2 - x1*x2", 2), P({1, 2, 3})) == -5);
    CHECK(evaluate(F("x0*x1", 1), P({2, 3})) == 6);
    CHECK(evaluate(F("x0 + x1", 1), P({1, -1})) == 0);
    CHECK_THROWS_AS(evaluate(F("x0 + x1", 1), P({1, 2, 3})), DomainError);
  }

  TEST_CASE("parse_form round trip") {
    const auto Q = F("x0^2 - x1*x2 + 1/2*x0*x1", 2);
    CHECK(Q.degree() == 2);
    CHECK(Q.coefficient(MultiIndex{1, 1, 0}) == q("1/2"));
    CHECK(F(Q.to_string(), 2) == Q);
    CHECK_THROWS_AS(F("x0^2 + x1", 1), DomainError);
    CHECK_THROWS_AS(F("x0 - x0", 1), DomainError);
    CHECK_THROWS_AS(F("x3", 1), DomainError);
  }

  TEST_CASE("norms_and_height examples") {
    const auto a = norms_and_height(F("6*x0^2 + 1/2*x1^2", 1));
    CHECK(a.norms.size() == 2);
    CHECK(a.norms.at(Place::archimedean()).value() == 6);
    CHECK(a.norms.at(Place::finite(2)).value() == 2);
    CHECK(a.norms.count(Place::finite(3)) == 0);
    CHECK(a.height.kernel() == 12);
    CHECK(form_height_primitive(F("6*x0^2 + 1/2*x1^2", 1)).kernel() == 12);
    CHECK(norms_and_height(F("x0^2 - x1*x2", 2)).height.kernel() == 1);
    CHECK(norms_and_height(F("2/3*x0", 1)).height.kernel() == 1);
  }

  TEST_CASE("place route and coprime route agree on H(Q)") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 1 + rng() % 3;
      const unsigned d = 1 + static_cast<unsigned>(rng() % 3);
      HomForm Q = schmidt::testing::random_form(rng, n, d, Integer(50));
      Q = Q.scaled(schmidt::testing::random_rational(rng, Integer(1000)));
      const auto h = norms_and_height(Q).height.kernel();
      CHECK(h == form_height_primitive(Q).kernel());
      CHECK(h == naive_form_height(Q));
    }
  }

  TEST_CASE("weil_multiplier examples") {
    const auto Q = F("x0*x1", 1);
    const auto x = P({2, 3});
    CHECK(weil_multiplier(Q, Place::archimedean(), x).value() == q("3/2"));
    CHECK(weil_multiplier(Q, Place::finite(2), x).value() == 2);
    CHECK(weil_multiplier(Q, Place::finite(5), x).value() == 1);
    CHECK_THROWS_WITH_AS(weil_multiplier(F("x0 + x1", 1), Place::archimedean(), P({1, -1})), "point on hypersurface",
                         DomainError);
  }

  TEST_CASE("first_main_identity examples") {
    CHECK(first_main_identity(F("x0*x1", 1), P({2, 3})) == 9);
    CHECK(first_main_identity(F("x0", 1), P({1, 1})) == 1);
    CHECK(first_main_identity(F("6*x0^2 + 1/2*x1^2", 1), P({1, 2})) == 48);
  }

  TEST_CASE("Weil multiplier invariants") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 80; ++trial) {
      const std::size_t n = 1 + rng() % 3;
      const unsigned d = 1 + static_cast<unsigned>(rng() % 3);
      const HomForm Q = schmidt::testing::random_form(rng, n, d, Integer(30));
      auto raw = schmidt::testing::random_point(rng, n, Integer(40));
      if (Q.evaluate(raw) == 0) continue;
      const auto x = ProjectivePoint::from_raw(std::span<const Rational>(raw));

      // H(x)^d H(Q) from first principles: max |x_i| of the coprime tuple and max |c| of Q
      Integer Hx = 0;
      for (const auto& c : x.coords()) Hx = std::max<Integer>(Hx, abs(c));
      Integer Hxd;
      mpz_pow_ui(Hxd.get_mpz_t(), Hx.get_mpz_t(), d);
      CHECK(first_main_identity(Q, x) == Rational(Hxd * naive_form_height(Q)));

      const Rational s = schmidt::testing::random_rational(rng, Integer(999));
      std::vector<Rational> scaled_x;
      for (const auto& c : raw) scaled_x.push_back(c * s);
      const HomForm scaled_Q = Q.scaled(schmidt::testing::random_rational(rng, Integer(999)));
      const Rational bound = Rational(1, static_cast<unsigned long>(enumerate_Td(n, d).size()));
      for (const auto& v : contributing_places(Q, x)) {
        const auto m = weil_multiplier(Q, v, std::span<const Rational>(raw));
        CHECK(m == weil_multiplier(Q, v, std::span<const Rational>(scaled_x)));
        CHECK(m == weil_multiplier(scaled_Q, v, std::span<const Rational>(raw)));
        if (v.is_archimedean()) CHECK(m.value() >= bound);
        else CHECK(m.value() >= 1);
      }
    }
  }

  TEST_CASE("tilde_normalize examples") {
    const std::vector<HomForm> a{F("2*x0 + x1", 1), F("3*x0^2 + x1^2", 1)};
    const auto ta = tilde_normalize(a);
    CHECK(ta[0] == F("x0^2 + x0*x1 + 1/4*x1^2", 1));
    CHECK(ta[1] == F("x0^2 + 1/3*x1^2", 1));

    const std::vector<HomForm> b{F("x0^2 - x1*x2", 2)};
    CHECK(tilde_normalize(b)[0] == b[0]);

    const std::vector<HomForm> c{F("x0", 1), F("x1^2 + x0^2", 1)};
    const auto tc = tilde_normalize(c);
    CHECK(tc[0] == F("x0^2", 1));
    CHECK(tc[1] == F("x0^2 + x1^2", 1));

    const std::vector<HomForm> bad{F("x1", 1)};
    CHECK_THROWS_WITH_AS(tilde_normalize(bad), doctest::Contains("coordinate change required"), DomainError);
  }

  TEST_CASE("tilde_normalize preserves finite-place Weil functions exactly") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 1 + rng() % 2;
      std::vector<HomForm> fam{schmidt::testing::random_form(rng, n, 1, Integer(20)),
                               schmidt::testing::random_form(rng, n, 2, Integer(20))};
      std::vector<Rational> lead;
      bool ok = true;
      for (const auto& Q : fam) {
        std::vector<unsigned> e(n + 1, 0);
        e[0] = Q.degree();
        lead.push_back(Q.coefficient(MultiIndex(e)));
        ok = ok && lead.back() != 0;
      }
      if (!ok) continue;
      const auto tilde = tilde_normalize(fam);
      const auto raw = schmidt::testing::random_point(rng, n, Integer(30));
      const auto x = ProjectivePoint::from_raw(std::span<const Rational>(raw));
      for (std::size_t i = 0; i < fam.size(); ++i) {
        if (fam[i].evaluate(x) == 0) continue;
        const unsigned e = 2 / fam[i].degree();
        for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
          const Place v = Place::finite(p);
          const auto gauss = (form_local_norm(fam[i], v) / local_norm(v, lead[i])).pow(e);
          CHECK(form_local_norm(tilde[i], v) == gauss);
          CHECK(weil_multiplier(tilde[i], v, x) == weil_multiplier(fam[i], v, x).pow(e));
        }
      }
    }
  }

  TEST_CASE("coordinate change search") {
    const std::vector<HomForm> fine{F("x0 + x1", 1), F("x0^2", 1)};
    CHECK(find_coordinate_change(fine).is_identity());

    const std::vector<HomForm> fam{F("x1", 2), F("x0*x2 + x1^2", 2)};
    const auto M = find_coordinate_change(fam);
    CHECK_FALSE(M.is_identity());
    std::vector<HomForm> moved;
    for (const auto& Q : fam) moved.push_back(M.apply(Q));
    CHECK_NOTHROW(tilde_normalize(moved));

    // Q(M y) at y = M^{-1} x equals Q(x)
    std::mt19937_64 rng(9);
    for (int k = 0; k < 10; ++k) {
      const auto x = schmidt::testing::random_point(rng, 2, Integer(9));
      const auto y = M.pull_back(x);
      for (std::size_t i = 0; i < fam.size(); ++i) CHECK(moved[i].evaluate(y) == fam[i].evaluate(x));
    }
  }

  TEST_CASE("substitute_linear and linear_combination") {
    const auto Q = F("x0*x1", 1);
    const std::vector<std::vector<Rational>> swap{{0, 1}, {1, 0}};
    CHECK(substitute_linear(Q, swap) == Q);
    const std::vector<HomForm> pair{F("x0", 1), F("x0", 1)};
    const std::vector<Rational> cancel{1, -1};
    CHECK_FALSE(linear_combination(pair, cancel).has_value());
  }
}
