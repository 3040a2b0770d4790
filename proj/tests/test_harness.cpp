#include <doctest.h>

#include <json.hpp>

#include <sstream>

#include "schmidt/campaign.hpp"
#include "schmidt/config.hpp"
#include "schmidt/errors.hpp"
#include "support.hpp"

using namespace schmidt;
using nlohmann::json;

namespace {

json coordinate_form(std::size_t n, std::size_t i) {
  std::vector<int> e(n + 1, 0);
  e[i] = 1;
  return {{"degree", 1}, {"coefficients", {{{"exponents", e}, {"num", {1}}}}}};
}

json model_doc() {
  return {{"n", 1},
          {"N", 1},
          {"epsilon", "1/2"},
          {"places", {"inf", 2}},
          {"alpha_range", {1, 20}},
          {"family", {coordinate_form(1, 0), coordinate_form(1, 1)}},
          {"points", {{"kind", "exponential"}, {"bases", {1, 2}}}}};
}

CampaignConfig parse(const json& doc) { return parse_family_spec(doc.dump()); }

std::string run_csv(const CampaignConfig& cfg, CampaignSummary* summary = nullptr) {
  std::ostringstream out;
  auto s = run_campaign(cfg, out, OutputFormat::csv);
  if (summary) *summary = s;
  return out.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// Exact d-th root of a positive rational, if there is one.
std::optional<Rational> exact_root(const Rational& q, unsigned d) {
  Integer num, den;
  if (!mpz_root(num.get_mpz_t(), q.get_num_mpz_t(), d)) return std::nullopt;
  if (!mpz_root(den.get_mpz_t(), q.get_den_mpz_t(), d)) return std::nullopt;
  return Rational(num, den);
}

}  // namespace

TEST_SUITE("harness.config") {
  TEST_CASE("minimal document round-trips") {
    const auto cfg = parse(model_doc());
    CHECK(cfg.n == 1);
    CHECK(cfg.N == 1);
    CHECK(cfg.family.q() == 2);
    CHECK(cfg.epsilon == Rational(1, 2));
    CHECK(cfg.epsilon_prime == 1);
    CHECK(cfg.precision_bits == 128);
    CHECK(cfg.places.size() == 2);
    CHECK(cfg.alphas().size() == 20);
    CHECK(cfg.bound_constant() == Rational(5, 2));
    CHECK(cfg.position_samples == std::vector<long>{1, 10, 20});
    CHECK(cfg.family.at(3)[1] == parse_form("x1", 1));
  }

  TEST_CASE("field-path diagnostics") {
    auto doc = model_doc();
    doc["family"][1].erase("degree");
    CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("family.forms[1].degree"), ConfigError);

    doc = model_doc();
    doc["family"][0]["coefficients"][0]["den"] = {-5, 1};
    CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("denominator root at α=5"), ConfigError);

    doc = model_doc();
    doc["family"] = json::array();
    CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("empty family"), ConfigError);

    doc = model_doc();
    doc["N"] = 2;
    CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("less than N+1"), ConfigError);

    doc = model_doc();
    doc["places"] = {"inf", 2, 2};
    CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("places[2]"), ConfigError);

    doc = model_doc();
    doc["places"] = {"inf", 6};
    CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("not prime"), ConfigError);

    doc = model_doc();
    doc["points"]["kind"] = "spiral";
    CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("points.kind"), ConfigError);

    doc = model_doc();
    doc["epsilon"] = "0";
    CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("epsilon"), ConfigError);

    doc = model_doc();
    doc["family"][0]["coefficients"][0]["exponents"] = {2, 0};
    CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("family.forms[0].coefficients[0].exponents"), ConfigError);

    doc = model_doc();
    doc["family"][0]["coefficients"][0]["num"] = {0};
    CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("identically zero"), ConfigError);

    doc = model_doc();
    doc["points"] = {{"kind", "polynomial"}, {"coordinates", {{-5, 1}, {-5, 1}}}};
    CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("all zero at α=5"), ConfigError);

    CHECK_THROWS_AS(parse_family_spec("{not json"), ConfigError);
  }

  TEST_CASE("family given as an object with forms") {
    auto doc = model_doc();
    doc["family"] = {{"forms", doc["family"]}};
    CHECK(parse(doc).family.q() == 2);
  }

  TEST_CASE("hyperplane mode needs degree one") {
    auto cfg = parse(model_doc());
    enable_hyperplane_mode(cfg);
    CHECK(cfg.bound_constant() == Rational(5, 2));
    auto doc = model_doc();
    doc["family"][1] = {{"degree", 2}, {"coefficients", {{{"exponents", {0, 2}}, {"num", {1}}}}}};
    auto quad = parse(doc);
    CHECK_THROWS_WITH_AS(enable_hyperplane_mode(quad), doctest::Contains("family.forms[1].degree"), ConfigError);
  }
}

TEST_SUITE("harness.campaign") {
  TEST_CASE("evaluate_instance examples") {
    auto doc = model_doc();
    doc["alpha_range"] = {0, 20};
    const auto cfg = parse(doc);
    const BigFloat log2 = BigFloat::log(2, 128);

    const auto r = evaluate_instance(cfg, 3);
    CHECK(r.excluded == Exclusion::none);
    CHECK(r.x.coords() == std::vector<Integer>{1, 8});
    CHECK(*r.lhs_kernel == 64);
    CHECK(((*r.lhs - log2 * BigFloat(6, 128)).abs() < BigFloat(Rational(1, Integer(1) << 100), 128)));
    CHECK(((r.h_x - log2 * BigFloat(3, 128)).abs() < BigFloat(Rational(1, Integer(1) << 100), 128)));
    CHECK(r.ratio->to_string(12) == "2.00000000000");
    CHECK_FALSE(r.violation);
    // hand values: x0 has multiplier 8 at inf and 1 at 2; x1 the reverse
    CHECK(r.multipliers[0][0].value() == 8);
    CHECK(r.multipliers[0][1].value() == 1);
    CHECK(r.multipliers[1][0].value() == 1);
    CHECK(r.multipliers[1][1].value() == 8);

    const auto z = evaluate_instance(cfg, 0);
    CHECK(z.excluded == Exclusion::zero_height);
    CHECK(z.lhs->is_zero());
    CHECK_FALSE(z.ratio.has_value());

    json ex = {{"n", 1},
               {"N", 1},
               {"epsilon", "1/2"},
               {"places", {"inf"}},
               {"alpha_range", {0, 0}},
               {"family",
                {{{"degree", 1},
                  {"coefficients", {{{"exponents", {1, 0}}, {"num", {1}}}, {{"exponents", {0, 1}}, {"num", {1}}}}}},
                 coordinate_form(1, 1)}},
               {"points", {{"kind", "explicit"}, {"points", {{1, -1}}}}}};
    const auto h = evaluate_instance(parse(ex), 0);
    CHECK(h.excluded == Exclusion::on_hypersurface);
    CHECK_FALSE(h.lhs.has_value());
  }

  TEST_CASE("model campaign: closed-form rows") {
    const auto cfg = parse(model_doc());
    CampaignSummary s;
    const auto csv = lines(run_csv(cfg, &s));
    REQUIRE(csv.size() == 21);
    CHECK(csv[0] == kCsvHeader);
    for (std::size_t i = 1; i < csv.size(); ++i) {
      const auto f = fields(csv[i]);
      REQUIRE(f.size() == 9);
      CHECK(f[0] == std::to_string(i));
      CHECK(f[4] == "2.00000000000");
      CHECK(f[5] == "0");
      CHECK(f[6] == "none");
      // K = 4^alpha
      Integer K;
      mpz_ui_pow_ui(K.get_mpz_t(), 4, i);
      CHECK(f[7] == K.get_str());
      CHECK(f[8] == "1");
    }
    CHECK(s.instances == 20);
    CHECK(s.violations == 0);
    CHECK(s.max_ratio->to_string(12) == "2.00000000000");
    CHECK(s.satisfying_alphas.size() == 20);
    CHECK(s.position.certified_weakly);
    CHECK(s.position.mode == PositionVerdict::Mode::general);
    CHECK(s.smallness_trend->is_zero());
    REQUIRE(s.boundedness.size() == 2);
    for (const auto& b : s.boundedness) {
      CHECK(b.min == 1);
      CHECK(b.max == 1);
    }
  }

  TEST_CASE("identical configs give byte-identical output") {
    const auto cfg = parse(model_doc());
    CHECK(run_csv(cfg) == run_csv(parse(model_doc())));
    std::ostringstream a, b;
    run_campaign(cfg, a, OutputFormat::json);
    run_campaign(cfg, b, OutputFormat::json);
    CHECK(a.str() == b.str());
    const auto doc = json::parse(a.str());
    CHECK(doc["rows"].size() == 20);
    CHECK(doc["summary"]["violations"] == 0);
    CHECK(doc["rows"][2]["multipliers"]["inf"][0] == "8");
  }

  TEST_CASE("hyperplane mode on the model instance") {
    auto cfg = parse(model_doc());
    enable_hyperplane_mode(cfg);
    CampaignSummary s;
    run_csv(cfg, &s);
    CHECK(s.violations == 0);
    CHECK(s.bound_constant == Rational(5, 2));
  }

  TEST_CASE("tight bound is decided exactly") {
    // epsilon chosen so that the bound constant is exactly the ratio 2; lhs = rhs, no violation
    auto doc = model_doc();
    doc["N"] = 1;
    doc["epsilon"] = "1/1000000";
    auto cfg = parse(doc);
    cfg.epsilon = Rational(0);  // bound constant (N-n+1)(n+1) = 2 exactly
    const auto r = evaluate_instance(cfg, 7);
    CHECK_FALSE(r.violation);
    cfg.epsilon = Rational(-1, 1000000);
    CHECK(evaluate_instance(cfg, 7).violation);
  }

  TEST_CASE("instance invariants on a mixed-degree family") {
    // x0, x1^2, x0^2 + x1^2 against (1:2^a) and (3^a:2^a)
    json doc = {{"n", 1},
                {"N", 1},
                {"epsilon", "1/2"},
                {"places", {"inf", 2, 3}},
                {"alpha_range", {1, 12}},
                {"family",
                 {coordinate_form(1, 0),
                  {{"degree", 2}, {"coefficients", {{{"exponents", {0, 2}}, {"num", {1}}}}}},
                  {{"degree", 2},
                   {"coefficients", {{{"exponents", {2, 0}}, {"num", {1}}}, {{"exponents", {0, 2}}, {"num", {1}}}}}}}},
                {"points", {{"kind", "exponential"}, {"bases", {3, 2}}}}};
    const auto cfg = parse(doc);
    for (long alpha : cfg.alphas()) {
      const auto r = evaluate_instance(cfg, alpha);
      REQUIRE(r.excluded == Exclusion::none);
      const auto Q = cfg.family.at(alpha);
      const auto degrees = cfg.family.degrees();
      Rational K = 1;
      std::optional<Rational> root = Rational(1);
      for (std::size_t j = 0; j < Q.size(); ++j) {
        for (std::size_t k = 0; k < cfg.places.size(); ++k) {
          const auto m = weil_multiplier(Q[j], cfg.places[k], r.x).value();
          CHECK(r.multipliers[j][k].value() == m);
          K *= pow(m, r.lhs_root / degrees[j]);
          const auto rt = exact_root(m, degrees[j]);
          if (root && rt) *root *= *rt;
          else root.reset();
        }
      }
      CHECK(*r.lhs_kernel == K);
      if (root) {
        CHECK(pow(*root, r.lhs_root) == K);
        CHECK(((BigFloat::log(*root, 128) - *r.lhs).abs() < BigFloat(Rational(1, Integer(1) << 100), 128)));
      }
      for (std::size_t k = 0; k < cfg.places.size(); ++k) {
        const auto& perm = r.permutation[k];
        for (std::size_t i = 1; i < perm.size(); ++i) {
          CHECK(local_norm(cfg.places[k], Q[perm[i - 1]].evaluate(r.x)) <=
                local_norm(cfg.places[k], Q[perm[i]].evaluate(r.x)));
        }
      }
      CHECK(r.boundedness.empty());
      CHECK_FALSE(r.tilde_discrepancy.has_value());  // x1^2 has no x0^2 term
    }
  }

  TEST_CASE("tilde discrepancy is reported at the real place") {
    json doc = {{"n", 1},
                {"N", 1},
                {"epsilon", "1/2"},
                {"places", {"inf", 2}},
                {"alpha_range", {1, 6}},
                {"family",
                 {{{"degree", 1},
                   {"coefficients", {{{"exponents", {1, 0}}, {"num", {1}}}, {{"exponents", {0, 1}}, {"num", {1}}}}}},
                  {{"degree", 2},
                   {"coefficients", {{{"exponents", {2, 0}}, {"num", {1}}}, {{"exponents", {0, 2}}, {"num", {1}}}}}}}},
                {"points", {{"kind", "exponential"}, {"bases", {1, 2}}}}};
    const auto cfg = parse(doc);
    for (long alpha : cfg.alphas()) {
      const auto r = evaluate_instance(cfg, alpha);
      REQUIRE(r.tilde_discrepancy.has_value());
      // (x0+x1)^2 has sup norm 2 against 1 for x0+x1: the gap is log(2)/2 at every alpha
      CHECK(r.tilde_discrepancy->to_string(12) == BigFloat::log(2, 128).operator/(BigFloat(2, 128)).to_string(12));
    }
  }

  TEST_CASE("n=2 quadric campaign stays below the bound") {
    auto mono = [](std::vector<int> e, long c) { return json{{"exponents", e}, {"num", {c}}}; };
    json quads = json::array();
    quads.push_back({{"degree", 2}, {"coefficients", {mono({2, 0, 0}, 1)}}});
    quads.push_back({{"degree", 2}, {"coefficients", {mono({0, 2, 0}, 1)}}});
    quads.push_back({{"degree", 2}, {"coefficients", {mono({1, 1, 0}, 1)}}});
    quads.push_back({{"degree", 2}, {"coefficients", {mono({0, 0, 2}, 1)}}});
    quads.push_back({{"degree", 2}, {"coefficients", {mono({2, 0, 0}, 1), mono({0, 2, 0}, 1), mono({0, 0, 2}, 1)}}});
    quads.push_back({{"degree", 2},
                     {"coefficients",
                      {mono({2, 0, 0}, 1), mono({1, 1, 0}, 1), mono({0, 2, 0}, 2), mono({0, 1, 1}, 1),
                       mono({0, 0, 2}, 3)}}});
    json doc = {{"n", 2},        {"N", 3},        {"epsilon", "1/2"},
                {"places", {"inf", 2, 3}},     {"alpha_range", {1, 40}},
                {"family", quads}, {"points", {{"kind", "exponential"}, {"bases", {1, 2, 3}}}}};
    const auto cfg = parse(doc);
    CampaignSummary s;
    run_csv(cfg, &s);
    CHECK(s.position.certified_weakly);
    CHECK(s.position.mode == PositionVerdict::Mode::subgeneral);
    CHECK(s.bound_constant == Rational(13, 2));
    CHECK(s.violations == 0);
    CHECK(s.instances == 40);
    REQUIRE(s.max_ratio.has_value());
    CHECK(s.max_ratio->to_double() < 6.5);
    for (const auto& b : s.boundedness) {
      CHECK(b.min > 0);
      CHECK(b.max < 10);
    }
  }
}

TEST_SUITE("harness.diagnostics") {
  TEST_CASE("nondegeneracy_probe examples") {
    const std::vector<long> five{0, 1, 2, 3, 4};
    auto v = nondegeneracy_probe(PointSequence::exponential({1, 2, 3}), 1, five);
    CHECK(v.nondegenerate);
    CHECK(v.rank == 3);

    const PointSequence line = PointSequence::polynomial({AlphaPolynomial({1}), AlphaPolynomial({0, 1}),
                                                          AlphaPolynomial({0, 1})});
    v = nondegeneracy_probe(line, 1, five);
    CHECK_FALSE(v.nondegenerate);
    REQUIRE(v.witness.has_value());
    CHECK(*v.witness == parse_form("x1 - x2", 2));

    const std::vector<long> six{0, 1, 2, 3, 4, 5};
    v = nondegeneracy_probe(PointSequence::exponential({1, 2}), 2, six);
    CHECK(v.nondegenerate);
    CHECK(v.rank == 3);

    const std::vector<long> few{0, 1, 2};
    CHECK_THROWS_AS(nondegeneracy_probe(PointSequence::exponential({1, 2}), 2, few), DomainError);
  }

  TEST_CASE("smallness_report examples") {
    auto cfg = parse(model_doc());
    auto rep = smallness_report(cfg);
    CHECK(rep.consistent);
    for (const auto& t : rep.per_form) {
      CHECK(t.last_quartile_max->is_zero());
    }

    // x0 + alpha*x1 against (1:2^alpha)
    auto doc = model_doc();
    doc["alpha_range"] = {1, 300};
    doc["family"][0]["coefficients"].push_back({{"exponents", {0, 1}}, {"num", {0, 1}}});
    rep = smallness_report(parse(doc));
    CHECK(rep.consistent);
    const auto& t = rep.per_form[0];
    CHECK(t.last_quartile_max->to_double() > 0);
    for (std::size_t k = 1; k < t.envelope.size(); ++k) CHECK_FALSE(t.envelope[k] > t.envelope[k - 1]);

    // x0 + 2^alpha*x1 tabulated, same base as the points
    doc = model_doc();
    json values = json::array();
    for (long a = 1; a <= 20; ++a) values.push_back(Integer(Integer(1) << static_cast<unsigned>(a)).get_str());
    doc["family"][0]["coefficients"].push_back({{"exponents", {0, 1}}, {"values", values}});
    rep = smallness_report(parse(doc));
    CHECK_FALSE(rep.consistent);
    CHECK_FALSE(rep.per_form[0].consistent);
    CHECK(rep.per_form[0].last_quartile_max->to_string(12) == "1.00000000000");
  }
}
