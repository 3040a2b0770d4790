#include "schmidt/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "schmidt/errors.hpp"

namespace schmidt {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ConfigError(path + ": " + what); }

const json& require(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing required field");
  return *it;
}

std::string child(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string child(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

long get_long(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

std::size_t get_count(const json& j, const std::string& path, long min) {
  const long v = get_long(j, path);
  if (v < min) fail(path, "must be at least " + std::to_string(min));
  return static_cast<std::size_t>(v);
}

// Integers may be JSON numbers or decimal strings (for values beyond 64 bits).
Integer get_integer(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) fail(path, "not a decimal integer");
    return z;
  }
  fail(path, "expected an integer");
}

Rational get_rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) fail(path, "expected a rational string p/q");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

const json& get_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

AlphaPolynomial get_polynomial(const json& j, const std::string& path) {
  std::vector<Integer> c;
  for (std::size_t i = 0; i < get_array(j, path).size(); ++i) c.push_back(get_integer(j[i], child(path, i)));
  return AlphaPolynomial(std::move(c));
}

std::vector<Place> get_places(const json& j, const std::string& path) {
  std::set<Place> seen;
  std::vector<Place> out;
  for (std::size_t i = 0; i < get_array(j, path).size(); ++i) {
    const auto p = child(path, i);
    Place v = Place::archimedean();
    if (j[i].is_string() && j[i].get<std::string>() == "inf") {
      v = Place::archimedean();
    } else {
      const Integer prime = get_integer(j[i], p);
      if (!is_prime(prime)) fail(p, prime.get_str() + " is not prime");
      v = Place::finite(prime);
    }
    if (!seen.insert(v).second) fail(p, "duplicate place " + v.to_string());
    out.push_back(v);
  }
  if (out.empty()) fail(path, "S must contain at least one place");
  std::sort(out.begin(), out.end());
  return out;
}

MovingCoefficient get_coefficient(const json& entry, const std::string& path, long lo, long hi) {
  if (entry.contains("values")) {
    const auto vp = child(path, "values");
    std::vector<Rational> values;
    for (std::size_t i = 0; i < get_array(entry["values"], vp).size(); ++i) {
      values.push_back(get_rational(entry["values"][i], child(vp, i)));
    }
    const long start = entry.contains("alpha_min") ? get_long(entry["alpha_min"], child(path, "alpha_min")) : lo;
    if (start > lo || start + static_cast<long>(values.size()) - 1 < hi) fail(vp, "table does not cover the alpha range");
    return MovingCoefficient::table(start, std::move(values));
  }
  const auto np = child(path, "num");
  AlphaPolynomial num = get_polynomial(require(entry, "num", path), np);
  AlphaPolynomial den({Integer(1)});
  if (entry.contains("den")) {
    const auto dp = child(path, "den");
    den = get_polynomial(entry["den"], dp);
    if (den.is_zero()) fail(dp, "denominator is the zero polynomial");
    const auto roots = den.roots_in(lo, hi);
    if (!roots.empty()) fail(dp, "denominator root at α=" + std::to_string(roots.front()));
  }
  return MovingCoefficient::ratio(std::move(num), std::move(den));
}

MovingForm get_form(const json& j, const std::string& path, std::size_t n, long lo, long hi) {
  if (!j.is_object()) fail(path, "expected an object");
  MovingForm f;
  f.degree = static_cast<unsigned>(get_count(require(j, "degree", path), child(path, "degree"), 1));
  const auto cp = child(path, "coefficients");
  const json& coeffs = get_array(require(j, "coefficients", path), cp);
  if (coeffs.empty()) fail(cp, "no coefficients");
  std::set<std::vector<unsigned>> seen;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const auto kp = child(cp, k);
    if (!coeffs[k].is_object()) fail(kp, "expected an object");
    const auto ep = child(kp, "exponents");
    const json& ex = get_array(require(coeffs[k], "exponents", kp), ep);
    if (ex.size() != n + 1) fail(ep, "expected " + std::to_string(n + 1) + " exponents");
    std::vector<unsigned> e;
    for (std::size_t i = 0; i < ex.size(); ++i) e.push_back(static_cast<unsigned>(get_count(ex[i], child(ep, i), 0)));
    MultiIndex I(e);
    if (I.degree() != f.degree) fail(ep, "exponents sum to " + std::to_string(I.degree()) + ", not the form degree");
    if (!seen.insert(e).second) fail(ep, "duplicate monomial " + I.to_string());
    f.terms.emplace_back(std::move(I), get_coefficient(coeffs[k], kp, lo, hi));
  }
  const bool all_zero =
      std::all_of(f.terms.begin(), f.terms.end(), [](const auto& t) { return t.second.identically_zero(); });
  if (all_zero) fail(path, "every coefficient is identically zero");
  return f;
}

PointSequence get_points(const json& j, const std::string& path, std::size_t n, long lo, long hi) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto kp = child(path, "kind");
  const json& kind = require(j, "kind", path);
  if (!kind.is_string()) fail(kp, "expected a string");
  const auto k = kind.get<std::string>();
  auto arity = [&](const json& arr, const std::string& p) -> const json& {
    if (get_array(arr, p).size() != n + 1) fail(p, "expected " + std::to_string(n + 1) + " entries");
    return arr;
  };
  std::optional<PointSequence> seq;
  if (k == "exponential") {
    const auto bp = child(path, "bases");
    const json& b = arity(require(j, "bases", path), bp);
    std::vector<Integer> bases;
    for (std::size_t i = 0; i < b.size(); ++i) {
      bases.push_back(get_integer(b[i], child(bp, i)));
      if (bases.back() <= 0) fail(child(bp, i), "bases must be positive");
    }
    seq = PointSequence::exponential(std::move(bases));
  } else if (k == "explicit") {
    const auto pp = child(path, "points");
    const json& pts = get_array(require(j, "points", path), pp);
    const long start = j.contains("alpha_min") ? get_long(j["alpha_min"], child(path, "alpha_min")) : lo;
    if (start > lo || start + static_cast<long>(pts.size()) - 1 < hi) fail(pp, "list does not cover the alpha range");
    std::vector<std::vector<Rational>> list;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto ip = child(pp, i);
      std::vector<Rational> x;
      for (std::size_t c = 0; c < arity(pts[i], ip).size(); ++c) x.push_back(get_rational(pts[i][c], child(ip, c)));
      list.push_back(std::move(x));
    }
    seq = PointSequence::explicit_list(start, std::move(list));
  } else if (k == "polynomial") {
    const auto cp = child(path, "coordinates");
    const json& cs = arity(require(j, "coordinates", path), cp);
    std::vector<AlphaPolynomial> coords;
    for (std::size_t i = 0; i < cs.size(); ++i) coords.push_back(get_polynomial(cs[i], child(cp, i)));
    seq = PointSequence::polynomial(std::move(coords));
  } else {
    fail(kp, "unknown kind '" + k + "' (exponential, explicit or polynomial)");
  }
  for (long a = lo; a <= hi; ++a) {
    const auto raw = seq->raw(a);
    if (std::all_of(raw.begin(), raw.end(), [](const Rational& c) { return c == 0; })) {
      fail(path, "raw coordinates are all zero at α=" + std::to_string(a));
    }
  }
  return *seq;
}

}  // namespace

Rational CampaignConfig::bound_constant() const {
  const Rational n1(static_cast<unsigned long>(n + 1));
  if (hyperplane_mode) return n1 + epsilon;
  return Rational(static_cast<unsigned long>(N - n + 1)) * n1 + epsilon;
}

std::vector<long> CampaignConfig::alphas() const {
  std::vector<long> out;
  for (long a = alpha_min; a <= alpha_max; ++a) out.push_back(a);
  return out;
}

CampaignConfig parse_family_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail("document", e.what());
  }
  if (!doc.is_object()) fail("document", "expected a JSON object");

  const std::size_t n = get_count(require(doc, "n", ""), "n", 1);
  const std::size_t N = get_count(require(doc, "N", ""), "N", 1);
  if (N < n) fail("N", "N must be at least n");

  const Rational eps = get_rational(require(doc, "epsilon", ""), "epsilon");
  if (eps <= 0) fail("epsilon", "must be positive");
  Rational eps_prime = 1;
  if (doc.contains("epsilon_prime")) {
    eps_prime = get_rational(doc["epsilon_prime"], "epsilon_prime");
    if (eps_prime <= 0) fail("epsilon_prime", "must be positive");
  }

  const auto places = get_places(require(doc, "places", ""), "places");

  const json& range = get_array(require(doc, "alpha_range", ""), "alpha_range");
  if (range.size() != 2) fail("alpha_range", "expected [alpha_min, alpha_max]");
  const long lo = get_long(range[0], "alpha_range[0]");
  const long hi = get_long(range[1], "alpha_range[1]");
  if (lo > hi) fail("alpha_range", "alpha_min exceeds alpha_max");

  unsigned precision = 128;
  if (doc.contains("precision_bits")) {
    precision = static_cast<unsigned>(get_count(doc["precision_bits"], "precision_bits", 32));
  }

  // "family" is either the form list itself or {"forms": [...]}; paths always read family.forms[j].
  const json& fam = require(doc, "family", "");
  const json& forms_json = fam.is_object() ? require(fam, "forms", "family") : fam;
  const std::string fp = "family.forms";
  get_array(forms_json, fp);
  if (forms_json.empty()) fail("family", "empty family");
  std::vector<MovingForm> forms;
  for (std::size_t j = 0; j < forms_json.size(); ++j) forms.push_back(get_form(forms_json[j], child(fp, j), n, lo, hi));
  if (forms.size() < N + 1) {
    fail("family", "q = " + std::to_string(forms.size()) + " is less than N+1 = " + std::to_string(N + 1));
  }

  bool hyperplane = false;
  if (doc.contains("hyperplane_mode")) {
    if (!doc["hyperplane_mode"].is_boolean()) fail("hyperplane_mode", "expected a boolean");
    hyperplane = doc["hyperplane_mode"].get<bool>();
  }

  PointSequence points = get_points(require(doc, "points", ""), "points", n, lo, hi);

  unsigned probe = 1;
  if (doc.contains("probe_degree")) probe = static_cast<unsigned>(get_count(doc["probe_degree"], "probe_degree", 1));

  Rational threshold(1, 20);
  if (doc.contains("smallness_threshold")) {
    threshold = get_rational(doc["smallness_threshold"], "smallness_threshold");
    if (threshold <= 0) fail("smallness_threshold", "must be positive");
  }

  std::vector<long> samples;
  if (doc.contains("position_samples")) {
    const json& s = get_array(doc["position_samples"], "position_samples");
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto sp = child(std::string("position_samples"), i);
      samples.push_back(get_long(s[i], sp));
      if (samples.back() < lo || samples.back() > hi) fail(sp, "sample outside the alpha range");
    }
    if (samples.empty()) fail("position_samples", "needs at least one sample");
  } else {
    samples = {lo, lo + (hi - lo) / 2, hi};
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
  }

  CampaignConfig cfg{.n = n,
                     .N = N,
                     .epsilon = eps,
                     .epsilon_prime = eps_prime,
                     .places = places,
                     .alpha_min = lo,
                     .alpha_max = hi,
                     .precision_bits = precision,
                     .family = MovingFamily(n, std::move(forms)),
                     .points = std::move(points),
                     .probe_degree = probe,
                     .smallness_threshold = threshold,
                     .position_samples = std::move(samples),
                     .hyperplane_mode = false};
  if (hyperplane) enable_hyperplane_mode(cfg);
  return cfg;
}

void enable_hyperplane_mode(CampaignConfig& cfg) {
  const auto deg = cfg.family.degrees();
  for (std::size_t j = 0; j < deg.size(); ++j) {
    if (deg[j] != 1) fail("family.forms[" + std::to_string(j) + "].degree", "hyperplane mode needs degree 1");
  }
  cfg.hyperplane_mode = true;
}

CampaignConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_family_spec(text.str());
}

}  // namespace schmidt
