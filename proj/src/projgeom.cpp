#include "schmidt/projgeom.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "schmidt/errors.hpp"

namespace schmidt {

unsigned MultiIndex::degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0u); }

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  if (o.size() != size()) throw DomainError("multi-index arity mismatch");
  MultiIndex r = *this;
  for (std::size_t i = 0; i < size(); ++i) r.exponents[i] += o.exponents[i];
  return r;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) s += ",";
    s += std::to_string(exponents[i]);
  }
  return s + ")";
}

bool GradedLexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  // larger exponents earlier
  return std::lexicographical_compare(b.exponents.begin(), b.exponents.end(), a.exponents.begin(),
                                      a.exponents.end());
}

namespace {

void fill_Td(std::size_t pos, unsigned remaining, std::vector<unsigned>& cur, std::vector<MultiIndex>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (unsigned e = remaining + 1; e-- > 0;) {
    cur[pos] = e;
    fill_Td(pos + 1, remaining - e, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_Td(std::size_t n, unsigned d) {
  std::vector<MultiIndex> out;
  std::vector<unsigned> cur(n + 1, 0);
  fill_Td(0, d, cur, out);
  return out;
}

MonomialBasis::MonomialBasis(std::size_t n, unsigned degree) : degree_(degree), monomials_(enumerate_Td(n, degree)) {
  for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
}

std::size_t MonomialBasis::index_of(const MultiIndex& I) const {
  const auto it = index_.find(I);
  if (it == index_.end() || I.size() != monomials_.front().size()) {
    throw DomainError("monomial " + I.to_string() + " not in basis of degree " + std::to_string(degree_));
  }
  return it->second;
}

// ---------------------------------------------------------------------------
// points

ProjectivePoint ProjectivePoint::from_raw(std::span<const Rational> raw) {
  if (raw.size() < 2) throw DomainError("projective point needs at least two coordinates");
  Integer common_den = 1;
  for (const auto& c : raw) common_den = lcm(common_den, c.get_den());
  std::vector<Integer> ints;
  ints.reserve(raw.size());
  Integer g = 0;
  for (const auto& c : raw) {
    Integer v = c.get_num() * (common_den / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    ints.push_back(std::move(v));
  }
  if (g == 0) throw DomainError("all-zero coordinates do not define a projective point");
  const auto first = std::find_if(ints.begin(), ints.end(), [](const Integer& v) { return v != 0; });
  if (*first < 0) g = -g;
  for (auto& v : ints) v /= g;
  ProjectivePoint p;
  p.coords_ = std::move(ints);
  return p;
}

ProjectivePoint ProjectivePoint::from_raw(std::span<const Integer> raw) {
  std::vector<Rational> r(raw.begin(), raw.end());
  return from_raw(std::span<const Rational>(r));
}

std::vector<Rational> ProjectivePoint::rational_coords() const { return {coords_.begin(), coords_.end()}; }

std::string ProjectivePoint::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ":";
    s += coords_[i].get_str();
  }
  return s + ")";
}

ProjectivePoint normalize_point(std::span<const Rational> raw) { return ProjectivePoint::from_raw(raw); }

ExactPositive point_local_norm(const Place& v, std::span<const Rational> raw) {
  std::optional<ExactPositive> best;
  for (const auto& c : raw) {
    if (c == 0) continue;
    auto norm = local_norm(v, c);
    if (!best || norm > *best) best = norm;
  }
  if (!best) throw DomainError("norm of the zero vector");
  return *best;
}

HeightKernel point_height(const ProjectivePoint& x) {
  Integer best = 0;
  for (const auto& c : x.coords()) best = std::max(best, Integer(abs(c)));
  return HeightKernel(Rational(best));
}

// ---------------------------------------------------------------------------
// forms

HomForm::HomForm(std::size_t n, unsigned degree, Coefficients coeffs) : n_(n), degree_(degree) {
  if (degree == 0) throw DomainError("homogeneous form must have degree >= 1");
  for (auto& [I, a] : coeffs) {
    if (I.size() != n + 1) throw DomainError("multi-index " + I.to_string() + " has wrong arity");
    if (I.degree() != degree) throw DomainError("multi-index " + I.to_string() + " has wrong degree");
    if (a != 0) {
      a.canonicalize();
      coeffs_.emplace(I, a);
    }
  }
  if (coeffs_.empty()) throw DomainError("homogeneous form must have a nonzero coefficient");
}

std::optional<HomForm> HomForm::make(std::size_t n, unsigned degree, Coefficients coeffs) {
  const bool any = std::any_of(coeffs.begin(), coeffs.end(), [](const auto& kv) { return kv.second != 0; });
  if (!any) return std::nullopt;
  return HomForm(n, degree, std::move(coeffs));
}

HomForm HomForm::monomial(const MultiIndex& I, const Rational& coeff) {
  Coefficients c;
  c.emplace(I, coeff);
  return HomForm(I.size() - 1, I.degree(), std::move(c));
}

HomForm HomForm::linear(std::span<const Rational> coeffs) {
  Coefficients c;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    std::vector<unsigned> e(coeffs.size(), 0);
    e[i] = 1;
    c.emplace(MultiIndex(std::move(e)), coeffs[i]);
  }
  return HomForm(coeffs.size() - 1, 1, std::move(c));
}

Rational HomForm::coefficient(const MultiIndex& I) const {
  const auto it = coeffs_.find(I);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

HomForm HomForm::operator*(const HomForm& o) const {
  if (o.n_ != n_) throw DomainError("product of forms in different dimensions");
  Coefficients out;
  for (const auto& [I, a] : coeffs_) {
    for (const auto& [J, b] : o.coeffs_) out[I + J] += a * b;
  }
  return HomForm(n_, degree_ + o.degree_, std::move(out));
}

HomForm HomForm::pow(unsigned e) const {
  if (e == 0) throw DomainError("zeroth power is not a form of positive degree");
  HomForm result = *this;
  for (unsigned i = 1; i < e; ++i) result = result * *this;
  return result;
}

HomForm HomForm::scaled(const Rational& c) const {
  if (c == 0) throw DomainError("scaling a form by zero");
  Coefficients out;
  for (const auto& [I, a] : coeffs_) out.emplace(I, a * c);
  return HomForm(n_, degree_, std::move(out));
}

HomForm HomForm::times_monomial(const MultiIndex& I) const {
  Coefficients out;
  for (const auto& [J, a] : coeffs_) out.emplace(J + I, a);
  return HomForm(n_, degree_ + I.degree(), std::move(out));
}

std::vector<Rational> HomForm::dense(const MonomialBasis& basis) const {
  if (basis.degree() != degree_) throw DomainError("basis degree does not match form degree");
  std::vector<Rational> v(basis.size(), 0);
  for (const auto& [I, a] : coeffs_) v[basis.index_of(I)] = a;
  return v;
}

std::vector<Integer> HomForm::primitive_dense(const MonomialBasis& basis) const {
  const auto rational = dense(basis);
  Integer den = 1;
  for (const auto& a : rational) den = lcm(den, a.get_den());
  std::vector<Integer> v;
  v.reserve(rational.size());
  Integer g = 0;
  for (const auto& a : rational) {
    v.push_back(a.get_num() * (den / a.get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.back().get_mpz_t());
  }
  for (auto& c : v) c /= g;
  return v;
}

Rational HomForm::evaluate(std::span<const Rational> x) const {
  if (x.size() != n_ + 1) throw DomainError("point dimension does not match form dimension");
  Rational sum = 0;
  for (const auto& [I, a] : coeffs_) {
    Rational term = a;
    for (std::size_t i = 0; i <= n_; ++i) {
      if (I[i]) term *= schmidt::pow(x[i], I[i]);
    }
    sum += term;
  }
  return sum;
}

Rational HomForm::evaluate(const ProjectivePoint& x) const {
  const auto r = x.rational_coords();
  return evaluate(std::span<const Rational>(r));
}

std::string HomForm::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [I, a] : coeffs_) {
    Rational mag = abs(a);
    if (first) {
      if (a < 0) os << "-";
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (mag != 1) {
      os << schmidt::to_string(mag);
      need_star = true;
    }
    for (std::size_t i = 0; i < I.size(); ++i) {
      if (!I[i]) continue;
      if (need_star) os << "*";
      os << "x" << i;
      if (I[i] > 1) os << "^" << I[i];
      need_star = true;
    }
  }
  return os.str();
}

HomForm parse_form(const std::string& text, std::size_t n) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw DomainError("empty form");
  HomForm::Coefficients coeffs;
  std::optional<unsigned> degree;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    const std::string term = s.substr(pos, end - pos);
    pos = end;
    if (term.empty()) throw DomainError("malformed form '" + text + "'");
    Rational coeff = sign;
    std::vector<unsigned> e(n + 1, 0);
    std::size_t tpos = 0;
    while (tpos <= term.size()) {
      std::size_t star = term.find('*', tpos);
      if (star == std::string::npos) star = term.size();
      const std::string factor = term.substr(tpos, star - tpos);
      tpos = star + 1;
      if (factor.empty()) throw DomainError("malformed term '" + term + "'");
      if (factor[0] == 'x') {
        const auto caret = factor.find('^');
        const unsigned var = static_cast<unsigned>(std::stoul(factor.substr(1, caret - 1)));
        const unsigned power = caret == std::string::npos ? 1u : static_cast<unsigned>(std::stoul(factor.substr(caret + 1)));
        if (var > n) throw DomainError("variable x" + std::to_string(var) + " exceeds dimension");
        e[var] += power;
      } else {
        coeff *= parse_rational(factor);
      }
      if (star == term.size()) break;
    }
    MultiIndex I(std::move(e));
    if (!degree) degree = I.degree();
    if (*degree != I.degree()) throw DomainError("form '" + text + "' is not homogeneous");
    coeffs[I] += coeff;
  }
  return HomForm(n, *degree, std::move(coeffs));
}

std::optional<HomForm> linear_combination(std::span<const HomForm> forms, std::span<const Rational> c) {
  if (forms.empty() || forms.size() != c.size()) throw DomainError("linear combination size mismatch");
  HomForm::Coefficients out;
  for (std::size_t j = 0; j < forms.size(); ++j) {
    if (forms[j].n() != forms[0].n() || forms[j].degree() != forms[0].degree()) {
      throw DomainError("linear combination of forms of different shape");
    }
    if (c[j] == 0) continue;
    for (const auto& [I, a] : forms[j].coefficients()) out[I] += c[j] * a;
  }
  return HomForm::make(forms[0].n(), forms[0].degree(), std::move(out));
}

HomForm substitute_linear(const HomForm& Q, const std::vector<std::vector<Rational>>& matrix) {
  const std::size_t n = Q.n();
  if (matrix.size() != n + 1) throw DomainError("substitution matrix has wrong size");
  std::vector<HomForm::Coefficients> images;
  for (const auto& row : matrix) {
    if (row.size() != n + 1) throw DomainError("substitution matrix has wrong size");
    HomForm::Coefficients c;
    for (std::size_t k = 0; k <= n; ++k) {
      std::vector<unsigned> e(n + 1, 0);
      e[k] = 1;
      if (row[k] != 0) c.emplace(MultiIndex(std::move(e)), row[k]);
    }
    images.push_back(std::move(c));
  }
  auto multiply = [](const HomForm::Coefficients& a, const HomForm::Coefficients& b) {
    HomForm::Coefficients out;
    for (const auto& [I, x] : a) {
      for (const auto& [J, y] : b) out[I + J] += x * y;
    }
    return out;
  };
  HomForm::Coefficients total;
  for (const auto& [I, a] : Q.coefficients()) {
    HomForm::Coefficients term;
    term.emplace(MultiIndex(std::vector<unsigned>(n + 1, 0)), a);
    for (std::size_t i = 0; i <= n; ++i) {
      for (unsigned p = 0; p < I[i]; ++p) term = multiply(term, images[i]);
    }
    for (const auto& [J, b] : term) total[J] += b;
  }
  return HomForm(n, Q.degree(), std::move(total));
}

Rational evaluate(const HomForm& Q, const ProjectivePoint& x) { return Q.evaluate(x); }

// ---------------------------------------------------------------------------
// norms, heights, Weil functions

ExactPositive form_local_norm(const HomForm& Q, const Place& v) {
  std::optional<ExactPositive> best;
  for (const auto& [I, a] : Q.coefficients()) {
    auto norm = local_norm(v, a);
    if (!best || norm > *best) best = norm;
  }
  return *best;
}

FormNorms norms_and_height(const HomForm& Q) {
  std::set<Place> places;
  for (const auto& [I, a] : Q.coefficients()) {
    const auto s = support(a);
    places.insert(s.begin(), s.end());
  }
  std::map<Place, ExactPositive> norms;
  Rational height = 1;
  for (const auto& v : places) {
    const auto norm = form_local_norm(Q, v);
    height *= norm.value();
    if (norm.value() != 1) norms.emplace(v, norm);
  }
  return FormNorms{std::move(norms), HeightKernel(height)};
}

HeightKernel form_height_primitive(const HomForm& Q) {
  const MonomialBasis basis(Q.n(), Q.degree());
  Integer best = 0;
  for (const auto& c : Q.primitive_dense(basis)) best = std::max(best, Integer(abs(c)));
  return HeightKernel(Rational(best));
}

ExactPositive weil_multiplier(const HomForm& Q, const Place& v, std::span<const Rational> raw_x) {
  const Rational value = Q.evaluate(raw_x);
  if (value == 0) throw DomainError("point on hypersurface");
  const auto xnorm = point_local_norm(v, raw_x);
  return xnorm.pow(Q.degree()) * form_local_norm(Q, v) / local_norm(v, value);
}

ExactPositive weil_multiplier(const HomForm& Q, const Place& v, const ProjectivePoint& x) {
  const auto r = x.rational_coords();
  return weil_multiplier(Q, v, std::span<const Rational>(r));
}

std::set<Place> contributing_places(const HomForm& Q, const ProjectivePoint& x) {
  std::set<Place> places{Place::archimedean()};
  for (const auto& [I, a] : Q.coefficients()) {
    const auto s = support(a);
    places.insert(s.begin(), s.end());
  }
  for (const auto& c : x.coords()) {
    if (c == 0) continue;
    const auto s = support(Rational(c));
    places.insert(s.begin(), s.end());
  }
  const Rational value = Q.evaluate(x);
  if (value == 0) throw DomainError("point on hypersurface");
  const auto s = support(value);
  places.insert(s.begin(), s.end());
  return places;
}

Rational first_main_identity(const HomForm& Q, const ProjectivePoint& x) {
  Rational product = 1;
  for (const auto& v : contributing_places(Q, x)) product *= weil_multiplier(Q, v, x).value();
  return product;
}

std::vector<HomForm> tilde_normalize(std::span<const HomForm> family) {
  if (family.empty()) return {};
  Integer common = 1;
  for (const auto& Q : family) common = lcm(common, Integer(Q.degree()));
  const unsigned d = static_cast<unsigned>(common.get_ui());
  std::vector<HomForm> out;
  out.reserve(family.size());
  for (const auto& Q : family) {
    std::vector<unsigned> lead(Q.n() + 1, 0);
    lead[0] = Q.degree();
    const Rational a = Q.coefficient(MultiIndex(lead));
    if (a == 0) throw DomainError("coordinate change required: zero coefficient at " + MultiIndex(lead).to_string());
    out.push_back(Q.scaled(1 / a).pow(d / Q.degree()));
  }
  return out;
}

bool CoordinateChange::is_identity() const {
  return std::all_of(shift.begin(), shift.end(), [](const Integer& c) { return c == 0; });
}

HomForm CoordinateChange::apply(const HomForm& Q) const {
  const std::size_t n = Q.n();
  if (shift.size() != n) throw DomainError("coordinate change has wrong dimension");
  std::vector<std::vector<Rational>> m(n + 1, std::vector<Rational>(n + 1, 0));
  m[0][0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    m[k][0] = shift[k - 1];
    m[k][k] = 1;
  }
  return substitute_linear(Q, m);
}

std::vector<Rational> CoordinateChange::pull_back(std::span<const Rational> x) const {
  if (x.size() != shift.size() + 1) throw DomainError("coordinate change has wrong dimension");
  std::vector<Rational> y(x.begin(), x.end());
  for (std::size_t k = 1; k < y.size(); ++k) y[k] = x[k] - Rational(shift[k - 1]) * x[0];
  return y;
}

CoordinateChange find_coordinate_change(std::span<const HomForm> family, unsigned max_radius) {
  if (family.empty()) return {};
  const std::size_t n = family.front().n();
  std::optional<CoordinateChange> found;
  enumerate_integer_vectors(n, max_radius, true, [&](const std::vector<long>& c) {
    std::vector<Rational> w(n + 1, 1);
    for (std::size_t k = 0; k < n; ++k) w[k + 1] = c[k];
    // The coefficient of y_0^{d_i} in Q_i(M y) is Q_i(M e_0) = Q_i(w).
    for (const auto& Q : family) {
      if (Q.evaluate(std::span<const Rational>(w)) == 0) return false;
    }
    CoordinateChange change;
    for (long x : c) change.shift.emplace_back(x);
    found = std::move(change);
    return true;
  });
  if (!found) throw DomainError("no coordinate change found within radius " + std::to_string(max_radius));
  return *found;
}

}  // namespace schmidt
