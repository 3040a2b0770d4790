#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "schmidt/arith.hpp"
#include "schmidt/places.hpp"

namespace schmidt {

/// Exponent vector (i_0, ..., i_n) of a monomial x^I.
struct MultiIndex {
  std::vector<unsigned> exponents;

  MultiIndex() = default;
  MultiIndex(std::initializer_list<unsigned> e) : exponents(e) {}
  explicit MultiIndex(std::vector<unsigned> e) : exponents(std::move(e)) {}

  unsigned degree() const;
  std::size_t size() const { return exponents.size(); }
  unsigned operator[](std::size_t i) const { return exponents[i]; }
  MultiIndex operator+(const MultiIndex& o) const;
  std::string to_string() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// Graded-lex order: lower degree first; within a degree, larger leading
/// exponents first, so T_3 in two variables reads (3,0),(2,1),(1,2),(0,3).
struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// T_d in n+1 variables, graded-lex; binom(d+n, n) entries.
std::vector<MultiIndex> enumerate_Td(std::size_t n, unsigned d);

/// Column index lookup for the monomial basis of V_D.
class MonomialBasis {
 public:
  MonomialBasis(std::size_t n, unsigned degree);
  std::size_t size() const { return monomials_.size(); }
  unsigned degree() const { return degree_; }
  const std::vector<MultiIndex>& monomials() const { return monomials_; }
  /// Throws DomainError for an index of the wrong degree or arity.
  std::size_t index_of(const MultiIndex& I) const;

 private:
  unsigned degree_;
  std::vector<MultiIndex> monomials_;
  std::map<MultiIndex, std::size_t, GradedLexLess> index_;
};

/// Canonical coordinates: coprime integers, first nonzero coordinate positive.
class ProjectivePoint {
 public:
  /// Normalizes; throws DomainError on the all-zero tuple.
  static ProjectivePoint from_raw(std::span<const Rational> raw);
  static ProjectivePoint from_raw(std::span<const Integer> raw);

  std::size_t n() const { return coords_.size() - 1; }
  const std::vector<Integer>& coords() const { return coords_; }
  std::vector<Rational> rational_coords() const;
  std::string to_string() const;

  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;

 private:
  std::vector<Integer> coords_;
};

ProjectivePoint normalize_point(std::span<const Rational> raw);

/// ||x||_v = max_i ||x_i||_v over the nonzero coordinates.
ExactPositive point_local_norm(const Place& v, std::span<const Rational> raw);

/// H(x) = max |x_i| of the canonical representative.
HeightKernel point_height(const ProjectivePoint& x);

/// Homogeneous form of degree d >= 1 in x_0..x_n with exact rational
/// coefficients; never the zero polynomial.
class HomForm {
 public:
  using Coefficients = std::map<MultiIndex, Rational, GradedLexLess>;

  /// Drops zero coefficients. Throws DomainError if nothing remains or a key
  /// has the wrong degree or arity.
  HomForm(std::size_t n, unsigned degree, Coefficients coeffs);

  /// Same checks, but returns nullopt for the zero polynomial.
  static std::optional<HomForm> make(std::size_t n, unsigned degree, Coefficients coeffs);
  static HomForm monomial(const MultiIndex& I, const Rational& coeff = 1);
  /// Sum_i coeffs[i] * x_i.
  static HomForm linear(std::span<const Rational> coeffs);

  std::size_t n() const { return n_; }
  unsigned degree() const { return degree_; }
  const Coefficients& coefficients() const { return coeffs_; }
  Rational coefficient(const MultiIndex& I) const;

  HomForm operator*(const HomForm& o) const;
  HomForm pow(unsigned e) const;
  HomForm scaled(const Rational& c) const;
  /// Exact image of x^I * this.
  HomForm times_monomial(const MultiIndex& I) const;

  /// Coefficient vector over the graded-lex basis of V_degree.
  std::vector<Rational> dense(const MonomialBasis& basis) const;
  /// Coefficients scaled to coprime integers (sign of the leading term kept).
  std::vector<Integer> primitive_dense(const MonomialBasis& basis) const;

  Rational evaluate(std::span<const Rational> x) const;
  Rational evaluate(const ProjectivePoint& x) const;

  /// "x0^2 - x1*x2" style rendering, graded-lex term order.
  std::string to_string() const;

  friend bool operator==(const HomForm&, const HomForm&) = default;

 private:
  std::size_t n_;
  unsigned degree_;
  Coefficients coeffs_;
};

/// Parses "x0^2 - x1*x2 + 1/2*x0*x1" for a form in x_0..x_n.
HomForm parse_form(const std::string& text, std::size_t n);

/// Sum_j c_j Q_j; nullopt when the combination cancels. All forms must share n and degree.
std::optional<HomForm> linear_combination(std::span<const HomForm> forms, std::span<const Rational> c);

/// Q(M y) where x_i = sum_k matrix[i][k] y_k.
HomForm substitute_linear(const HomForm& Q, const std::vector<std::vector<Rational>>& matrix);

Rational evaluate(const HomForm& Q, const ProjectivePoint& x);

/// ||Q||_v = max_I ||a_I||_v.
ExactPositive form_local_norm(const HomForm& Q, const Place& v);

struct FormNorms {
  std::map<Place, ExactPositive> norms;  // only places where ||Q||_v != 1
  HeightKernel height;
};

FormNorms norms_and_height(const HomForm& Q);

/// H(Q) from the coprime-integer normalization (max |c_I|).
HeightKernel form_height_primitive(const HomForm& Q);

/// ||x||_v^d ||Q||_v / ||Q(x)||_v, so lambda_{Q,v}(x) = log of the result.
/// Throws DomainError("point on hypersurface") if Q(x) = 0.
ExactPositive weil_multiplier(const HomForm& Q, const Place& v, std::span<const Rational> raw_x);
ExactPositive weil_multiplier(const HomForm& Q, const Place& v, const ProjectivePoint& x);

/// Places where some factor of the Weil multiplier can differ from 1.
std::set<Place> contributing_places(const HomForm& Q, const ProjectivePoint& x);

/// Product of weil_multiplier over contributing_places; equals H(x)^d H(Q).
Rational first_main_identity(const HomForm& Q, const ProjectivePoint& x);

/// ((1/a_{i,(d_i,0..0)}) Q_i)^{d/d_i} with d = lcm of the degrees.
/// Throws DomainError("coordinate change required") on a zero leading coefficient.
std::vector<HomForm> tilde_normalize(std::span<const HomForm> family);

/// Unimodular shear x = M y with M e_0 = (1, c_1, ..., c_n) and M e_k = e_k.
struct CoordinateChange {
  std::vector<Integer> shift;  // c_1..c_n

  bool is_identity() const;
  HomForm apply(const HomForm& Q) const;
  /// y = M^{-1} x.
  std::vector<Rational> pull_back(std::span<const Rational> x) const;
};

/// First shear (identity first, then radius-major lex order on c) making every
/// coefficient at (d_i,0..0) nonzero. Throws DomainError if max_radius is exceeded.
CoordinateChange find_coordinate_change(std::span<const HomForm> family, unsigned max_radius = 8);

/// Calls visit(c) for every c in {-r..r}^len with sup-norm exactly r, lexicographically
/// ascending, for r = 1..max_radius (r = 0 first when include_zero). Stops when visit returns true.
template <typename Visit>
bool enumerate_integer_vectors(std::size_t len, unsigned max_radius, bool include_zero, Visit&& visit);

}  // namespace schmidt

#include "schmidt/detail/enumerate.ipp"
