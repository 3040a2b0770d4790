#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "schmidt/projgeom.hpp"

namespace schmidt {

/// Integer polynomial in the index alpha, coefficients in ascending powers.
class AlphaPolynomial {
 public:
  AlphaPolynomial() = default;
  explicit AlphaPolynomial(std::vector<Integer> ascending);

  Integer operator()(long alpha) const;
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Integer>& coefficients() const { return coeffs_; }
  /// Integer roots in [lo, hi] (every alpha when the polynomial is zero).
  std::vector<long> roots_in(long lo, long hi) const;

 private:
  std::vector<Integer> coeffs_;  // trailing zeros stripped
};

/// a_{j,I}(alpha): either num(alpha)/den(alpha) or an explicit table of values
/// indexed from alpha_min.
class MovingCoefficient {
 public:
  struct Ratio {
    AlphaPolynomial num, den;
  };
  struct Table {
    long alpha_min = 0;
    std::vector<Rational> values;
  };

  static MovingCoefficient constant(const Rational& c);
  static MovingCoefficient ratio(AlphaPolynomial num, AlphaPolynomial den);
  static MovingCoefficient table(long alpha_min, std::vector<Rational> values);

  /// Throws DomainError at a denominator root or outside a table.
  Rational operator()(long alpha) const;
  bool identically_zero() const;
  const std::variant<Ratio, Table>& repr() const { return repr_; }

 private:
  explicit MovingCoefficient(std::variant<Ratio, Table> r) : repr_(std::move(r)) {}
  std::variant<Ratio, Table> repr_;
};

struct MovingForm {
  unsigned degree = 1;
  std::vector<std::pair<MultiIndex, MovingCoefficient>> terms;

  /// nullopt when every coefficient vanishes at alpha.
  std::optional<HomForm> at(std::size_t n, long alpha) const;
};

/// q moving hypersurfaces Q_1(alpha), ..., Q_q(alpha) in P^n.
class MovingFamily {
 public:
  MovingFamily(std::size_t n, std::vector<MovingForm> forms);
  /// Constant-coefficient family.
  static MovingFamily constant(std::span<const HomForm> forms);

  std::size_t n() const { return n_; }
  std::size_t q() const { return forms_.size(); }
  const std::vector<MovingForm>& forms() const { return forms_; }
  std::vector<unsigned> degrees() const;

  /// Throws DomainError if some Q_j(alpha) is the zero polynomial.
  std::vector<HomForm> at(long alpha) const;

 private:
  std::size_t n_;
  std::vector<MovingForm> forms_;
};

/// x(alpha): explicit list (indexed from alpha_min), exponential
/// (b_0^alpha : ... : b_n^alpha), or polynomial coordinates.
class PointSequence {
 public:
  struct Explicit {
    long alpha_min = 0;
    std::vector<std::vector<Rational>> points;
  };
  struct Exponential {
    std::vector<Integer> bases;
  };
  struct Polynomial {
    std::vector<AlphaPolynomial> coordinates;
  };

  static PointSequence explicit_list(long alpha_min, std::vector<std::vector<Rational>> points);
  static PointSequence exponential(std::vector<Integer> bases);
  static PointSequence polynomial(std::vector<AlphaPolynomial> coordinates);

  std::size_t n() const;
  std::vector<Rational> raw(long alpha) const;
  /// Throws DomainError when the raw coordinates are all zero.
  ProjectivePoint at(long alpha) const;
  const std::variant<Explicit, Exponential, Polynomial>& repr() const { return repr_; }

 private:
  explicit PointSequence(std::variant<Explicit, Exponential, Polynomial> r) : repr_(std::move(r)) {}
  std::variant<Explicit, Exponential, Polynomial> repr_;
};

}  // namespace schmidt
