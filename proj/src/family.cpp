#include "schmidt/family.hpp"

#include <type_traits>

#include "schmidt/errors.hpp"

namespace schmidt {

AlphaPolynomial::AlphaPolynomial(std::vector<Integer> ascending) : coeffs_(std::move(ascending)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Integer AlphaPolynomial::operator()(long alpha) const {
  Integer acc = 0;
  const Integer a(alpha);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * a + *it;
  return acc;
}

std::vector<long> AlphaPolynomial::roots_in(long lo, long hi) const {
  std::vector<long> roots;
  for (long a = lo; a <= hi; ++a) {
    if ((*this)(a) == 0) roots.push_back(a);
  }
  return roots;
}

MovingCoefficient MovingCoefficient::constant(const Rational& c) {
  return ratio(AlphaPolynomial({c.get_num()}), AlphaPolynomial({c.get_den()}));
}

MovingCoefficient MovingCoefficient::ratio(AlphaPolynomial num, AlphaPolynomial den) {
  if (den.is_zero()) throw DomainError("moving coefficient with zero denominator");
  return MovingCoefficient(Ratio{std::move(num), std::move(den)});
}

MovingCoefficient MovingCoefficient::table(long alpha_min, std::vector<Rational> values) {
  return MovingCoefficient(Table{alpha_min, std::move(values)});
}

Rational MovingCoefficient::operator()(long alpha) const {
  if (const auto* r = std::get_if<Ratio>(&repr_)) {
    const Integer den = r->den(alpha);
    if (den == 0) throw DomainError("denominator root at alpha=" + std::to_string(alpha));
    Rational q(r->num(alpha), den);
    q.canonicalize();
    return q;
  }
  const auto& t = std::get<Table>(repr_);
  const long k = alpha - t.alpha_min;
  if (k < 0 || k >= static_cast<long>(t.values.size())) {
    throw DomainError("no tabulated coefficient at alpha=" + std::to_string(alpha));
  }
  return t.values[static_cast<std::size_t>(k)];
}

bool MovingCoefficient::identically_zero() const {
  if (const auto* r = std::get_if<Ratio>(&repr_)) return r->num.is_zero();
  const auto& t = std::get<Table>(repr_);
  for (const auto& v : t.values) {
    if (v != 0) return false;
  }
  return true;
}

std::optional<HomForm> MovingForm::at(std::size_t n, long alpha) const {
  HomForm::Coefficients c;
  for (const auto& [I, a] : terms) c[I] += a(alpha);
  return HomForm::make(n, degree, std::move(c));
}

MovingFamily::MovingFamily(std::size_t n, std::vector<MovingForm> forms) : n_(n), forms_(std::move(forms)) {
  if (forms_.empty()) throw DomainError("empty family");
  for (const auto& f : forms_) {
    if (f.degree == 0) throw DomainError("moving form of degree 0");
    bool nonzero = false;
    for (const auto& [I, a] : f.terms) {
      if (I.size() != n + 1 || I.degree() != f.degree) throw DomainError("moving form term has wrong shape");
      nonzero = nonzero || !a.identically_zero();
    }
    if (!nonzero) throw DomainError("moving form with identically zero coefficients");
  }
}

MovingFamily MovingFamily::constant(std::span<const HomForm> forms) {
  if (forms.empty()) throw DomainError("empty family");
  std::vector<MovingForm> out;
  for (const auto& Q : forms) {
    MovingForm f;
    f.degree = Q.degree();
    for (const auto& [I, a] : Q.coefficients()) f.terms.emplace_back(I, MovingCoefficient::constant(a));
    out.push_back(std::move(f));
  }
  return MovingFamily(forms.front().n(), std::move(out));
}

std::vector<unsigned> MovingFamily::degrees() const {
  std::vector<unsigned> d;
  for (const auto& f : forms_) d.push_back(f.degree);
  return d;
}

std::vector<HomForm> MovingFamily::at(long alpha) const {
  std::vector<HomForm> out;
  out.reserve(forms_.size());
  for (std::size_t j = 0; j < forms_.size(); ++j) {
    auto Q = forms_[j].at(n_, alpha);
    if (!Q) {
      throw DomainError("form " + std::to_string(j + 1) + " vanishes identically at alpha=" + std::to_string(alpha));
    }
    out.push_back(std::move(*Q));
  }
  return out;
}

PointSequence PointSequence::explicit_list(long alpha_min, std::vector<std::vector<Rational>> points) {
  if (points.empty()) throw DomainError("empty explicit point list");
  for (const auto& p : points) {
    if (p.size() != points.front().size() || p.size() < 2) throw DomainError("explicit points have inconsistent dimension");
  }
  return PointSequence(Explicit{alpha_min, std::move(points)});
}

PointSequence PointSequence::exponential(std::vector<Integer> bases) {
  if (bases.size() < 2) throw DomainError("exponential sequence needs at least two bases");
  for (const auto& b : bases) {
    if (b <= 0) throw DomainError("exponential bases must be positive");
  }
  return PointSequence(Exponential{std::move(bases)});
}

PointSequence PointSequence::polynomial(std::vector<AlphaPolynomial> coordinates) {
  if (coordinates.size() < 2) throw DomainError("polynomial sequence needs at least two coordinates");
  return PointSequence(Polynomial{std::move(coordinates)});
}

std::size_t PointSequence::n() const {
  return std::visit(
      [](const auto& r) -> std::size_t {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Explicit>) return r.points.front().size() - 1;
        else if constexpr (std::is_same_v<T, Exponential>) return r.bases.size() - 1;
        else return r.coordinates.size() - 1;
      },
      repr_);
}

std::vector<Rational> PointSequence::raw(long alpha) const {
  return std::visit(
      [alpha](const auto& r) -> std::vector<Rational> {
        using T = std::decay_t<decltype(r)>;
        std::vector<Rational> out;
        if constexpr (std::is_same_v<T, Explicit>) {
          const long k = alpha - r.alpha_min;
          if (k < 0 || k >= static_cast<long>(r.points.size())) {
            throw DomainError("no explicit point at alpha=" + std::to_string(alpha));
          }
          out = r.points[static_cast<std::size_t>(k)];
        } else if constexpr (std::is_same_v<T, Exponential>) {
          for (const auto& b : r.bases) {
            const Rational base(b);
            out.push_back(alpha >= 0 ? pow(base, static_cast<unsigned long>(alpha))
                                     : 1 / pow(base, static_cast<unsigned long>(-alpha)));
          }
        } else {
          for (const auto& c : r.coordinates) out.emplace_back(c(alpha));
        }
        return out;
      },
      repr_);
}

ProjectivePoint PointSequence::at(long alpha) const {
  const auto r = raw(alpha);
  return ProjectivePoint::from_raw(std::span<const Rational>(r));
}

}  // namespace schmidt
