#include "schmidt/linalg.hpp"

#include <utility>

#include "schmidt/errors.hpp"

namespace schmidt::linalg {

void make_primitive(IntVector& v) {
  Integer g = 0;
  for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1) {
    for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
}

IntVector primitive(std::span<const Rational> v) {
  Integer den = 1;
  for (const auto& a : v) den = lcm(den, a.get_den());
  IntVector out;
  out.reserve(v.size());
  for (const auto& a : v) out.push_back(a.get_num() * (den / a.get_den()));
  make_primitive(out);
  return out;
}

ReducedEchelon fraction_free_rref(IntMatrix m, std::size_t cols) {
  for (const auto& row : m) {
    if (row.size() != cols) throw DomainError("ragged matrix");
  }
  ReducedEchelon e;
  e.cols = cols;
  Integer prev = 1;
  std::size_t r = 0;
  Integer t;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    // pivot on the row with the smallest nonzero entry in this column
    std::size_t best = m.size();
    for (std::size_t i = r; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      if (best == m.size() || mpz_cmpabs(m[i][c].get_mpz_t(), m[best][c].get_mpz_t()) < 0) best = i;
    }
    if (best == m.size()) continue;
    std::swap(m[r], m[best]);
    const Integer pivot = m[r][c];
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r) continue;
      const Integer factor = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) {
        if (j == c) continue;
        // m[i][j] = (pivot * m[i][j] - factor * m[r][j]) / prev, exact
        mpz_mul(t.get_mpz_t(), pivot.get_mpz_t(), m[i][j].get_mpz_t());
        mpz_submul(t.get_mpz_t(), factor.get_mpz_t(), m[r][j].get_mpz_t());
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    e.pivots.push_back(c);
    prev = pivot;
    ++r;
  }
  e.rank = r;
  e.pivot_value = prev;
  m.resize(r);
  e.rows = std::move(m);
  return e;
}

std::size_t rank(const IntMatrix& m, std::size_t cols) {
  SpanBuilder span(cols);
  for (const auto& row : m) span.insert(row);
  return span.dim();
}

Integer determinant(IntMatrix m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw DomainError("determinant of a non-square matrix");
  }
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  Integer t;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_mul(t.get_mpz_t(), m[k][k].get_mpz_t(), m[i][j].get_mpz_t());
        mpz_submul(t.get_mpz_t(), m[i][k].get_mpz_t(), m[k][j].get_mpz_t());
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

IntMatrix nullspace(const IntMatrix& m, std::size_t cols) {
  const auto e = fraction_free_rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  IntMatrix basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    IntVector v(cols, 0);
    v[f] = e.pivot_value;
    for (std::size_t r = 0; r < e.rank; ++r) v[e.pivots[r]] = -e.rows[r][f];
    make_primitive(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

bool same_row_space(const IntMatrix& a, const IntMatrix& b, std::size_t cols) {
  SpanBuilder sa(cols);
  for (const auto& row : a) sa.insert(row);
  SpanBuilder sb(cols);
  for (const auto& row : b) sb.insert(row);
  if (sa.dim() != sb.dim()) return false;
  for (const auto& row : b) {
    if (!sa.contains(row)) return false;
  }
  return true;
}

void SpanBuilder::reduce(IntVector& v) const {
  Integer t;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::size_t c = lead_[r];
    if (v[c] == 0) continue;
    const Integer& pivot = rows_[r][c];
    Integer g;
    mpz_gcd(g.get_mpz_t(), pivot.get_mpz_t(), v[c].get_mpz_t());
    const Integer a = pivot / g;
    const Integer b = v[c] / g;
    // v <- a*v - b*row clears column c without fractions
    for (std::size_t j = 0; j < cols_; ++j) {
      mpz_mul(t.get_mpz_t(), a.get_mpz_t(), v[j].get_mpz_t());
      mpz_submul(t.get_mpz_t(), b.get_mpz_t(), rows_[r][j].get_mpz_t());
      v[j] = t;
    }
    make_primitive(v);
  }
}

bool SpanBuilder::insert(IntVector v) {
  if (v.size() != cols_) throw DomainError("vector length does not match span");
  reduce(v);
  std::size_t c = 0;
  while (c < cols_ && v[c] == 0) ++c;
  if (c == cols_) return false;
  // keep rows sorted by leading column so that reduction is a single pass
  std::size_t pos = 0;
  while (pos < lead_.size() && lead_[pos] < c) ++pos;
  // rows after pos have larger leading columns; v has zeros on all earlier leads
  rows_.insert(rows_.begin() + static_cast<long>(pos), std::move(v));
  lead_.insert(lead_.begin() + static_cast<long>(pos), c);
  return true;
}

bool SpanBuilder::contains(IntVector v) const {
  if (v.size() != cols_) throw DomainError("vector length does not match span");
  reduce(v);
  for (const auto& c : v) {
    if (c != 0) return false;
  }
  return true;
}

}  // namespace schmidt::linalg
