#include "schmidt/filtration.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "schmidt/errors.hpp"
#include "schmidt/linalg.hpp"

namespace schmidt {

namespace {

void require_common_shape(std::span<const HomForm> P) {
  if (P.empty()) throw DomainError("filtration needs at least one form");
  for (const auto& F : P) {
    if (F.n() != P.front().n() || F.degree() != P.front().degree()) {
      throw DomainError("filtration forms must share dimension and degree");
    }
  }
  if (P.size() != P.front().n()) throw DomainError("filtration needs exactly n forms in n+1 variables");
}

// Coefficients of (1 + t + ... + t^{d-1})^n up to t^{n(d-1)}.
std::vector<Integer> box_series(std::size_t n, unsigned d) {
  std::vector<Integer> c{1};
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<Integer> next(c.size() + d - 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (unsigned e = 0; e < d; ++e) next[i + e] += c[i];
    }
    c = std::move(next);
  }
  return c;
}

// Cumulative counts: cum[M] = lemma33_count(n, d, M) for M <= n(d-1).
class QuotientCounts {
 public:
  QuotientCounts(std::size_t n, unsigned d) : cum_(box_series(n, d)) {
    std::partial_sum(cum_.begin(), cum_.end(), cum_.begin());
  }
  const Integer& operator()(long M) const {
    static const Integer zero = 0;
    if (M < 0) return zero;
    return cum_[std::min<std::size_t>(static_cast<std::size_t>(M), cum_.size() - 1)];
  }

 private:
  std::vector<Integer> cum_;
};

void fill_tuples(std::size_t pos, unsigned remaining, StaircaseTuple& cur, std::vector<StaircaseTuple>& out) {
  if (pos == cur.size()) {
    out.push_back(cur);
    return;
  }
  for (unsigned e = 0; e <= remaining; ++e) {
    cur[pos] = e;
    fill_tuples(pos + 1, remaining - e, cur, out);
  }
  cur[pos] = 0;
}

// P_1^{i_1} ... P_n^{i_n} * x^h as a dense vector over `basis`; powers cached.
class PowerProducts {
 public:
  PowerProducts(std::span<const HomForm> P) : P_(P.begin(), P.end()), powers_(P.size()) {}

  std::optional<HomForm> product(const StaircaseTuple& i) {
    std::optional<HomForm> acc;
    for (std::size_t s = 0; s < i.size(); ++s) {
      if (i[s] == 0) continue;
      const HomForm& p = power(s, i[s]);
      acc = acc ? (*acc * p) : p;
    }
    return acc;
  }

  HomForm times(const StaircaseTuple& i, const MultiIndex& h) {
    const auto prod = product(i);
    return prod ? prod->times_monomial(h) : HomForm::monomial(h);
  }

 private:
  const HomForm& power(std::size_t s, unsigned e) {
    auto& cache = powers_[s];
    if (cache.empty()) cache.push_back(P_[s]);
    while (cache.size() < e) cache.push_back(cache.back() * P_[s]);
    return cache[e - 1];
  }

  std::vector<HomForm> P_;
  std::vector<std::vector<HomForm>> powers_;
};

}  // namespace

Integer lemma33_count(std::size_t n, unsigned d, long M) {
  if (n == 0 || d == 0) throw DomainError("lemma33_count needs n >= 1 and d >= 1");
  return QuotientCounts(n, d)(M);
}

std::size_t quotient_dim_rank(std::span<const HomForm> P, unsigned L) {
  require_common_shape(P);
  const std::size_t n = P.front().n();
  const unsigned d = P.front().degree();
  const MonomialBasis target(n, L);
  if (L < d) return target.size();
  linalg::SpanBuilder span(target.size());
  for (const auto& F : P) {
    for (const auto& g : enumerate_Td(n, L - d)) span.insert(F.times_monomial(g).primitive_dense(target));
  }
  return target.size() - span.dim();
}

std::vector<StaircaseTuple> staircase_tuples(std::size_t n, unsigned max_norm) {
  std::vector<StaircaseTuple> out;
  StaircaseTuple cur(n, 0);
  fill_tuples(0, max_norm, cur, out);
  return out;
}

unsigned tuple_norm(const StaircaseTuple& i) { return std::accumulate(i.begin(), i.end(), 0u); }

FiltrationData build_filtration(std::span<const HomForm> P, unsigned L) {
  require_common_shape(P);
  const std::size_t n = P.front().n();
  const unsigned d = P.front().degree();
  if (L == 0 || L % d != 0) throw DomainError("build_filtration needs L > 0 divisible by d");

  FiltrationData data;
  data.L = L;
  data.d = d;
  data.n = n;
  data.tuples = staircase_tuples(n, L / d);
  data.m.assign(data.tuples.size(), 0);

  const MonomialBasis target(n, L);
  const QuotientCounts counts(n, d);
  linalg::SpanBuilder span(target.size());
  PowerProducts products(P);
  std::vector<std::vector<FiltrationBasisElement>> per_tuple(data.tuples.size());

  for (std::size_t k = data.tuples.size(); k-- > 0;) {
    const auto& i = data.tuples[k];
    const unsigned residual = L - d * tuple_norm(i);
    for (const auto& h : enumerate_Td(n, residual)) {
      const HomForm psi = products.times(i, h);
      if (!span.insert(psi.primitive_dense(target))) continue;
      per_tuple[k].push_back(FiltrationBasisElement{k, h, psi.dense(target)});
    }
    data.m[k] = per_tuple[k].size();
    const bool last = k + 1 == data.tuples.size();
    const Integer expected = last ? Integer(1) : counts(residual);
    if (Integer(static_cast<unsigned long>(data.m[k])) != expected) {
      throw ConsistencyError("jump dimension " + std::to_string(data.m[k]) + " at tuple " +
                             MultiIndex(i).to_string() + " disagrees with the quotient count " + expected.get_str() +
                             " (position test failure upstream?)");
    }
  }
  if (span.dim() != target.size()) throw ConsistencyError("staircase basis does not span V_L");
  for (auto& group : per_tuple) {
    for (auto& e : group) data.basis.push_back(std::move(e));
  }
  return data;
}

FiltrationStats filtration_stats(std::size_t n, unsigned d, unsigned L) {
  if (n == 0 || d == 0) throw DomainError("filtration_stats needs n >= 1 and d >= 1");
  if (L % d != 0) throw DomainError("filtration_stats needs d | L");
  const unsigned top = L / d;
  const QuotientCounts counts(n, d);
  FiltrationStats stats;
  stats.u = binomial(L + n, n);
  stats.K = binomial(top + n, n);
  stats.a_per_coordinate.assign(n, 0);
  if (stats.K <= 2'000'000) {
    const auto tuples = staircase_tuples(n, top);
    for (std::size_t k = 0; k < tuples.size(); ++k) {
      const bool last = k + 1 == tuples.size();
      const Integer mk = last ? Integer(1) : counts(static_cast<long>(L) - static_cast<long>(d * tuple_norm(tuples[k])));
      for (std::size_t s = 0; s < n; ++s) stats.a_per_coordinate[s] += mk * tuples[k][s];
    }
  } else {
    // Level sums: sum over |i| = l of i_s is l * binom(l+n-1, n-1) / n.
    Integer a = 0;
    for (unsigned l = 0; l <= top; ++l) {
      const Integer level = Integer(l) * binomial(l + n - 1, n - 1) / Integer(static_cast<unsigned long>(n));
      a += (l == top ? Integer(1) : counts(static_cast<long>(L) - static_cast<long>(d * l))) * level;
    }
    stats.a_per_coordinate.assign(n, a);
  }
  stats.a = stats.a_per_coordinate.front();
  return stats;
}

namespace {

Integer level_a(std::size_t n, unsigned d, unsigned L, const QuotientCounts& counts) {
  const unsigned top = L / d;
  Integer a = 0;
  for (unsigned l = 1; l <= top; ++l) {
    const Integer level = Integer(l) * binomial(l + n - 1, n - 1) / Integer(static_cast<unsigned long>(n));
    a += (l == top ? Integer(1) : counts(static_cast<long>(L) - static_cast<long>(d * l))) * level;
  }
  return a;
}

}  // namespace

std::optional<Rational> filtration_ratio(std::size_t n, unsigned d, unsigned L, const Rational& eps_prime) {
  if (L % d != 0) throw DomainError("filtration_ratio needs d | L");
  const Integer a = level_a(n, d, L, QuotientCounts(n, d));
  if (a == 0) return std::nullopt;
  Rational r(Rational(Integer(L) * binomial(L + n, n)) + eps_prime);
  r /= Rational(Integer(d) * a);
  return r;
}

bool kernel_claim_check(std::span<const HomForm> P, const StaircaseTuple& i, unsigned L) {
  require_common_shape(P);
  const std::size_t n = P.front().n();
  const unsigned d = P.front().degree();
  if (i.size() != n) throw DomainError("staircase tuple has wrong length");
  if (L % d != 0 || d * tuple_norm(i) >= L) throw DomainError("kernel claim needs d | L and d|i| < L");

  const auto tuples = staircase_tuples(n, L / d);
  const auto pos = std::find(tuples.begin(), tuples.end(), i);
  if (pos == tuples.end() || pos + 1 == tuples.end()) throw DomainError("tuple has no successor");

  const MonomialBasis target(n, L);
  PowerProducts products(P);

  // W_(i') = sum over (j) >= (i') of P^(j) V_{L - d|j|}
  linalg::SpanBuilder tail(target.size());
  for (auto it = pos + 1; it != tuples.end(); ++it) {
    for (const auto& h : enumerate_Td(n, L - d * tuple_norm(*it))) {
      tail.insert(products.times(*it, h).primitive_dense(target));
    }
  }

  const unsigned residual = L - d * tuple_norm(i);
  const auto source = enumerate_Td(n, residual);
  const std::size_t r = source.size();

  // Columns: images P^(i) * phi_m, then a basis of W_(i'). Kernel of phi is
  // the projection of the nullspace onto the first r coordinates.
  const std::size_t cols = r + tail.dim();
  linalg::IntMatrix system(target.size(), linalg::IntVector(cols, 0));
  for (std::size_t m = 0; m < r; ++m) {
    const auto image = products.times(i, source[m]).primitive_dense(target);
    for (std::size_t row = 0; row < target.size(); ++row) system[row][m] = image[row];
  }
  for (std::size_t b = 0; b < tail.dim(); ++b) {
    for (std::size_t row = 0; row < target.size(); ++row) system[row][r + b] = tail.rows()[b][row];
  }
  linalg::IntMatrix kernel;
  for (auto& v : linalg::nullspace(system, cols)) {
    v.resize(r);
    kernel.push_back(std::move(v));
  }

  linalg::IntMatrix ideal;
  if (residual >= d) {
    const MonomialBasis slice(n, residual);
    for (const auto& F : P) {
      for (const auto& g : enumerate_Td(n, residual - d)) ideal.push_back(F.times_monomial(g).primitive_dense(slice));
    }
  }
  return linalg::same_row_space(kernel, ideal, r);
}

LChoice choose_L(std::size_t n, unsigned d, std::size_t N, const Rational& eps, const Rational& eps_prime) {
  if (n == 0 || d == 0 || N < n) throw DomainError("choose_L needs N >= n >= 1 and d >= 1");
  if (eps <= 0 || eps_prime <= 0) throw DomainError("choose_L needs positive eps and eps'");
  LChoice choice;
  choice.bound = Rational(static_cast<unsigned long>(n + 1)) + eps / Rational(2 * static_cast<unsigned long>(N - n + 1));
  const QuotientCounts counts(n, d);
  for (unsigned L = d; L <= 1'000'000u * d; L += d) {
    const Integer a = level_a(n, d, L, counts);
    if (a == 0) continue;
    Rational ratio(Rational(Integer(L) * binomial(L + n, n)) + eps_prime);
    ratio /= Rational(Integer(d) * a);
    if (ratio < choice.bound) {
      choice.L = L;
      choice.ratio = ratio;
      return choice;
    }
  }
  throw ConsistencyError("choose_L did not converge");
}

}  // namespace schmidt
