#include "schmidt/position.hpp"

#include <algorithm>
#include <numeric>

#include "schmidt/errors.hpp"
#include "schmidt/linalg.hpp"

namespace schmidt {

namespace {

void require_same_dimension(std::span<const HomForm> forms) {
  if (forms.empty()) throw DomainError("empty form list");
  for (const auto& F : forms) {
    if (F.n() != forms.front().n()) throw DomainError("forms live in different dimensions");
  }
}

bool common_degree(std::span<const HomForm> forms) {
  return std::all_of(forms.begin(), forms.end(), [&](const HomForm& F) { return F.degree() == forms.front().degree(); });
}

// Emptiness of the common zero set for any list of at least n+1 forms.
bool empty_zero_set(std::span<const HomForm> forms) {
  const std::size_t n = forms.front().n();
  if (forms.size() < n + 1) return false;
  if (forms.size() == n + 1 || common_degree(forms)) {
    return macaulay_map_rank(forms, macaulay_bound(forms)).surjective();
  }
  const auto lifted = to_common_degree(forms);
  return macaulay_map_rank(lifted, macaulay_bound(lifted)).surjective();
}

// All k-subsets of {0..m-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t m, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > m) return out;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// Hyperplane sets for the section certifier: coordinate hyperplanes first,
// then consecutive Vandermonde hyperplanes sum_i m^i x_i.
std::vector<std::vector<HomForm>> hyperplane_sets(std::size_t n, std::size_t k, std::size_t limit) {
  std::vector<std::vector<HomForm>> sets;
  for (const auto& subset : subsets(n + 1, k)) {
    std::vector<HomForm> hs;
    for (auto i : subset) {
      std::vector<Rational> c(n + 1, 0);
      c[i] = 1;
      hs.push_back(HomForm::linear(c));
    }
    sets.push_back(std::move(hs));
    if (sets.size() >= limit) return sets;
  }
  for (long m = 1; sets.size() < limit; ++m) {
    std::vector<HomForm> hs;
    for (std::size_t s = 0; s < k; ++s) {
      std::vector<Rational> c(n + 1);
      Rational p = 1;
      for (std::size_t i = 0; i <= n; ++i) {
        c[i] = p;
        p *= m + static_cast<long>(s);
      }
      hs.push_back(HomForm::linear(c));
    }
    sets.push_back(std::move(hs));
  }
  return sets;
}

}  // namespace

MacaulayRank macaulay_map_rank(std::span<const HomForm> forms, unsigned D) {
  require_same_dimension(forms);
  const std::size_t n = forms.front().n();
  for (const auto& F : forms) {
    if (F.degree() > D) throw DomainError("Macaulay degree below a form degree");
  }
  const MonomialBasis target(n, D);
  linalg::SpanBuilder span(target.size());
  for (const auto& F : forms) {
    for (const auto& g : enumerate_Td(n, D - F.degree())) {
      span.insert(F.times_monomial(g).primitive_dense(target));
      if (span.dim() == target.size()) return {span.dim(), target.size()};
    }
  }
  return {span.dim(), target.size()};
}

unsigned macaulay_bound(std::span<const HomForm> forms) {
  require_same_dimension(forms);
  const std::size_t n = forms.front().n();
  if (forms.size() == n + 1) {
    unsigned sum = 0;
    for (const auto& F : forms) sum += F.degree() - 1;
    return sum + 1;
  }
  if (!common_degree(forms)) throw DomainError("Macaulay bound needs a common degree or exactly n+1 forms");
  return static_cast<unsigned>((n + 1) * (forms.front().degree() - 1) + 1);
}

bool only_trivial_zero(std::span<const HomForm> forms) {
  require_same_dimension(forms);
  const std::size_t n = forms.front().n();
  if (forms.size() < n + 1) throw DomainError("fewer than n+1 forms always share a nontrivial zero");
  if (forms.size() != n + 1 && !common_degree(forms)) throw DomainError("only_trivial_zero needs a common degree");
  return macaulay_map_rank(forms, macaulay_bound(forms)).surjective();
}

Rational sylvester_resultant(const HomForm& f, const HomForm& g) {
  if (f.n() != 1 || g.n() != 1) throw DomainError("Sylvester resultant needs binary forms");
  const std::size_t a = f.degree(), b = g.degree();
  const std::size_t size = a + b;
  std::vector<std::vector<Rational>> rows;
  for (std::size_t r = 0; r < b; ++r) {
    std::vector<Rational> row(size, 0);
    for (std::size_t i = 0; i <= a; ++i) row[r + i] = f.coefficient({static_cast<unsigned>(a - i), static_cast<unsigned>(i)});
    rows.push_back(std::move(row));
  }
  for (std::size_t r = 0; r < a; ++r) {
    std::vector<Rational> row(size, 0);
    for (std::size_t i = 0; i <= b; ++i) row[r + i] = g.coefficient({static_cast<unsigned>(b - i), static_cast<unsigned>(i)});
    rows.push_back(std::move(row));
  }
  linalg::IntMatrix m;
  Rational scale = 1;
  for (const auto& row : rows) {
    Integer den = 1;
    for (const auto& x : row) den = lcm(den, x.get_den());
    linalg::IntVector iv;
    for (const auto& x : row) iv.push_back(x.get_num() * (den / x.get_den()));
    scale *= den;
    m.push_back(std::move(iv));
  }
  Rational det(linalg::determinant(std::move(m)));
  return det / scale;
}

bool certify_dimension_at_most(std::span<const HomForm> forms, int bound) {
  require_same_dimension(forms);
  const std::size_t n = forms.front().n();
  if (bound >= static_cast<int>(n) - 1) return true;  // any nonzero form cuts a hypersurface
  if (bound < -1) return false;
  const auto k = static_cast<std::size_t>(bound + 1);
  if (k == 0) return forms.size() >= n + 1 && empty_zero_set(forms);
  if (forms.size() + k < n + 1) return false;
  for (const auto& hs : hyperplane_sets(n, k, 32)) {
    std::vector<HomForm> all(forms.begin(), forms.end());
    all.insert(all.end(), hs.begin(), hs.end());
    if (empty_zero_set(all)) return true;
  }
  return false;
}

std::vector<HomForm> to_common_degree(std::span<const HomForm> forms) {
  try {
    return tilde_normalize(forms);
  } catch (const DomainError&) {
  }
  Integer d = 1;
  for (const auto& F : forms) d = lcm(d, Integer(F.degree()));
  std::vector<HomForm> out;
  for (const auto& F : forms) out.push_back(F.pow(static_cast<unsigned>(d.get_ui()) / F.degree()));
  return out;
}

std::string PositionVerdict::mode_name() const {
  switch (mode) {
    case Mode::general:
      return "general";
    case Mode::subgeneral:
      return "N_subgeneral(" + std::to_string(N) + ")";
    case Mode::fails:
      break;
  }
  return "fails";
}

PositionVerdict check_position(const MovingFamily& family, std::size_t N, std::span<const long> samples) {
  const std::size_t n = family.n();
  if (N < n) throw DomainError("N must be at least n");
  if (family.q() < N + 1) throw DomainError("need q >= N+1 forms");
  if (samples.empty()) throw DomainError("check_position needs at least one sample");
  PositionVerdict verdict;
  verdict.N = N;
  bool all_certified = true;
  for (const auto& subset : subsets(family.q(), N + 1)) {
    bool certified = false;
    std::vector<long> failed;
    for (long alpha : samples) {
      bool pass = false;
      try {
        const auto forms = family.at(alpha);
        std::vector<HomForm> chosen;
        for (auto j : subset) chosen.push_back(forms[j]);
        pass = only_trivial_zero(to_common_degree(chosen));
      } catch (const DomainError&) {
        pass = false;
      }
      if (pass) {
        certified = true;
      } else {
        failed.push_back(alpha);
      }
    }
    if (!failed.empty()) verdict.failed_samples.emplace_back(subset, failed);
    if (!certified && all_certified) {
      all_certified = false;
      verdict.witness_subset = subset;
      verdict.witness_alpha = samples.back();
    }
  }
  verdict.certified_weakly = all_certified;
  verdict.mode = !all_certified ? PositionVerdict::Mode::fails
                                : (N == n ? PositionVerdict::Mode::general : PositionVerdict::Mode::subgeneral);
  return verdict;
}

ReductionResult reduce_to_general(std::span<const HomForm> Q, std::size_t n, std::size_t N,
                                  const ReduceOptions& options) {
  require_same_dimension(Q);
  if (Q.front().n() != n) throw DomainError("forms do not live in P^n");
  if (N < n) throw DomainError("N must be at least n");
  if (Q.size() != N + 1) throw DomainError("reduce_to_general needs exactly N+1 forms");
  if (!common_degree(Q)) throw DomainError("reduce_to_general needs a common degree");
  if (!only_trivial_zero(Q)) throw PositionError("not in subgeneral position: the N+1 forms share a common zero");

  ReductionResult result;
  result.forms.push_back(Q[0]);
  for (std::size_t t = 2; t <= n + 1; ++t) {
    const std::size_t last = N - n + t;  // P_t uses Q_2..Q_last
    const std::size_t len = last - 1;
    std::optional<std::vector<Rational>> chosen;
    std::optional<HomForm> chosen_form;
    enumerate_integer_vectors(len, options.max_radius, false, [&](const std::vector<long>& c) {
      std::vector<Rational> coeffs(c.begin(), c.end());
      const auto P = linear_combination(Q.subspan(1, len), coeffs);
      if (!P) return false;
      std::vector<HomForm> partial = result.forms;
      partial.push_back(*P);
      if (!certify_dimension_at_most(partial, static_cast<int>(n) - static_cast<int>(t))) return false;
      chosen = std::move(coeffs);
      chosen_form = *P;
      return true;
    });
    if (!chosen) {
      throw PositionError("search exhausted at t=" + std::to_string(t) + " within radius " +
                          std::to_string(options.max_radius));
    }
    std::vector<Rational> row(N, 0);
    std::copy(chosen->begin(), chosen->end(), row.begin());
    result.coefficients.push_back(std::move(row));
    result.forms.push_back(std::move(*chosen_form));
  }
  if (!only_trivial_zero(result.forms)) throw ConsistencyError("reduced family failed the final emptiness test");
  return result;
}

}  // namespace schmidt
