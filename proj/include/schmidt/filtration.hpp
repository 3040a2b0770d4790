#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "schmidt/arith.hpp"
#include "schmidt/projgeom.hpp"

namespace schmidt {

/// #{(s_1..s_n) : sum s_i <= M, 0 <= s_i <= d-1}; d^n once M >= n(d-1).
Integer lemma33_count(std::size_t n, unsigned d, long M);

/// dim V_L - rank of (g_1..g_n) -> sum g_s P_s, with V_{L-d} as the source.
std::size_t quotient_dim_rank(std::span<const HomForm> P, unsigned L);

/// Exponent tuple (i_1..i_n) of P_1^{i_1}...P_n^{i_n}.
using StaircaseTuple = std::vector<unsigned>;

/// Tuples with sum <= max_norm in ascending lex order: (0,..,0) first,
/// (max_norm,0,..,0) last.
std::vector<StaircaseTuple> staircase_tuples(std::size_t n, unsigned max_norm);

unsigned tuple_norm(const StaircaseTuple& i);

/// One basis vector psi_l = P^{(i)_k} * h_l of V_L.
struct FiltrationBasisElement {
  std::size_t tuple_index = 0;        // k (0-based) into FiltrationData::tuples
  MultiIndex monomial;                // h_l
  std::vector<Rational> coefficients;  // over the graded-lex basis of V_L
};

struct FiltrationData {
  unsigned L = 0;
  unsigned d = 0;
  std::size_t n = 0;
  std::vector<StaircaseTuple> tuples;  // (i)_1 < ... < (i)_K
  std::vector<std::size_t> m;          // jump dimension per tuple
  std::vector<FiltrationBasisElement> basis;

  std::size_t K() const { return tuples.size(); }
  std::size_t u() const { return basis.size(); }
};

/// Staircase basis of V_L from the last tuple downward. Every jump is checked
/// against lemma33_count; a mismatch throws ConsistencyError.
FiltrationData build_filtration(std::span<const HomForm> P, unsigned L);

struct FiltrationStats {
  Integer u;
  Integer K;
  Integer a;
  /// sum_k m_k i_{sk} for each coordinate s; all equal to a.
  std::vector<Integer> a_per_coordinate;
};

/// u, K and a from counts alone (no linear algebra). Throws DomainError if d does not divide L.
FiltrationStats filtration_stats(std::size_t n, unsigned d, unsigned L);

/// (L u + eps') / (d a); nullopt while a = 0.
std::optional<Rational> filtration_ratio(std::size_t n, unsigned d, unsigned L, const Rational& eps_prime);

/// ker(V_{L-d|i|} -> W_(i)/W_(i')) == (P_1..P_n) cap V_{L-d|i|}, both sides
/// computed by exact linear algebra.
bool kernel_claim_check(std::span<const HomForm> P, const StaircaseTuple& i, unsigned L);

struct LChoice {
  unsigned L = 0;
  Rational ratio;  // (L u + eps') / (d a) at the chosen L
  Rational bound;  // (n+1) + eps / (2(N-n+1))
};

/// Smallest L divisible by d with (L u + eps')/(d a) < (n+1) + eps/(2(N-n+1)).
LChoice choose_L(std::size_t n, unsigned d, std::size_t N, const Rational& eps, const Rational& eps_prime = 1);

}  // namespace schmidt
