#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "schmidt/family.hpp"
#include "schmidt/projgeom.hpp"

namespace schmidt {

struct MacaulayRank {
  std::size_t rank = 0;
  std::size_t target_dim = 0;
  bool surjective() const { return rank == target_dim; }
};

/// Rank of (g_i) -> sum g_i F_i from the direct sum of V_{D-d_i} onto V_D.
/// Throws DomainError if D is below some degree or dimensions differ.
MacaulayRank macaulay_map_rank(std::span<const HomForm> forms, unsigned D);

/// Degree at which surjectivity of the Macaulay map decides emptiness:
/// (n+1)(d-1)+1 for a common degree d, sum(d_i-1)+1 for exactly n+1 forms.
unsigned macaulay_bound(std::span<const HomForm> forms);

/// True iff the forms have no common zero in projective space over the
/// algebraic closure. Needs at least n+1 forms, and either a common degree
/// or exactly n+1 forms.
bool only_trivial_zero(std::span<const HomForm> forms);

/// Determinant of the Sylvester matrix of two binary forms.
Rational sylvester_resultant(const HomForm& f, const HomForm& g);

/// Sound certificate that the common zero set of `forms` has projective
/// dimension at most `bound` (bound = -1 means empty): some bound+1
/// hyperplane sections cut it down to nothing. May return false on a set
/// that does satisfy the bound.
bool certify_dimension_at_most(std::span<const HomForm> forms, int bound);

/// Raises the forms to a common degree without changing their zero sets:
/// tilde_normalize when every coefficient at (d_i,0..0) is nonzero, plain
/// powers otherwise.
std::vector<HomForm> to_common_degree(std::span<const HomForm> forms);

struct PositionVerdict {
  enum class Mode { general, subgeneral, fails };
  Mode mode = Mode::fails;
  std::size_t N = 0;
  bool certified_weakly = false;
  /// Failing subset (0-based form indices) and the last sample tried.
  std::optional<std::vector<std::size_t>> witness_subset;
  std::optional<long> witness_alpha;
  /// For every subset, the sampled alphas at which its rank test failed.
  std::vector<std::pair<std::vector<std::size_t>, std::vector<long>>> failed_samples;

  std::string mode_name() const;
};

/// Weak N-subgeneral position via one passing sample per (N+1)-subset.
/// Throws DomainError if q < N+1 or N < n.
PositionVerdict check_position(const MovingFamily& family, std::size_t N, std::span<const long> samples);

struct ReductionResult {
  /// Row t-2 holds c_{t,2..N+1}; entries past N-n+t are zero.
  std::vector<std::vector<Rational>> coefficients;
  std::vector<HomForm> forms;  // P_1..P_{n+1}
};

struct ReduceOptions {
  unsigned max_radius = 6;
};

/// Builds P_1 = Q_1 and P_t = sum_{j=2}^{N-n+t} c_tj Q_j by searching integer
/// vectors c radius-major in lex order. Throws PositionError when the input
/// is not in N-subgeneral position or the search radius runs out.
ReductionResult reduce_to_general(std::span<const HomForm> Q, std::size_t n, std::size_t N,
                                  const ReduceOptions& options = {});

}  // namespace schmidt
