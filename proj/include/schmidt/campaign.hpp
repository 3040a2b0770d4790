#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "schmidt/config.hpp"
#include "schmidt/position.hpp"
#include "schmidt/report.hpp"

namespace schmidt {

enum class Exclusion { none, zero_height, on_hypersurface, vanishing_form };
std::string to_string(Exclusion e);

struct InstanceRecord {
  long alpha = 0;
  ProjectivePoint x;
  Exclusion excluded = Exclusion::none;

  /// multipliers[j][k] = weil multiplier of Q_j(alpha) at places[k]; empty unless evaluated.
  std::vector<std::vector<ExactPositive>> multipliers;
  /// permutation[k] lists form indices by non-decreasing ||Q_j(x)||_v at places[k].
  std::vector<std::vector<std::size_t>> permutation;
  Rational H_x;
  std::vector<Rational> H_Q;

  /// lhs = log(lhs_kernel) / lhs_root, with lhs_root = lcm of the degrees.
  std::optional<Rational> lhs_kernel;
  unsigned lhs_root = 1;

  BigFloat h_x;
  std::optional<BigFloat> lhs;
  std::optional<BigFloat> rhs;
  std::optional<BigFloat> ratio;
  std::optional<BigFloat> smallness;
  bool violation = false;

  /// max_i |(1/d) lambda_tilde - (1/d_i) lambda_{Q_i/a}| at the real place;
  /// absent when a leading coefficient vanishes or the real place is not in S.
  std::optional<BigFloat> tilde_discrepancy;
  /// max_i ||Q_i(x)||_v / ||x||_v^d per place of S (common degree only).
  std::vector<Rational> boundedness;
};

/// Excluded instances: h(x) = 0, Q_j(x) = 0, or Q_j(alpha) identically zero.
InstanceRecord evaluate_instance(const CampaignConfig& config, long alpha);

enum class OutputFormat { csv, json };

struct PlaceRange {
  Place place;
  Rational min;
  Rational max;
};

struct CampaignSummary {
  std::size_t instances = 0;
  std::size_t excluded_zero_height = 0;
  std::size_t excluded_on_hypersurface = 0;
  std::size_t excluded_vanishing_form = 0;
  Rational bound_constant;
  std::optional<BigFloat> max_ratio;
  std::optional<long> max_ratio_alpha;
  std::size_t violations = 0;
  std::vector<long> violating_alphas;
  std::vector<long> satisfying_alphas;
  /// Max of the smallness column over the last quartile of evaluated alphas.
  std::optional<BigFloat> smallness_trend;
  PositionVerdict position;
  std::optional<BigFloat> max_tilde_discrepancy;
  std::vector<PlaceRange> boundedness;
};

inline constexpr const char* kCsvHeader = "alpha,h_x,lhs,rhs,ratio,smallness,excluded,lhs_kernel_num,lhs_kernel_den";

std::string csv_row(const InstanceRecord& r);

/// Evaluates every alpha in range and writes rows in ascending alpha.
/// CSV writes the header plus one line per instance; JSON writes one document
/// {"rows": [...], "summary": {...}}.
CampaignSummary run_campaign(const CampaignConfig& config, std::ostream& out, OutputFormat format);

std::string summary_json(const CampaignSummary& s, const CampaignConfig& config);

struct ProbeVerdict {
  bool nondegenerate = false;
  std::size_t rank = 0;
  std::size_t columns = 0;
  /// Vanishing form read off a kernel vector: primitive, first nonzero coefficient positive.
  std::optional<HomForm> witness;
  static constexpr const char* limitation =
      "detects constant-coefficient degeneracy only; relations with coefficients in the moving field are not tested";
};

/// Rank of the matrix with rows (x(alpha)^I)_{I in T_e}. Throws DomainError
/// when fewer than binom(e+n, n) + 2 samples are given.
ProbeVerdict nondegeneracy_probe(const PointSequence& points, unsigned e, std::span<const long> alphas);

struct SmallnessTrend {
  std::size_t form = 0;
  std::vector<long> alphas;  // zero-height instances skipped
  std::vector<BigFloat> ratios;
  /// envelope[k] = max of ratios[k..]; non-increasing.
  std::vector<BigFloat> envelope;
  std::optional<BigFloat> last_quartile_max;
  bool consistent = false;
};

struct SmallnessReport {
  Rational threshold;
  std::vector<SmallnessTrend> per_form;
  bool consistent = false;
};

SmallnessReport smallness_report(const CampaignConfig& config);

}  // namespace schmidt
