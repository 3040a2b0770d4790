#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "schmidt/arith.hpp"
#include "schmidt/family.hpp"
#include "schmidt/places.hpp"

namespace schmidt {

struct CampaignConfig {
  std::size_t n = 1;
  std::size_t N = 1;
  Rational epsilon;
  Rational epsilon_prime = 1;
  std::vector<Place> places;  // S, sorted, duplicate-free
  long alpha_min = 0;
  long alpha_max = 0;
  unsigned precision_bits = 128;
  MovingFamily family;
  PointSequence points;
  unsigned probe_degree = 1;
  Rational smallness_threshold{1, 20};
  /// alphas handed to check_position; defaults to the two ends and the midpoint.
  std::vector<long> position_samples;
  /// Degree-1 family, bound constant n+1+eps instead of (N-n+1)(n+1)+eps.
  bool hyperplane_mode = false;

  Rational bound_constant() const;
  std::vector<long> alphas() const;
};

/// Validates and builds a config from a JSON document. Every failure is a
/// ConfigError whose message starts with the offending field path.
CampaignConfig parse_family_spec(const std::string& json_text);
CampaignConfig load_config(const std::string& path);

/// Switches to the degree-1 bound; ConfigError if some form has degree > 1.
void enable_hyperplane_mode(CampaignConfig& cfg);

}  // namespace schmidt
