#pragma once

#include <optional>
#include <span>

namespace rssiloc {

/// Received power in dBm.
struct PowerDbm {
  double value = 0.0;
  friend constexpr auto operator<=>(PowerDbm, PowerDbm) = default;
};

/// Distance in cm; positive wherever the library produces one.
struct DistanceCm {
  double value = 0.0;
  friend constexpr auto operator<=>(DistanceCm, DistanceCm) = default;
};

/// Dimensionless log-distance path-loss exponent.
struct PathLossExponent {
  double value = 0.0;
  friend constexpr auto operator<=>(PathLossExponent, PathLossExponent) = default;
};

namespace pathloss {

/// |log10(r_j / r_i)| at or below this means the distances are equal.
inline constexpr double kEqualDistanceLog = 1e-9;

/// Exponent from two (power, distance) readings taken at the same spot:
/// (p_i - p_j) / (10 log10(r_j / r_i)). Throws EqualDistances when the two
/// distances coincide, NonPositiveDistance for r <= 0.
PathLossExponent alpha_from_pair(PowerDbm p_i, DistanceCm r_i, PowerDbm p_j, DistanceCm r_j);

/// Arithmetic mean. Throws EmptyInput.
PathLossExponent aggregate_alpha(std::span<const PathLossExponent> alphas);

/// Inverts the log-distance model against one reference reading:
/// ref_r * 10^((ref_p - p_k) / (10 alpha)). Throws NonPositiveAlpha.
DistanceCm distance_from_power(PowerDbm p_k, PowerDbm ref_p, DistanceCm ref_r, PathLossExponent alpha_hat);

/// Arithmetic mean. Throws EmptyInput.
DistanceCm aggregate_distance(std::span<const DistanceCm> estimates);

/// Forward model: ref_p - 10 alpha log10(r / ref_r).
PowerDbm power_at_distance(PowerDbm ref_p, DistanceCm ref_r, DistanceCm r, PathLossExponent alpha);

/// Optional plausibility window for individual exponent samples; a missing
/// bound is open.
struct AlphaFilter {
  std::optional<double> min;
  std::optional<double> max;

  bool enabled() const { return min.has_value() || max.has_value(); }
  bool accepts(PathLossExponent alpha) const {
    return (!min || alpha.value >= *min) && (!max || alpha.value <= *max);
  }
};

}  // namespace pathloss
}  // namespace rssiloc
