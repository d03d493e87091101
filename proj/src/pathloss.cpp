#include "rssiloc/pathloss.hpp"

#include <cmath>
#include <string>

#include "rssiloc/error.hpp"

namespace rssiloc::pathloss {

namespace {

void require_positive(DistanceCm r, const char* what) {
  if (!(r.value > 0.0) || !std::isfinite(r.value)) {
    throw Error(ErrorCode::NonPositiveDistance,
                std::string(what) + " must be a positive distance, got " + std::to_string(r.value));
  }
}

void require_positive(PathLossExponent alpha) {
  if (!(alpha.value > 0.0) || !std::isfinite(alpha.value)) {
    throw Error(ErrorCode::NonPositiveAlpha,
                "path-loss exponent must be positive, got " + std::to_string(alpha.value));
  }
}

}  // namespace

PathLossExponent alpha_from_pair(PowerDbm p_i, DistanceCm r_i, PowerDbm p_j, DistanceCm r_j) {
  require_positive(r_i, "r_i");
  require_positive(r_j, "r_j");
  const double log_ratio = std::log10(r_j.value / r_i.value);
  if (std::abs(log_ratio) <= kEqualDistanceLog) {
    throw Error(ErrorCode::EqualDistances, "reference distances are equal; exponent undefined");
  }
  return {(p_i.value - p_j.value) / (10.0 * log_ratio)};
}

PathLossExponent aggregate_alpha(std::span<const PathLossExponent> alphas) {
  if (alphas.empty()) throw Error(ErrorCode::EmptyInput, "no exponent samples to average");
  double sum = 0.0;
  for (const auto& a : alphas) sum += a.value;
  return {sum / static_cast<double>(alphas.size())};
}

DistanceCm distance_from_power(PowerDbm p_k, PowerDbm ref_p, DistanceCm ref_r, PathLossExponent alpha_hat) {
  require_positive(alpha_hat);
  require_positive(ref_r, "reference distance");
  return {ref_r.value * std::pow(10.0, (ref_p.value - p_k.value) / (10.0 * alpha_hat.value))};
}

DistanceCm aggregate_distance(std::span<const DistanceCm> estimates) {
  if (estimates.empty()) throw Error(ErrorCode::EmptyInput, "no distance estimates to average");
  double sum = 0.0;
  for (const auto& r : estimates) sum += r.value;
  return {sum / static_cast<double>(estimates.size())};
}

PowerDbm power_at_distance(PowerDbm ref_p, DistanceCm ref_r, DistanceCm r, PathLossExponent alpha) {
  require_positive(ref_r, "reference distance");
  require_positive(r, "distance");
  require_positive(alpha);
  return {ref_p.value - 10.0 * alpha.value * std::log10(r.value / ref_r.value)};
}

}  // namespace rssiloc::pathloss
