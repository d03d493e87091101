#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>

namespace rssiloc {

/// Planar point, coordinates in cm.
struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2D operator+(Point2D a, Point2D b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2D operator-(Point2D a, Point2D b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2D operator*(double s, Point2D p) { return {s * p.x, s * p.y}; }
  friend constexpr bool operator==(Point2D, Point2D) = default;
};

inline double distance(Point2D a, Point2D b) { return std::hypot(a.x - b.x, a.y - b.y); }

inline bool is_finite(Point2D p) { return std::isfinite(p.x) && std::isfinite(p.y); }

struct Circle {
  Point2D center;
  double radius = 0.0;
};

namespace geometry_tolerance {
/// Centers closer than this are treated as coincident.
inline constexpr double kCoincidentCenters = 1e-9;
/// |h^2| at or below this is tangency (cm^2).
inline constexpr double kTangencyBandSq = 1e-12;
/// Candidate distance sums closer than this are a tie.
inline constexpr double kTie = 1e-9;
}  // namespace geometry_tolerance

enum class IntersectionKind { TwoPoints, Tangent, NoIntersection };

/// Result of intersecting two circles. NoIntersection carries the midpoint of
/// the two centers, which the estimator uses in place of an intersection.
class IntersectionOutcome {
 public:
  static IntersectionOutcome two_points(Point2D first, Point2D second);
  static IntersectionOutcome tangent(Point2D point);
  static IntersectionOutcome none(Point2D midpoint);

  IntersectionKind kind() const { return kind_; }
  std::span<const Point2D> points() const { return {points_.data(), count_}; }
  /// Only set for NoIntersection.
  std::optional<Point2D> fallback_midpoint() const { return midpoint_; }

 private:
  IntersectionOutcome() = default;

  IntersectionKind kind_ = IntersectionKind::NoIntersection;
  std::array<Point2D, 2> points_{};
  std::size_t count_ = 0;
  std::optional<Point2D> midpoint_;
};

/// Intersects two circles. Throws Error{CoincidentCenters} when the centers
/// are within kCoincidentCenters of each other. Disjoint and nested circles
/// both yield NoIntersection.
IntersectionOutcome circle_intersection(const Circle& a, const Circle& b);

/// Picks the outcome's representative point: the intersection point with the
/// smaller sum of distances to `other_anchors`, ties (and an empty anchor
/// list) going to the smaller y, then the smaller x.
Point2D select_candidate(const IntersectionOutcome& outcome, std::span<const Point2D> other_anchors);

/// Same as above, but scores each intersection point by the summed range
/// residual |distance(p, center) - radius| against `other_circles`.
Point2D select_candidate(const IntersectionOutcome& outcome, std::span<const Circle> other_circles);

/// Component-wise mean, summed in input order. Throws Error{EmptyInput}.
Point2D centroid(std::span<const Point2D> points);

}  // namespace rssiloc
