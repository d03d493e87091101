#include "rssiloc/geometry.hpp"

#include <string>

#include "rssiloc/error.hpp"

namespace rssiloc {

IntersectionOutcome IntersectionOutcome::two_points(Point2D first, Point2D second) {
  IntersectionOutcome out;
  out.kind_ = IntersectionKind::TwoPoints;
  out.points_ = {first, second};
  out.count_ = 2;
  return out;
}

IntersectionOutcome IntersectionOutcome::tangent(Point2D point) {
  IntersectionOutcome out;
  out.kind_ = IntersectionKind::Tangent;
  out.points_[0] = point;
  out.count_ = 1;
  return out;
}

IntersectionOutcome IntersectionOutcome::none(Point2D midpoint) {
  IntersectionOutcome out;
  out.kind_ = IntersectionKind::NoIntersection;
  out.midpoint_ = midpoint;
  return out;
}

IntersectionOutcome circle_intersection(const Circle& a, const Circle& b) {
  const double dx = b.center.x - a.center.x;
  const double dy = b.center.y - a.center.y;
  const double d = std::hypot(dx, dy);
  if (!(d > geometry_tolerance::kCoincidentCenters)) {
    throw Error(ErrorCode::CoincidentCenters,
                "circle centers coincide (d=" + std::to_string(d) + " cm)");
  }

  // l: distance from a's center to the chord along the center line.
  // h: half chord length.
  const double l = (a.radius * a.radius - b.radius * b.radius + d * d) / (2.0 * d);
  const double h_sq = a.radius * a.radius - l * l;

  const double ux = dx / d;
  const double uy = dy / d;
  const Point2D foot{a.center.x + l * ux, a.center.y + l * uy};

  if (h_sq > geometry_tolerance::kTangencyBandSq) {
    const double h = std::sqrt(h_sq);
    return IntersectionOutcome::two_points({foot.x + h * uy, foot.y - h * ux},
                                           {foot.x - h * uy, foot.y + h * ux});
  }
  if (h_sq >= -geometry_tolerance::kTangencyBandSq) {
    return IntersectionOutcome::tangent(foot);
  }
  return IntersectionOutcome::none(0.5 * (a.center + b.center));
}

namespace {

double distance_sum(Point2D p, std::span<const Point2D> anchors) {
  double sum = 0.0;
  for (const Point2D& anchor : anchors) sum += distance(p, anchor);
  return sum;
}

double residual_sum(Point2D p, std::span<const Circle> circles) {
  double sum = 0.0;
  for (const Circle& c : circles) sum += std::abs(distance(p, c.center) - c.radius);
  return sum;
}

bool lower_first(Point2D a, Point2D b) {
  if (a.y != b.y) return a.y < b.y;
  return a.x < b.x;
}

template <typename Score>
Point2D pick(const IntersectionOutcome& outcome, Score score) {
  switch (outcome.kind()) {
    case IntersectionKind::NoIntersection:
      return *outcome.fallback_midpoint();
    case IntersectionKind::Tangent:
      return outcome.points()[0];
    case IntersectionKind::TwoPoints:
      break;
  }
  const Point2D first = outcome.points()[0];
  const Point2D second = outcome.points()[1];
  const double first_score = score(first);
  const double second_score = score(second);
  if (std::abs(first_score - second_score) <= geometry_tolerance::kTie) {
    return lower_first(first, second) ? first : second;
  }
  return first_score < second_score ? first : second;
}

}  // namespace

Point2D select_candidate(const IntersectionOutcome& outcome, std::span<const Point2D> other_anchors) {
  return pick(outcome, [&](Point2D p) { return distance_sum(p, other_anchors); });
}

Point2D select_candidate(const IntersectionOutcome& outcome, std::span<const Circle> other_circles) {
  return pick(outcome, [&](Point2D p) { return residual_sum(p, other_circles); });
}

Point2D centroid(std::span<const Point2D> points) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "centroid of an empty point list");
  double sx = 0.0;
  double sy = 0.0;
  for (const Point2D& p : points) {
    sx += p.x;
    sy += p.y;
  }
  const auto n = static_cast<double>(points.size());
  return {sx / n, sy / n};
}

}  // namespace rssiloc
