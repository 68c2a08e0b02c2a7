#include "ril/world/pose.hpp"

#include <cmath>

namespace ril {

double wrap_angle(double angle) {
  double r = std::remainder(angle, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double distance(const Point2& a, const Point2& b) { return std::hypot(b.x - a.x, b.y - a.y); }

double distance(const Pose& a, const Pose& b) { return std::hypot(b.x - a.x, b.y - a.y); }

double relative_bearing(const Pose& from, const Point2& target) {
  const double dx = target.x - from.x;
  const double dy = target.y - from.y;
  if (dx == 0.0 && dy == 0.0) return 0.0;
  return wrap_angle(std::atan2(dy, dx) - from.theta);
}

}  // namespace ril
