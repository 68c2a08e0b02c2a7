#pragma once

#include <numbers>

namespace ril {

inline constexpr double kPi = std::numbers::pi;

/// Wraps an angle to (-pi, pi].
double wrap_angle(double angle);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Planar robot pose. The constructor stores theta wrapped to (-pi, pi];
/// code that assigns `theta` directly is responsible for wrapping.
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Pose() = default;
  Pose(double x_m, double y_m, double theta_rad) : x(x_m), y(y_m), theta(wrap_angle(theta_rad)) {}

  Point2 position() const { return {x, y}; }
};

double distance(const Point2& a, const Point2& b);
double distance(const Pose& a, const Pose& b);

/// Bearing of `target` as seen from `from`, in the robot frame, wrapped to
/// (-pi, pi]. Defined as 0 when the points coincide.
double relative_bearing(const Pose& from, const Point2& target);

}  // namespace ril
