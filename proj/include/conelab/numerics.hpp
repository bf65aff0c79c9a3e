#pragma once
// Small numerical helpers shared across modules.

#include <algorithm>
#include <cmath>
#include <numbers>

namespace conelab {

inline constexpr double kPi = std::numbers::pi;

/// Quintic smoothstep 6t^5 - 15t^4 + 10t^3 clamped to [0, 1]; C^2 at both ends.
inline double smoothstep(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}

inline double smoothstep_derivative(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return 30.0 * t * t * (t - 1.0) * (t - 1.0);
}

/// 1 on (-inf, a], 0 on [b, inf), quintic transition in between.
inline double step_down(double x, double a, double b) { return 1.0 - smoothstep((x - a) / (b - a)); }

}  // namespace conelab
