#pragma once
// Double cones, their half-cones, balls of a half-cone, and the angle-stretching
// map and homogeneous cutoff used to extend functions off a half-cone.
//
// Conventions. In R^n the "+" half-cone has its axis along e_n, except for the
// planar quadrant variant {xy > 0} whose "+" axis points along (1, 1)/sqrt(2).
// The "-" half-cone is the point reflection x -> -x of the "+" one.

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace conelab {

using Point = std::vector<double>;

enum class ConeVariant { Axisymmetric, Quadrant };
enum class Side { Plus, Minus };

inline double side_sign(Side s) { return s == Side::Plus ? 1.0 : -1.0; }

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ConeDomain {
  int n = 2;
  double half_angle = 0.7853981633974483;  // pi/4
  ConeVariant variant = ConeVariant::Axisymmetric;

  /// The cone x_1^2 + ... + x_{n-1}^2 < x_n^2.
  static ConeDomain standard(int n);
  /// The planar double quadrant {xy > 0}.
  static ConeDomain quadrant();

  /// Throws std::invalid_argument unless n in {2, 3} and 0 < half_angle < pi/2.
  void validate() const;

  /// Planar polar angle (math convention) of the "+" axis. n = 2 only.
  double axis_angle() const;

  /// Unsigned angle between x and the axis of the given half-cone, in [0, pi].
  double angle_from_axis(std::span<const double> x, Side side) const;

  std::optional<Side> side_of(std::span<const double> x) const;
  bool contains(std::span<const double> x) const { return side_of(x).has_value(); }

  /// Angular measure of one cap Omega_+ ∩ S^{n-1}: 2w for n = 2, 2 pi (1 - cos w) for n = 3.
  double cap_measure() const;
  /// Surface measure of the unit sphere S^{n-1}.
  double sphere_measure() const;
};

/// Lebesgue measure of B(center, radius) ∩ Omega_+.
///
/// Closed forms are used for balls centred at the vertex and for balls that lie
/// inside the half-cone; everything else is integrated over the radius with
/// adaptive Gauss-Kronrod, splitting the integrand at its kinks.
double ball_measure(const ConeDomain& cone, std::span<const double> center, double radius);

/// ball_measure(2r) / ball_measure(r).
double doubling_ratio(const ConeDomain& cone, std::span<const double> center, double radius);

/// The norm-preserving map psi_+ : x -> (sin(2w t/pi)/sin t * x', cos(2w t/pi)/cos t * x_n),
/// t = angle(x, e_n). It sends the half-space {x_n > 0} onto the half-cone of
/// half-angle w and the cone of half-angle pi(w + eps)/(2w) onto the cone of
/// half-angle w + eps. In polar form it multiplies the polar angle by 2w/pi.
struct BilipschitzConeMap {
  double omega = 0.7853981633974483;
  double enlargement = 0.1;

  /// eps = min(0.1, (pi/2 - w)/2).
  static BilipschitzConeMap for_cone(double omega);
  static double default_enlargement(double omega);

  double angular_factor() const;       // 2w / pi
  double source_half_angle() const;    // pi (w + eps) / (2 w)
  double target_half_angle() const;    // w + eps

  /// Throws std::domain_error for points outside the enlarged half-space.
  Point forward(std::span<const double> x) const;
  /// Throws std::domain_error for points outside the enlarged half-cone.
  Point inverse(std::span<const double> y) const;
};

/// Degree-0 homogeneous cutoff m(x) = profile(angle(x, e_n)): 1 up to inner_angle,
/// quintic transition, 0 from outer_angle on. m(0) = 0.
struct HomogeneousCutoff {
  double inner_angle = 1.5707963267948966;
  double outer_angle = 2.0;

  /// Cutoff on the half-space side of psi_+: 1 on {x_n >= 0}, supported in the
  /// enlarged half-space.
  static HomogeneousCutoff for_map(const BilipschitzConeMap& map);

  double profile(double theta) const;
  double profile_derivative(double theta) const;
  double value(std::span<const double> x) const;
};

}  // namespace conelab
