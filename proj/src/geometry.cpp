#include "conelab/geometry.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>

#include "conelab/numerics.hpp"

namespace conelab {

namespace {

double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

void require_dim(const ConeDomain& cone, std::span<const double> x) {
  if (static_cast<int>(x.size()) != cone.n)
    throw DimensionError("point has " + std::to_string(x.size()) + " coordinates, cone has n = " +
                         std::to_string(cone.n));
}

// Signed planar angle of x measured from the "+" axis, in (-pi, pi].
double signed_plane_angle(const ConeDomain& cone, std::span<const double> x) {
  double a = std::atan2(x[1], x[0]) - cone.axis_angle();
  while (a > kPi) a -= 2.0 * kPi;
  while (a <= -kPi) a += 2.0 * kPi;
  return a;
}

double integrate(const std::function<double(double)>& f, std::vector<double> breaks) {
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] <= breaks[i]) continue;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, breaks[i], breaks[i + 1],
                                                                           12, 1e-12);
  }
  return total;
}

// Radii where the sphere S_r meets B(c, R) in a cap of angular radius gamma.
void add_kinks(std::vector<double>& breaks, double c, double R, double gamma, double lo, double hi) {
  double disc = R * R - c * c * std::sin(gamma) * std::sin(gamma);
  if (disc < 0.0) return;
  for (double r : {c * std::cos(gamma) - std::sqrt(disc), c * std::cos(gamma) + std::sqrt(disc)})
    if (r > lo && r < hi) breaks.push_back(r);
}

// Angular radius of B(c, R) ∩ S_r seen from the origin, for |c| = c > 0.
double cap_radius(double r, double c, double R) {
  double cb = (r * r + c * c - R * R) / (2.0 * r * c);
  return std::acos(std::clamp(cb, -1.0, 1.0));
}

double ball_measure_2d(const ConeDomain& cone, std::span<const double> center, double R) {
  const double w = cone.half_angle;
  const double c = norm(center);
  if (c == 0.0) return w * R * R;
  const double tc = signed_plane_angle(cone, center);
  if (std::abs(tc) < w && c * std::sin(w - std::abs(tc)) >= R) return kPi * R * R;

  auto arc = [&](double r) {
    if (r <= 0.0) return 0.0;
    if (r <= R - c) return 2.0 * w;
    double b = cap_radius(r, c, R);
    double len = std::min(tc + b, w) - std::max(tc - b, -w);
    return std::max(0.0, len) * r;
  };
  double lo = std::max(0.0, c - R), hi = c + R;
  std::vector<double> breaks{lo, hi};
  if (R - c > lo) breaks.push_back(R - c);
  add_kinks(breaks, c, R, w - tc, lo, hi);
  add_kinks(breaks, c, R, w + tc, lo, hi);
  return integrate(arc, breaks);
}

double ball_measure_3d(const ConeDomain& cone, std::span<const double> center, double R) {
  const double w = cone.half_angle;
  const double c = norm(center);
  if (c == 0.0) return cone.cap_measure() * R * R * R / 3.0;
  const double tc = cone.angle_from_axis(center, Side::Plus);
  if (tc < w && c * std::sin(w - tc) >= R) return 4.0 / 3.0 * kPi * R * R * R;

  const double stc = std::sin(tc), ctc = std::cos(tc);
  // Area on the unit sphere of {polar < w} ∩ {angle to c-hat < b}.
  auto overlap = [&](double b) {
    if (b <= 0.0) return 0.0;
    if (tc + b <= w) return 2.0 * kPi * (1.0 - std::cos(b));
    if (b >= tc + w) return cone.cap_measure();
    if (stc < 1e-14) return 2.0 * kPi * (1.0 - std::cos(std::min(b, w)));
    const double cb = std::cos(b);
    auto ring = [&](double t) {
      double st = std::sin(t);
      if (st <= 0.0) return 0.0;
      double cd = (cb - std::cos(t) * ctc) / (st * stc);
      double len = cd <= -1.0 ? 2.0 * kPi : (cd >= 1.0 ? 0.0 : 2.0 * std::acos(cd));
      return st * len;
    };
    return integrate(ring, {std::max(0.0, tc - b), std::min(w, tc + b)});
  };
  auto shell = [&](double r) {
    if (r <= 0.0) return 0.0;
    if (r <= R - c) return cone.cap_measure() * r * r;
    return overlap(cap_radius(r, c, R)) * r * r;
  };
  double lo = std::max(0.0, c - R), hi = c + R;
  std::vector<double> breaks{lo, hi};
  if (R - c > lo) breaks.push_back(R - c);
  add_kinks(breaks, c, R, w - tc, lo, hi);
  add_kinks(breaks, c, R, w + tc, lo, hi);
  return integrate(shell, breaks);
}

}  // namespace

ConeDomain ConeDomain::standard(int n) {
  ConeDomain d;
  d.n = n;
  d.validate();
  return d;
}

ConeDomain ConeDomain::quadrant() {
  ConeDomain d;
  d.n = 2;
  d.variant = ConeVariant::Quadrant;
  return d;
}

void ConeDomain::validate() const {
  if (n != 2 && n != 3) throw std::invalid_argument("cone dimension must be 2 or 3");
  if (!(half_angle > 0.0 && half_angle < kPi / 2))
    throw std::invalid_argument("half-angle must lie in (0, pi/2)");
  if (variant == ConeVariant::Quadrant && (n != 2 || std::abs(half_angle - kPi / 4) > 1e-15))
    throw std::invalid_argument("the quadrant cone is planar with half-angle pi/4");
}

double ConeDomain::axis_angle() const {
  return variant == ConeVariant::Quadrant ? kPi / 4 : kPi / 2;
}

double ConeDomain::angle_from_axis(std::span<const double> x, Side side) const {
  require_dim(*this, x);
  double r = norm(x);
  if (r == 0.0) return 0.0;
  double dot;
  if (n == 2) {
    double a = axis_angle();
    dot = x[0] * std::cos(a) + x[1] * std::sin(a);
  } else {
    dot = x[n - 1];
  }
  dot *= side_sign(side);
  return std::acos(std::clamp(dot / r, -1.0, 1.0));
}

std::optional<Side> ConeDomain::side_of(std::span<const double> x) const {
  require_dim(*this, x);
  if (norm(x) == 0.0) return std::nullopt;
  if (angle_from_axis(x, Side::Plus) < half_angle) return Side::Plus;
  if (angle_from_axis(x, Side::Minus) < half_angle) return Side::Minus;
  return std::nullopt;
}

double ConeDomain::cap_measure() const {
  return n == 2 ? 2.0 * half_angle : 2.0 * kPi * (1.0 - std::cos(half_angle));
}

double ConeDomain::sphere_measure() const { return n == 2 ? 2.0 * kPi : 4.0 * kPi; }

double ball_measure(const ConeDomain& cone, std::span<const double> center, double radius) {
  require_dim(cone, center);
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  if (norm(center) > 0.0 && cone.angle_from_axis(center, Side::Plus) > cone.half_angle + 1e-12)
    throw std::invalid_argument("ball center must lie in the closed half-cone");
  return cone.n == 2 ? ball_measure_2d(cone, center, radius) : ball_measure_3d(cone, center, radius);
}

double doubling_ratio(const ConeDomain& cone, std::span<const double> center, double radius) {
  double small = ball_measure(cone, center, radius);
  if (!(small > 0.0)) throw std::invalid_argument("degenerate ball");
  return ball_measure(cone, center, 2.0 * radius) / small;
}

BilipschitzConeMap BilipschitzConeMap::for_cone(double omega) {
  return BilipschitzConeMap{omega, default_enlargement(omega)};
}

double BilipschitzConeMap::default_enlargement(double omega) {
  return std::min(0.1, (kPi / 2 - omega) / 2);
}

double BilipschitzConeMap::angular_factor() const { return 2.0 * omega / kPi; }
double BilipschitzConeMap::source_half_angle() const { return kPi * (omega + enlargement) / (2.0 * omega); }
double BilipschitzConeMap::target_half_angle() const { return omega + enlargement; }

namespace {

// Rotates x about the origin in the plane spanned by e_n and x, setting its
// polar angle to new_theta while keeping |x|.
Point set_polar_angle(std::span<const double> x, double r, double new_theta) {
  const std::size_t n = x.size();
  Point y(n, 0.0);
  double perp = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) perp += x[i] * x[i];
  perp = std::sqrt(perp);
  double s = r * std::sin(new_theta);
  if (perp > 0.0)
    for (std::size_t i = 0; i + 1 < n; ++i) y[i] = x[i] / perp * s;
  y[n - 1] = r * std::cos(new_theta);
  return y;
}

}  // namespace

Point BilipschitzConeMap::forward(std::span<const double> x) const {
  double r = norm(x);
  if (r == 0.0) return Point(x.size(), 0.0);
  double theta = std::acos(std::clamp(x.back() / r, -1.0, 1.0));
  if (theta > source_half_angle() * (1.0 + 1e-12))
    throw std::domain_error("point lies outside the enlarged half-space");
  return set_polar_angle(x, r, theta * angular_factor());
}

Point BilipschitzConeMap::inverse(std::span<const double> y) const {
  double r = norm(y);
  if (r == 0.0) return Point(y.size(), 0.0);
  double theta = std::acos(std::clamp(y.back() / r, -1.0, 1.0));
  if (theta > target_half_angle() * (1.0 + 1e-12))
    throw std::domain_error("point lies outside the enlarged half-cone");
  return set_polar_angle(y, r, theta / angular_factor());
}

HomogeneousCutoff HomogeneousCutoff::for_map(const BilipschitzConeMap& map) {
  return HomogeneousCutoff{kPi / 2, map.source_half_angle()};
}

double HomogeneousCutoff::profile(double theta) const { return step_down(theta, inner_angle, outer_angle); }

double HomogeneousCutoff::profile_derivative(double theta) const {
  return -smoothstep_derivative((theta - inner_angle) / (outer_angle - inner_angle)) /
         (outer_angle - inner_angle);
}

double HomogeneousCutoff::value(std::span<const double> x) const {
  double r = norm(x);
  if (r == 0.0) return 0.0;
  return profile(std::acos(std::clamp(x.back() / r, -1.0, 1.0)));
}

}  // namespace conelab
