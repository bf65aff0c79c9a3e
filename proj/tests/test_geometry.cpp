#include <doctest.h>

#include <cmath>

#include "conelab/geometry.hpp"
#include "conelab/grid.hpp"
#include "helpers.hpp"

using namespace conelab;

TEST_CASE("cone grid cells tile the sector") {
  auto g = testing::cone(2, 0.98, 40.0, 4e-11, 96);
  const double w = g->domain().half_angle;
  double area = 0.0;
  for (int k = 0; k < g->K(); ++k)
    for (int j = 0; j < g->J(); ++j) area += g->measures()[g->index(0, k, j)];
  const double r_hi = g->r_hi(0), r_lo = g->r_lo(g->K() - 1);
  CHECK(area == doctest::Approx(w * (r_hi * r_hi - r_lo * r_lo)).epsilon(1e-12));
  // pi/4 R^2 for the quarter-plane sector up to the outer cell edge
  CHECK(area == doctest::Approx(M_PI / 4 * r_hi * r_hi).epsilon(1e-12));
}

TEST_CASE("balls centred at the vertex double exactly") {
  const double c2[2]{0.0, 0.0}, c3[3]{0.0, 0.0, 0.0};
  CHECK(doubling_ratio(ConeDomain::standard(2), c2, 1.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(doubling_ratio(ConeDomain::standard(3), c3, 0.3) == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("interior ball has full measure") {
  const double c[2]{0.0, 10.0};
  CHECK(ball_measure(ConeDomain::standard(2), c, 1.0) == doctest::Approx(M_PI).epsilon(1e-6));
}

TEST_CASE("ball straddling the boundary is partial") {
  const double c[2]{1.0, 1.0};  // on the edge x1 = x2
  const double m = ball_measure(ConeDomain::standard(2), c, 0.5);
  CHECK(m == doctest::Approx(M_PI * 0.25 / 2).epsilon(1e-6));
}

TEST_CASE("domain validation") {
  ConeDomain d = ConeDomain::standard(2);
  d.half_angle = M_PI / 2;
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  CHECK_THROWS(ConeDomain::standard(4).validate());
}

TEST_CASE("psi preserves norms and inverts") {
  const auto map = BilipschitzConeMap::for_cone(M_PI / 4);
  CHECK(map.angular_factor() == doctest::Approx(0.5));
  for (double t : {0.0, 0.3, 1.0, 1.5, 1.7}) {
    const double x[2]{2.5 * std::sin(t), 2.5 * std::cos(t)};
    const auto y = map.forward(x);
    CHECK(std::hypot(y[0], y[1]) == doctest::Approx(2.5).epsilon(1e-14));
    // polar angle is scaled by 2w/pi
    CHECK(std::atan2(y[0], y[1]) == doctest::Approx(t * 0.5).epsilon(1e-14));
    const auto back = map.inverse(y);
    CHECK(back[0] == doctest::Approx(x[0]).epsilon(1e-13));
    CHECK(back[1] == doctest::Approx(x[1]).epsilon(1e-13));
  }
  const double outside[2]{0.0, -1.0};
  CHECK_THROWS_AS(map.forward(outside), std::domain_error);
}

TEST_CASE("cutoff is homogeneous of degree zero") {
  const auto cut = HomogeneousCutoff::for_map(BilipschitzConeMap::for_cone(M_PI / 4));
  for (double t : {0.2, 1.6, 1.65, 1.75}) {
    const double x[2]{std::sin(t), std::cos(t)}, y[2]{1e3 * std::sin(t), 1e3 * std::cos(t)};
    CHECK(cut.value(x) == doctest::Approx(cut.value(y)).epsilon(1e-14));
  }
  CHECK(cut.profile(0.0) == 1.0);
  CHECK(cut.profile(M_PI / 2) == 1.0);
  CHECK(cut.profile(cut.outer_angle) == 0.0);
}
