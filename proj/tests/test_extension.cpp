#include <doctest.h>

#include <cmath>

#include "conelab/extension.hpp"
#include "conelab/test_fields.hpp"
#include "helpers.hpp"

using namespace conelab;

namespace {
auto grid() { return testing::cone(2, 0.96, 40.0, 4e-11, 48); }
}  // namespace

TEST_CASE("restriction undoes extension on aligned grids") {
  auto g = grid();
  for (const auto& s : smooth_suite()) {
    const Field f = make_test_field(g, s);
    const Field back = restrict_to_cone(extension_parts(f).total, g);
    for (std::size_t i = 0; i < f.size(); ++i) REQUIRE(back.values()[i] == doctest::Approx(f.values()[i]).epsilon(1e-12));
  }
}

TEST_CASE("extension of a radial field is radial") {
  auto g = grid();
  const Field f = make_test_field(g, "radial_exp");
  const auto parts = extension_parts(f);
  CHECK(lp_norm(parts.plus, NormSpec{INFINITY}) <= 1e-15);
  CHECK(lp_norm(parts.minus, NormSpec{INFINITY}) <= 1e-15);
  const auto row = extension_row(f, 1.0);
  CHECK(row.gate == "ok");
  CHECK(row.ratio == doctest::Approx(2.0).epsilon(1e-6));  // |S^1| / |caps| = 2pi / pi
}

TEST_CASE("xi parts stay inside the enlarged cones") {
  auto g = grid();
  const Field f = make_test_field(g, "angular_bump(1)");
  const auto parts = extension_parts(f);
  const double wide = BilipschitzConeMap::for_cone(g->domain().half_angle).target_half_angle();
  CHECK(support_leak(parts.plus, Side::Plus, wide) == 0.0);
  CHECK(support_leak(parts.minus, Side::Minus, wide) == 0.0);
}

TEST_CASE("admissibility gates") {
  auto g = grid();
  const Field jump = make_test_field(g, "jump");
  CHECK(extension_row(jump, 1.5).gate == "ok");
  CHECK(extension_row(jump, 2.0).gate == "hat-divergent");
  CHECK(extension_row(jump, 3.0).gate == "vertex-jump");
  CHECK_THROWS_AS(extend(jump, 2.0), DivergenceError);
  const Field lc = make_test_field(g, "logcounter(1)");
  CHECK(extension_row(lc, 2.0).gate == "ok");
  CHECK(extension_row(lc, 3.0).gate == "source-divergent");
  CHECK(extension_row(make_test_field(g, "constant(0)"), 2.0).gate == "zero");
}

TEST_CASE("hat gate on the logarithmic counterexample") {
  auto g = testing::cone(2, 0.98, 40.0, 4e-11, 96);
  CHECK(hat_gate(make_test_field(g, "logcounter(1)")).accepted);
  CHECK_FALSE(hat_gate(make_test_field(g, "logcounter(0.5)")).accepted);
  CHECK_FALSE(hat_gate(make_test_field(g, "logcounter(0.25)")).accepted);
}

TEST_CASE("non-aligned cone round trip is close") {
  auto g = testing::cone(2, 0.96, 40.0, 4e-11, 48, 0.6);
  const auto row = extension_row(make_test_field(g, "angular_bump(1)"), 1.0);
  CHECK(row.roundtrip_err <= 0.02);
}

TEST_CASE("explicit quadrant formula") {
  auto f = [](double x, double y) { return x + y; };
  CHECK(quadrant_formula(f, 1.0, -1.0) == 0.0);
  CHECK(quadrant_formula(f, 2.0, 3.0) == 5.0);
  // (x^2 f(x,-y) + y^2 f(-x,y)) / (x^2 + y^2) at (2,-1): (4*3 + 1*(-3)) / 5
  CHECK(quadrant_formula(f, 2.0, -1.0) == doctest::Approx(9.0 / 5.0));
  CHECK_THROWS_AS(quadrant_formula(f, 0.0, 0.0), std::domain_error);
}

TEST_CASE("quadrant extension glues continuously") {
  GridSpec s;
  s.q = 0.96;
  s.J = 48;
  auto g = std::make_shared<PolarGrid>(PolarGrid::cone(ConeDomain::quadrant(), s));
  const Field f = make_test_field(g, "angular_bump(1)");
  const Field E = extend_quadrant_2d(f);
  const auto seams = quadrant_seams(E);
  CHECK(seams.seam_jump <= 2 * seams.interior_step);
  const Field back = restrict_to_cone(E, g);
  for (std::size_t i = 0; i < f.size(); ++i) REQUIRE(back.values()[i] == f.values()[i]);
  CHECK_THROWS_AS(extend_quadrant_2d(make_test_field(grid(), "jump")), std::invalid_argument);
}
