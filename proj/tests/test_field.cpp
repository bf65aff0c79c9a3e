#include <doctest.h>

#include <cmath>
#include <sstream>

#include "conelab/field.hpp"
#include "conelab/field_io.hpp"
#include "conelab/test_fields.hpp"
#include "helpers.hpp"

using namespace conelab;

namespace {
auto fine() { return testing::cone(2, 0.98, 40.0, 4e-11, 96); }
}  // namespace

TEST_CASE("norms of r exp(-r) on the planar double cone") {
  auto g = fine();
  const Field f = make_test_field(g, "radial_exp");
  // angular measure pi in total, int r^2 e^-r dr = 2, int r e^-r dr = 1
  CHECK(lp_norm(f, NormSpec{1.0}) == doctest::Approx(2 * M_PI).epsilon(1e-3));
  CHECK(lp_norm(f, NormSpec{1.0, Weight::InverseR}) == doctest::Approx(M_PI).epsilon(1e-3));
  CHECK(lp_norm(f, NormSpec{INFINITY}) == doctest::Approx(std::exp(-1.0)).epsilon(1e-3));
}

TEST_CASE("Hardy quotient of r exp(-r) at p = 2") {
  // ||f/r||_2^2 = pi/4, ||f'||_2^2 = pi/8
  CHECK(hardy_quotient(make_test_field(fine(), "radial_exp"), 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-4));
}

TEST_CASE("gradient is exact on r^2") {
  auto g = testing::coarse();
  const Field f = Field::sample(g, [](const Node& n) { return n.r * n.r; });
  const auto gr = gradient(f);
  for (int b = 0; b < g->block_count(); ++b)
    for (int k = 0; k < g->K(); ++k)
      for (int j = 0; j < g->J(); ++j) {
        const auto i = g->index(b, k, j);
        REQUIRE(gr.radial[i] == doctest::Approx(2 * g->r(k)).epsilon(1e-10));
        REQUIRE(std::abs(gr.angular[i]) <= 1e-12 * g->r(k));
      }
}

TEST_CASE("constants have zero gradient down to tiny radii") {
  auto g = testing::cone(2, 0.95, 40.0, 1e-131, 8);
  const auto gr = gradient(Field::sample(g, [](const Node&) { return 3.0; }));
  for (double v : gr.magnitude()) REQUIRE(v == 0.0);
}

TEST_CASE("radial split") {
  auto g = testing::coarse();
  const Field f = make_test_field(g, "jump");
  const auto sp = radial_split(f);
  for (double m : ring_means(sp.anti_radial)) CHECK(std::abs(m) <= 1e-14);
  // the odd jump field has zero ring means, so f_a = f
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(sp.anti_radial.values()[i] == doctest::Approx(f.values()[i]));
  const Field r = make_test_field(g, "radial_exp");
  CHECK(lp_norm(radial_split(r).anti_radial, NormSpec{INFINITY}) <= 1e-15);
}

TEST_CASE("Neumann Poincare constant on a cap is 1/pi") {
  auto g = fine();
  const double w = g->domain().half_angle;
  const Field f = Field::sample(g, [w](const Node& n) { return n.r * std::sin(M_PI * n.theta / (2 * w)); });
  CHECK(poincare_cap_ratio(f, 0, 100, 2.0) == doctest::Approx(1 / M_PI).epsilon(1e-3));
  const Field c = Field::sample(g, [](const Node&) { return 1.0; });
  CHECK(poincare_cap_ratio(c, 0, 100, 2.0) == 0.0);
}

TEST_CASE("divergence fit recovers 1 - 2 beta") {
  auto g = testing::cone(2, 0.98, 1.0, 1e-13, 16);
  const auto rmins = decade_table(4, 12);
  for (double beta : {0.25, 0.4}) {
    const Field f = make_test_field(g, "logcounter(" + std::to_string(beta) + ")");
    const auto fit = fit_divergence(partial_integrals(*g, f.values(), 2.0, Weight::InverseR, rmins));
    CHECK(fit.exponent == doctest::Approx(1 - 2 * beta).epsilon(0.05));
  }
}

TEST_CASE("field dump round trip") {
  auto g = testing::cone(2, 0.8, 4.0, 1e-2, 6);
  const Field f = make_test_field(g, "angular_bump(1)");
  std::stringstream ss;
  write_field_dump(ss, f);
  const Field back = read_field_dump(ss);
  REQUIRE(back.size() == f.size());
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(back.values()[i] == doctest::Approx(f.values()[i]).epsilon(1e-12));
  std::stringstream bad("n=2\nomega=oops\n");
  CHECK_THROWS_AS(read_field_dump(bad), std::runtime_error);
}

TEST_CASE("test field names") {
  CHECK(TestFieldSpec::parse("logcounter(0.25)").param == 0.25);
  CHECK(TestFieldSpec::parse("jump").label() == "jump");
  CHECK_THROWS_AS(TestFieldSpec::parse("jump(1"), std::invalid_argument);
  CHECK_THROWS_AS(make_test_field(testing::coarse(), "nope"), std::invalid_argument);
}
