#include <doctest.h>

#include <cmath>
#include <vector>

#include "conelab/rearrangement.hpp"
#include "conelab/test_fields.hpp"
#include "helpers.hpp"

using namespace conelab;

TEST_CASE("decreasing rearrangement of a step function") {
  const std::vector<double> v{3, -1, 4, 1}, w{1, 1, 1, 1};
  const auto t = RearrangementTable::build(v, w);
  CHECK(t.f_star(0.5) == 4.0);
  CHECK(t.f_star(1.5) == 3.0);
  CHECK(t.f_star(5.0) == 0.0);
  CHECK(k_l1_linf(t, 2.0) == doctest::Approx(7.0));
  CHECK(t.f_star_star(2.0) == doctest::Approx(3.5));
  CHECK(t.distribution(1.0) == doctest::Approx(2.0));
  CHECK(t.lp_norm(2.0) == doctest::Approx(std::sqrt(27.0)));
  CHECK(t.lp_norm(INFINITY) == 4.0);
}

TEST_CASE("K(f, t; L1, Linf) matches the truncation search") {
  const std::vector<double> v{2.0, -0.5, 1.25, 3.0, 0.1}, w{0.3, 1.0, 0.7, 0.2, 2.0};
  const auto t = RearrangementTable::build(v, w);
  for (double s : {0.01, 0.25, 0.6, 1.0, 10.0})
    CHECK(k_l1_linf(t, s) == doctest::Approx(k_l1_linf_truncation_search(v, w, s)).epsilon(1e-12));
  // the optimal truncation beats a crude split
  const std::vector<double> g{1.0, -0.5, 1.0, 1.0, 0.1};
  CHECK(k_l1_linf_cost(v, g, w, 0.6) >= k_l1_linf(t, 0.6) - 1e-12);
}

TEST_CASE("rearrangement keeps L^p norms, including cells at tiny radii") {
  auto g = testing::cone(2, 0.95, 40.0, 1e-12, 16);
  for (const char* name : {"radial_power(0.5)", "logcounter(0.25)"}) {
    const Field f = make_test_field(g, name);
    const auto t = RearrangementTable::build(f);
    for (double p : {1.0, 2.0})
      CHECK(t.lp_norm(p) == doctest::Approx(lp_norm(f, NormSpec{p})).epsilon(1e-12));
  }
}

TEST_CASE("Hardy bound for f**") {
  const std::vector<double> v{5, 4, 1, 0.5, 0.25}, w{0.1, 0.5, 1, 2, 4};
  const auto t = RearrangementTable::build(v, w);
  for (double p : {1.5, 2.0, 4.0}) CHECK(t.f_star_star_lp_norm(p) <= p / (p - 1) * t.lp_norm(p));
  CHECK_THROWS_AS(t.f_star_star_lp_norm(1.0), std::invalid_argument);
}

TEST_CASE("Sobolev K estimate grows with t and saturates") {
  auto g = testing::coarse();
  const Field f = make_test_field(g, "radial_exp");
  const auto tables = SobolevTables::build(f);
  double prev = 0.0;
  for (double t : {1e-3, 1e-2, 1e-1, 1.0, 10.0}) {
    const double k = k_sobolev_estimate(tables, t);
    CHECK(k > prev);
    prev = k;
  }
}
