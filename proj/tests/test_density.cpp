#include <doctest.h>

#include <cmath>

#include "conelab/density.hpp"
#include "conelab/test_fields.hpp"
#include "helpers.hpp"

using namespace conelab;

TEST_CASE("profiles") {
  CHECK(chi(0.0) == 1.0);
  CHECK(chi(0.5) == 1.0);
  CHECK(chi(1.0) == 0.0);
  CHECK(chi(0.75) == doctest::Approx(0.5));
  CHECK(chi_derivative(0.2) == 0.0);
  // derivative by central differences
  const double h = 1e-6;
  CHECK(chi_derivative(0.7) == doctest::Approx((chi(0.7 + h) - chi(0.7 - h)) / (2 * h)).epsilon(1e-6));
  CHECK(eta(0.5, 0.1) == 1.0);
  CHECK(eta(0.01, 0.1) == doctest::Approx(0.5));
  CHECK(eta_derivative(0.01, 0.1) == doctest::Approx((eta(0.01 + 1e-9, 0.1) - eta(0.01 - 1e-9, 0.1)) / 2e-9).epsilon(1e-5));
}

TEST_CASE("approximants vanish near the vertex") {
  auto g = testing::cone(2, 0.9, 8.0, 1e-8, 8);
  const Field f = make_test_field(g, "lipschitz_compact");
  const double eps = 1e-3;
  for (const Field& a : {vertex_cutoff(f, eps), log_corrector(f, eps, 2.0)}) {
    for (int k = 0; k < g->K(); ++k)
      if (g->r(k) <= eps / 2)
        for (int j = 0; j < g->J(); ++j) REQUIRE(a.at(0, k, j) == 0.0);
    CHECK(*a.vertex_plus == 0.0);
  }
  CHECK_THROWS_AS(vertex_cutoff(f, 1e-9), std::invalid_argument);  // below the grid
}

TEST_CASE("p = 1 cutoff error decays linearly in eps") {
  auto g = testing::cone(2, 0.95, 40.0, 1e-131, 8);
  const Field f = make_test_field(g, "lipschitz_compact");
  std::vector<ApproxParams> sweep;
  std::vector<double> eps, err;
  for (int m = 2; m <= 6; ++m) sweep.push_back({std::pow(10.0, -m), 1.0, 1.0});
  for (const auto& row : convergence_table(f, 1.0, ApproxMode::Cutoff, sweep)) {
    eps.push_back(row.eps);
    err.push_back(row.lp_err + row.grad_err);
  }
  CHECK(log_log_slope(eps, err) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("k times ||eta grad chi||_2 does not depend on k") {
  auto g = testing::cone(2, 0.95, 40.0, 1e-131, 8);
  const double base = 2.0 * eta_grad_chi_norm(*g, 1e-100, 2.0, 2.0);
  for (double k : {4.0, 8.0}) CHECK(k * eta_grad_chi_norm(*g, 1e-100, k, 2.0) == doctest::Approx(base).epsilon(0.05));
}

TEST_CASE("truncation converges in L^p") {
  auto g = testing::cone(2, 0.9, 8.0, 1e-8, 8);
  const Field f = make_test_field(g, "radial_power(-0.45)");
  std::vector<ApproxParams> sweep;
  for (double N : {1.0, 4.0, 16.0}) sweep.push_back({1e-3, 1.0, N});
  const auto rows = convergence_table(f, 1.0, ApproxMode::Truncate, sweep);
  CHECK(rows[2].lp_err < rows[0].lp_err);
  CHECK(rows[1].trend == "decreasing");
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((ApproxParams{1.5, 1.0, 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ApproxParams{0.1, 0.5, 1.0}.validate()), std::invalid_argument);
  CHECK((ApproxParams{1e-4, 2.0, 1.0}.delta()) == doctest::Approx(1e-2));
}
