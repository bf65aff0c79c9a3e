#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "conelab/cz.hpp"
#include "conelab/rearrangement.hpp"
#include "conelab/test_fields.hpp"
#include "helpers.hpp"

using namespace conelab;

TEST_CASE("decomposition invariants on the coarse grid") {
  auto g = testing::coarse();
  const Field f = make_test_field(g, "logcounter(1)");
  const Field M = maximal_function(f);
  const double top = *std::max_element(M.values().begin(), M.values().end());
  for (double scale : {1e-1, 1e-3}) {
    CZParams prm;
    prm.alpha = top * scale;
    const auto res = decompose(f, M, prm);
    const auto rep = verify(f, res);
    CHECK(rep.n_balls > 0);
    CHECK(rep.rec_err <= 1e-10);
    CHECK(rep.underline_disjoint);
    CHECK(rep.plain_cover_U);
    CHECK(rep.overline_meets_F);
    CHECK(rep.partition_err <= 1e-12);
    CHECK(rep.overlap_N <= 20);
    CHECK(std::isfinite(rep.eg_ratio));
    // g + sum b_i = f
    const Field rec = res.good + res.bad_sum();
    for (std::size_t i = 0; i < f.size(); ++i) REQUIRE(rec.values()[i] == doctest::Approx(f.values()[i]));
  }
}

TEST_CASE("maximal function dominates the density") {
  auto g = testing::coarse();
  const Field f = make_test_field(g, "angular_bump(0.25)");
  const Field h = cz_density(f), M = maximal_function(f);
  for (std::size_t i = 0; i < f.size(); ++i) REQUIRE(M.values()[i] >= h.values()[i] * (1 - 1e-12));
}

TEST_CASE("level parameters") {
  CZParams p;
  CHECK(p.C2() == 16.0);
  CHECK(p.psi(0.5) == 1.0);
  CHECK(p.psi(3.0) == 0.0);
  p.alpha = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("a level below every value is degenerate") {
  auto g = testing::coarse();
  const Field f = make_test_field(g, "radial_exp");
  CZParams prm;
  prm.alpha = 1e-300;
  CHECK_THROWS_AS(decompose(f, prm), DegenerateLevelError);
}

TEST_CASE("CZ upper bound on the K-functional") {
  auto g = testing::coarse();
  const Field f = make_test_field(g, "radial_exp");
  const auto tables = SobolevTables::build(f);
  for (double t : {1e-2, 1.0, 1e2}) {
    const double up = k_upper_via_cz(f, t);
    CHECK(up >= k_l1_linf(tables.f, t) * (1 - 1e-12));
    CHECK(up / k_sobolev_estimate(tables, t) < 50.0);
  }
}
