#pragma once
// Library of test fields.
//
// Cone fields (local angle theta from the block axis, side sign s = +1 on the
// "+" half-cone and -1 on the "-" one, phi a quintic cutoff equal to 1 for
// r <= 1/4 and 0 for r >= 1/2):
//   logcounter(beta)   s |ln r|^{-beta} phi(r)
//   radial_exp         r e^{-r}
//   radial_power(a)    r^a e^{-r}
//   angular_bump(a)    r^a e^{-r} cos^2(pi theta / (2 w))
//   jump               s e^{-r}
//   lipschitz_compact  (1 - r)_+ (1 + r cos theta)
//   constant(c)        c
//
// Whole-space fields (Cartesian x, n = 2 or the meridian plane for n = 3):
//   gauss              e^{-|x|^2}
//   gauss_dipole       x_1 e^{-|x|^2}
//   gauss_shifted      e^{-|x - (0.3, 0.4)|^2}
//   gauss_quadrupole   x_1 x_2 e^{-|x|^2}   (x_1 x_n for n = 3)
//   poly_bump          (1 - |x|^2)_+^2 (1 + x_1 + x_n^2)

#include <string>
#include <string_view>
#include <vector>

#include "conelab/field.hpp"

namespace conelab {

struct TestFieldSpec {
  std::string family;
  double param = 0.0;
  bool has_param = false;

  /// Parses "name" or "name(value)". Throws std::invalid_argument.
  static TestFieldSpec parse(std::string_view text);
  std::string label() const;
};

/// Throws std::invalid_argument for unknown names and for whole-space grids.
Field make_test_field(const GridPtr& grid, const TestFieldSpec& spec);
Field make_test_field(const GridPtr& grid, std::string_view text);

/// Whole-space field on any grid; throws std::invalid_argument for unknown names.
Field make_fullspace_field(const GridPtr& grid, std::string_view name);

/// Ten decaying fields used for the Hardy sweeps.
std::vector<TestFieldSpec> hardy_suite();
/// Fields used for extension and K-functional sweeps.
std::vector<TestFieldSpec> smooth_suite();
std::vector<std::string> fullspace_suite();

}  // namespace conelab
