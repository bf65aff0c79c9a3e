#pragma once
// Text dump of a field:
//
//   n=<int>
//   omega=<float>
//   variant=<axisymmetric|quadrant|fullspace>[_plus]
//   K=<int>
//   J=<int>
//   q=<float>
//   rmax=<float>
//   r theta value        (K*J lines, row-major in (k, j))
//
// theta is the global direction (math angle for n = 2, polar angle for n = 3).
// For a two-sided cone grid J counts the nodes of both half-cones, "+" first.

#include <iosfwd>

#include "conelab/field.hpp"

namespace conelab {

void write_field_dump(std::ostream& out, const Field& f);
/// Throws std::runtime_error on malformed input.
Field read_field_dump(std::istream& in);

}  // namespace conelab
