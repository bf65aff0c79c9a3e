#pragma once
#include <memory>

#include "conelab/field.hpp"

namespace testing {

inline conelab::GridPtr cone(int n, double q, double r_max, double r_min, int J, double omega = 0.0) {
  conelab::ConeDomain d = conelab::ConeDomain::standard(n);
  if (omega > 0.0) d.half_angle = omega;
  conelab::GridSpec s;
  s.q = q;
  s.r_max = r_max;
  s.r_min = r_min;
  s.J = J;
  return std::make_shared<conelab::PolarGrid>(conelab::PolarGrid::cone(d, s));
}

// coarse grid shared by the slower tests
inline conelab::GridPtr coarse(int n = 2) { return cone(n, 0.9, 8.0, 1e-8, 24); }

}  // namespace testing
