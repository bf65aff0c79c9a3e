#pragma once
// Restriction of whole-space fields to the cone and the extension
// E(f) = f_r + xi_+(f_a+) + xi_-(f_a-), where
//   xi_+(g) = [m_+ zeta_+(g o psi_+)] o psi_+^{-1}
// pulls g back to the half-space, reflects it evenly across the boundary,
// multiplies by the homogeneous cutoff and pushes it forward again. Also the
// explicit extension from the planar double quadrant {xy > 0}.
//
// Whole-space grids come from PolarGrid::full_space on the cone grid's spec.
// Grid transfers are angular only (radial nodes are shared) and use linear
// interpolation that snaps to nodes when the angles coincide.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "conelab/field.hpp"
#include "conelab/test_fields.hpp"

namespace conelab {

/// Whole-space grid matching a cone grid.
GridPtr full_grid_for(const PolarGrid& cone);
/// Cone grid (both half-cones) matching a whole-space grid.
GridPtr cone_grid_for(const PolarGrid& full);

/// R(F) = F restricted to the cone nodes. target defaults to cone_grid_for.
Field restrict_to_cone(const Field& full, GridPtr target = nullptr);

/// Membership test for hat H^1_n: partial integrals of |f_a/r|^n over the
/// innermost decades of r_min, and the fitted divergence exponent. The input is
/// refused when the exponent exceeds -1/2 (growth no slower than L^{-1/2} per
/// unit of |ln r_min|) unless the increments are at round-off level.
struct HatGate {
  std::vector<PartialIntegralRow> table;
  DivergenceFit fit;
  bool accepted = true;
};
HatGate hat_gate(const Field& f, int decades = 6);

/// r_min = 10^{-m} for the innermost `decades` whole decades of the grid.
std::vector<double> inner_decades(const PolarGrid& g, int decades);
/// False when ||grad f||_p visibly diverges at the vertex: for finite p the
/// partial integrals over the innermost decades fail the hat-gate growth rule,
/// for p = infinity the sup there exceeds 10 times the sup elsewhere.
bool gradient_finite(const Field& f, double p, int decades = 6);

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, HatGate gate) : std::runtime_error(what), gate_(std::move(gate)) {}
  const HatGate& gate() const { return gate_; }

 private:
  HatGate gate_;
};

/// The pieces of E(f) on the whole-space grid.
struct ExtensionParts {
  Field radial;  // ring means of f, constant on each sphere
  Field plus;    // xi_+(f_a+)
  Field minus;   // xi_-(f_a-)
  Field total;
};

/// Pipeline without the p = n gate.
ExtensionParts extension_parts(const Field& f);
/// E(f). For p = n the hat gate runs first and DivergenceError is thrown when it
/// refuses the input.
Field extend(const Field& f, double p);

/// zeta_+(f_a+ o psi_+) on the whole-space grid (the half-space picture), and
/// the same multiplied by m_+.
struct HalfSpacePicture {
  Field reflected;
  Field cut;
};
HalfSpacePicture half_space_picture(const Field& f, Side side = Side::Plus);

/// ||m g / r||_p / ||g / r||_p and ||grad(m g)||_p / (||grad g||_p + ||g / r||_p)
/// for g from half_space_picture.
struct CutoffRatios {
  double over_r = 0.0;
  double gradient = 0.0;
};
CutoffRatios cutoff_ratios(const Field& f, double p, Side side = Side::Plus);

/// Largest |xi_±| on whole-space nodes outside the enlarged half-cone of that side.
double support_leak(const Field& part, Side side, double enlarged_half_angle);

/// Norm of f used as the denominator of the extension ratio: W^1_p(Omega) for
/// p != n, plus ||f_a / r||_n for p = n.
double source_norm(const Field& f, double p);
/// W^1_p norm on the grid's region.
double w1p_norm(const Field& f, double p);

/// True unless the field is known (declared limits) or seen (innermost ring
/// means) to take different values at the vertex on the two half-cones.
bool vertex_continuous(const Field& f, double tol = 1e-3);

struct ExtensionRow {
  std::string field;
  double p = 0.0;
  double source_norm = 0.0;
  double target_norm = 0.0;
  double ratio = 0.0;
  double roundtrip_err = 0.0;
  std::string gate;  // "ok", "source-divergent", "hat-divergent", "vertex-jump", "zero"
};

/// One row per (field, p); refused inputs carry zeros and the refusal reason.
ExtensionRow extension_row(const Field& f, double p);
std::vector<ExtensionRow> operator_norm_report(const GridPtr& cone, const std::vector<TestFieldSpec>& suite,
                                               const std::vector<double>& ps);

/// Explicit extension from {xy > 0}: identity there and
///   Ef(x, y) = (x^2 f(x, -y) + y^2 f(-x, y)) / (x^2 + y^2)  on {xy < 0}.
/// Throws std::invalid_argument unless the grid is the planar quadrant variant.
Field extend_quadrant_2d(const Field& f);
/// The same formula for a function given pointwise on {xy > 0}.
double quadrant_formula(const std::function<double(double, double)>& f, double x, double y);

/// Largest jump of Ef between the two nodes adjacent to each coordinate half-axis,
/// and the largest jump between neighbouring nodes anywhere else on the ring.
struct SeamReport {
  double seam_jump = 0.0;
  double interior_step = 0.0;
};
SeamReport quadrant_seams(const Field& extended);

}  // namespace conelab
