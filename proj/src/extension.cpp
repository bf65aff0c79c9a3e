#include "conelab/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conelab/geometry.hpp"
#include "conelab/numerics.hpp"

namespace conelab {

namespace {

constexpr double kSnap = 1e-9;

// Linear interpolation on one ring of nodes t_j = lo + (j + 1/2) d, j < J.
// Periodic rings wrap; otherwise angles beyond the outer nodes are clamped.
double ring_sample(const double* ring, int J, double lo, double d, double t, bool periodic) {
  double u = (t - lo) / d - 0.5;
  if (periodic) {
    u = std::fmod(u, static_cast<double>(J));
    if (u < 0.0) u += J;
  } else {
    u = std::clamp(u, 0.0, static_cast<double>(J - 1));
  }
  double iu = std::floor(u);
  double w = u - iu;
  int i = static_cast<int>(iu);
  if (w < kSnap) return ring[i];
  if (w > 1.0 - kSnap) return ring[periodic ? (i + 1) % J : std::min(i + 1, J - 1)];
  int i1 = periodic ? (i + 1) % J : std::min(i + 1, J - 1);
  return (1.0 - w) * ring[i] + w * ring[i1];
}

// Value of a cone field on block b, ring k, at local angle t. For n = 3 the
// local angle is a polar angle and the field is even across the axis.
double cone_sample(const Field& f, int b, int k, double t) {
  const PolarGrid& g = f.grid();
  if (g.n() == 3) t = std::abs(t);
  return ring_sample(&f.values()[g.index(b, k, 0)], g.J(), g.theta_lo(), g.dtheta(), t, false);
}

double full_sample(const Field& F, int k, double t) {
  const PolarGrid& g = F.grid();
  const bool periodic = g.n() == 2;
  if (!periodic) {
    // polar angle in [0, pi]; reflect out-of-range angles back
    if (t < 0.0) t = -t;
    if (t > kPi) t = 2.0 * kPi - t;
  }
  return ring_sample(&F.values()[g.index(0, k, 0)], g.J(), g.theta_lo(), g.dtheta(), t, periodic);
}

// Signed angle of a whole-space node from the axis of the given side: in
// [-pi, pi) for n = 2, in [0, pi] for n = 3.
double angle_from_side(const PolarGrid& full, int j, Side side) {
  double t = full.theta(j);
  if (side == Side::Plus) return t;
  if (full.n() == 3) return kPi - t;
  t -= kPi;
  if (t < -kPi) t += 2.0 * kPi;
  return t;
}

int block_of(const PolarGrid& g, Side side) { return g.block_index(side == Side::Plus ? Block::Plus : Block::Minus); }

void require_cone(const PolarGrid& g) {
  if (g.is_full()) throw std::invalid_argument("expected a cone grid");
}

}  // namespace

GridPtr full_grid_for(const PolarGrid& cone) {
  return std::make_shared<PolarGrid>(PolarGrid::full_space(cone.domain(), cone.spec()));
}

GridPtr cone_grid_for(const PolarGrid& full) {
  return std::make_shared<PolarGrid>(PolarGrid::cone(full.domain(), full.spec()));
}

Field restrict_to_cone(const Field& full, GridPtr target) {
  const PolarGrid& fg = full.grid();
  if (!fg.is_full()) throw std::invalid_argument("restriction needs a whole-space field");
  if (!target) target = cone_grid_for(fg);
  const PolarGrid& cg = *target;
  if (cg.K() != fg.K() || cg.r(0) != fg.r(0)) throw std::invalid_argument("grids do not share radial nodes");
  Field out(target, full.name());
  for (int b = 0; b < cg.block_count(); ++b)
    for (int j = 0; j < cg.J(); ++j) {
      const double t = fg.full_local_angle(cg.global_angle(b, j));
      for (int k = 0; k < cg.K(); ++k) out.at(b, k, j) = full_sample(full, k, t);
    }
  return out;
}

std::vector<double> inner_decades(const PolarGrid& g, int decades) {
  // innermost decade reachable on the grid
  const int last = static_cast<int>(std::floor(-std::log10(g.r_lo(g.K() - 1)) + 1e-9));
  return decade_table(last - decades + 1, last);
}

bool gradient_finite(const Field& f, double p, int decades) {
  const PolarGrid& g = f.grid();
  const auto mag = gradient(f).magnitude();
  const auto rmins = inner_decades(g, decades);
  if (std::isinf(p)) {
    // the sup over the innermost decades may not run away from the sup outside them
    double inner = 0.0, outer = 0.0;
    for (int k = 0; k < g.K(); ++k)
      for (int b = 0; b < g.block_count(); ++b)
        for (int j = 0; j < g.J(); ++j) {
          double& sup = g.r(k) < rmins.front() ? inner : outer;
          sup = std::max(sup, mag[g.index(b, k, j)]);
        }
    return inner <= 10.0 * outer;
  }
  const auto fit = fit_divergence(partial_integrals(g, mag, p, Weight::None, rmins));
  return fit.negligible || fit.exponent <= -0.5;
}

HatGate hat_gate(const Field& f, int decades) {
  const PolarGrid& g = f.grid();
  require_cone(g);
  if (decades < 3) throw std::invalid_argument("hat gate needs at least 3 decades");
  const int n = g.n();
  auto split = radial_split(f);
  HatGate gate;
  gate.table = partial_integrals(g, split.anti_radial.values(), n, Weight::InverseR, inner_decades(g, decades));
  gate.fit = fit_divergence(gate.table);
  gate.accepted = gate.fit.negligible || gate.fit.exponent <= -0.5;
  return gate;
}

HalfSpacePicture half_space_picture(const Field& f, Side side) {
  const PolarGrid& g = f.grid();
  require_cone(g);
  const int b = block_of(g, side);
  if (b < 0) throw std::invalid_argument("grid lacks the requested half-cone");
  auto fa = radial_split(f).anti_radial;
  const double w = g.domain().half_angle;
  const auto map = BilipschitzConeMap::for_cone(w);
  const auto cut = HomogeneousCutoff::for_map(map);
  auto full = full_grid_for(g);
  const PolarGrid& fg = *full;
  HalfSpacePicture out{Field(full, f.name() + "_zeta"), Field(full, f.name() + "_mzeta")};
  for (int j = 0; j < fg.J(); ++j) {
    const double t = angle_from_side(fg, j, side);
    const double a = std::abs(t);
    // reflect across the half-space boundary a = pi/2, then pull back by psi
    const double refl = a <= 0.5 * kPi ? a : kPi - a;
    const double src = std::copysign(refl * map.angular_factor(), t);
    const double m = cut.profile(a);
    for (int k = 0; k < fg.K(); ++k) {
      double v = cone_sample(fa, b, k, src);
      out.reflected.at(0, k, j) = v;
      out.cut.at(0, k, j) = m * v;
    }
  }
  return out;
}

ExtensionParts extension_parts(const Field& f) {
  const PolarGrid& g = f.grid();
  require_cone(g);
  auto split = radial_split(f);
  const auto means = ring_means(f);
  auto full = full_grid_for(g);
  const PolarGrid& fg = *full;
  const double w = g.domain().half_angle;
  const auto map = BilipschitzConeMap::for_cone(w);
  const auto cut = HomogeneousCutoff::for_map(map);
  const double wide = map.target_half_angle();

  ExtensionParts parts{Field(full, f.name() + "_r"), Field(full, f.name() + "_xi+"), Field(full, f.name() + "_xi-"),
                       Field(full, "E(" + f.name() + ")")};
  for (int k = 0; k < fg.K(); ++k)
    for (int j = 0; j < fg.J(); ++j) parts.radial.at(0, k, j) = means[k];

  for (Side side : {Side::Plus, Side::Minus}) {
    const int b = block_of(g, side);
    if (b < 0) continue;
    Field& out = side == Side::Plus ? parts.plus : parts.minus;
    for (int j = 0; j < fg.J(); ++j) {
      const double t = angle_from_side(fg, j, side);
      const double a = std::abs(t);
      if (a >= wide) continue;
      // [m zeta(g o psi)] o psi^{-1}: the pulled-back angle is a / factor, the
      // even reflection sends it to pi - a / factor, which psi maps to 2w - a.
      const double src = std::copysign(a <= w ? a : 2.0 * w - a, t);
      const double m = cut.profile(a / map.angular_factor());
      if (m == 0.0) continue;
      for (int k = 0; k < fg.K(); ++k) out.at(0, k, j) = m * cone_sample(split.anti_radial, b, k, src);
    }
  }
  parts.total = parts.radial + parts.plus + parts.minus;
  parts.total.set_name("E(" + f.name() + ")");
  return parts;
}

Field extend(const Field& f, double p) {
  if (p == f.grid().n()) {
    auto gate = hat_gate(f);
    if (!gate.accepted)
      throw DivergenceError("||f_a/r||_n diverges at the vertex (exponent " + std::to_string(gate.fit.exponent) +
                                "); no bounded extension at p = n",
                            std::move(gate));
  }
  return extension_parts(f).total;
}

CutoffRatios cutoff_ratios(const Field& f, double p, Side side) {
  auto pic = half_space_picture(f, side);
  CutoffRatios out;
  const double g_over_r = lp_norm(pic.reflected, NormSpec{p, Weight::InverseR, NormKind::Lp});
  if (g_over_r == 0.0) return out;
  out.over_r = lp_norm(pic.cut, NormSpec{p, Weight::InverseR, NormKind::Lp}) / g_over_r;
  const double grad_g = lp_norm(gradient(pic.reflected), p);
  const double grad_mg = lp_norm(gradient(pic.cut), p);
  out.gradient = grad_mg / (grad_g + g_over_r);
  return out;
}

double support_leak(const Field& part, Side side, double enlarged_half_angle) {
  const PolarGrid& g = part.grid();
  if (!g.is_full()) throw std::invalid_argument("support check needs a whole-space field");
  double leak = 0.0;
  for (int j = 0; j < g.J(); ++j) {
    if (std::abs(angle_from_side(g, j, side)) < enlarged_half_angle) continue;
    for (int k = 0; k < g.K(); ++k) leak = std::max(leak, std::abs(part.at(0, k, j)));
  }
  return leak;
}

double w1p_norm(const Field& f, double p) {
  return lp_norm(f, NormSpec{p, Weight::None, NormKind::Lp}) + lp_norm(gradient(f), p);
}

double source_norm(const Field& f, double p) {
  double s = w1p_norm(f, p);
  if (p == f.grid().n()) {
    auto fa = radial_split(f).anti_radial;
    s += lp_norm(fa, NormSpec{p, Weight::InverseR, NormKind::Lp});
  }
  return s;
}

bool vertex_continuous(const Field& f, double tol) {
  if (f.vertex_plus && f.vertex_minus) return std::abs(*f.vertex_plus - *f.vertex_minus) <= tol;
  const PolarGrid& g = f.grid();
  const int bp = g.block_index(Block::Plus), bm = g.block_index(Block::Minus);
  if (bp < 0 || bm < 0) return true;
  const auto mp = ring_means(f, bp), mm = ring_means(f, bm);
  double scale = 0.0;
  for (double v : f.values()) scale = std::max(scale, std::abs(v));
  return std::abs(mp.back() - mm.back()) <= tol * std::max(scale, 1e-300);
}

ExtensionRow extension_row(const Field& f, double p) {
  const PolarGrid& g = f.grid();
  ExtensionRow row;
  row.field = f.name();
  row.p = p;
  const bool zero = std::all_of(f.values().begin(), f.values().end(), [](double v) { return v == 0.0; });
  if (zero) {
    row.gate = "zero";
    return row;
  }
  if (!gradient_finite(f, p)) {
    row.gate = "source-divergent";
    return row;
  }
  if (p > g.n() && !vertex_continuous(f)) {
    row.gate = "vertex-jump";
    return row;
  }
  if (p == g.n() && !hat_gate(f).accepted) {
    row.gate = "hat-divergent";
    return row;
  }
  const Field E = extension_parts(f).total;
  row.source_norm = source_norm(f, p);
  row.target_norm = w1p_norm(E, p);
  row.ratio = row.target_norm / row.source_norm;
  const Field back = restrict_to_cone(E, f.grid_ptr());
  row.roundtrip_err = w1p_norm(back - f, p) / w1p_norm(f, p);
  row.gate = "ok";
  return row;
}

std::vector<ExtensionRow> operator_norm_report(const GridPtr& cone, const std::vector<TestFieldSpec>& suite,
                                               const std::vector<double>& ps) {
  std::vector<ExtensionRow> rows;
  for (const auto& spec : suite) {
    const Field f = make_test_field(cone, spec);
    for (double p : ps) {
      auto row = extension_row(f, p);
      if (row.gate == "zero") continue;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

double quadrant_formula(const std::function<double(double, double)>& f, double x, double y) {
  if (x * y > 0.0) return f(x, y);
  const double d = x * x + y * y;
  if (d == 0.0) throw std::domain_error("the formula is not defined at the vertex");
  return (x * x * f(x, -y) + y * y * f(-x, y)) / d;
}

Field extend_quadrant_2d(const Field& f) {
  const PolarGrid& g = f.grid();
  require_cone(g);
  if (g.n() != 2 || g.domain().variant != ConeVariant::Quadrant)
    throw std::invalid_argument("the explicit extension needs the planar quadrant cone");
  const int bp = block_of(g, Side::Plus), bm = block_of(g, Side::Minus);
  if (bp < 0 || bm < 0) throw std::invalid_argument("the explicit extension needs both quadrants");
  auto full = full_grid_for(g);
  const PolarGrid& fg = *full;
  const double axis = g.domain().axis_angle();
  Field E(full, "Equadrant(" + f.name() + ")");
  // value of f in direction phi (global angle) on ring k; phi must lie in a quadrant of the cone
  auto sample = [&](int k, double phi) {
    double t = phi - axis;
    t = std::remainder(t, 2.0 * kPi);
    if (std::abs(t) < 0.5 * kPi) return cone_sample(f, bp, k, t);
    double s = std::remainder(t - kPi, 2.0 * kPi);
    return cone_sample(f, bm, k, s);
  };
  for (int j = 0; j < fg.J(); ++j) {
    const double phi = axis + fg.theta(j);
    const double c = std::cos(phi), s = std::sin(phi);
    if (c * s > 0.0) {
      for (int k = 0; k < fg.K(); ++k) E.at(0, k, j) = sample(k, phi);
      continue;
    }
    // (x, -y) has angle -phi, (-x, y) has angle pi - phi; the radius cancels.
    for (int k = 0; k < fg.K(); ++k) E.at(0, k, j) = c * c * sample(k, -phi) + s * s * sample(k, kPi - phi);
  }
  return E;
}

SeamReport quadrant_seams(const Field& extended) {
  const PolarGrid& g = extended.grid();
  if (!g.is_full() || g.n() != 2) throw std::invalid_argument("seam check needs a planar whole-space field");
  const double axis = g.domain().axis_angle();
  const int J = g.J();
  SeamReport rep;
  for (int j = 0; j < J; ++j) {
    const int j1 = (j + 1) % J;
    // a seam lies between j and j1 when the boundary angle m pi/2 sits between them
    const double a0 = axis + g.theta(j), a1 = a0 + g.dtheta();
    const bool seam = std::floor(a0 / (0.5 * kPi)) != std::floor(a1 / (0.5 * kPi));
    for (int k = 0; k < g.K(); ++k) {
      const double d = std::abs(extended.at(0, k, j1) - extended.at(0, k, j));
      if (seam)
        rep.seam_jump = std::max(rep.seam_jump, d);
      else
        rep.interior_step = std::max(rep.interior_step, d);
    }
  }
  return rep;
}

}  // namespace conelab
