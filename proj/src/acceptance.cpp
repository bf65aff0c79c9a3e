#include "conelab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <map>
#include <random>

#include <json.hpp>

#include "conelab/cz.hpp"
#include "conelab/density.hpp"
#include "conelab/extension.hpp"
#include "conelab/parallel.hpp"
#include "conelab/rearrangement.hpp"
#include "conelab/test_fields.hpp"

namespace conelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Smallest W^1_4 distance from the jump field to the approximants of the
// codimension sweep on the density grid (attained by the corrector with k = 8,
// eps = 0.1); frozen from the first run as a regression value.
constexpr double kFrozenJumpDistance = 1.46836;

std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

GridPtr cone_grid(int n, const GridSpec& s, double omega = 0.0) {
  ConeDomain d = ConeDomain::standard(n);
  if (omega > 0.0) d.half_angle = omega;
  return std::make_shared<PolarGrid>(PolarGrid::cone(d, s));
}

GridSpec spec(double q, double r_max, double r_min, int J) {
  GridSpec s;
  s.q = q;
  s.r_max = r_max;
  s.r_min = r_min;
  s.J = J;
  return s;
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }
double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

// ---------------------------------------------------------------------------

CheckResult hardy_bound(const Tolerances& tol) {
  CheckResult r{1, "hardy-bound", "Hardy inequality on the cone for p < n with constant p/(n-p)", {}, {}};
  const GridSpec s;  // default grid
  const std::vector<std::pair<int, double>> cases{{2, 1.0}, {3, 1.0}, {3, 2.0}};
  const auto suite = hardy_suite();
  std::vector<GridPtr> grids{cone_grid(2, s), cone_grid(3, s)};
  std::vector<double> q(cases.size() * suite.size());
  parallel_for(q.size(), [&](std::size_t i) {
    const auto [n, p] = cases[i / suite.size()];
    q[i] = hardy_quotient(make_test_field(grids[n - 2], suite[i % suite.size()]), p);
  });
  bool ok = true;
  std::string m;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto [n, p] = cases[c];
    const double bound = p / (n - p);
    double mx = 0.0;
    for (std::size_t f = 0; f < suite.size(); ++f) mx = std::max(mx, q[c * suite.size() + f]);
    ok = ok && mx <= bound * (1.0 + tol.hardy) && mx >= 0.6 * bound;
    m += fmt("%sn=%d p=%g: max %.4f (bound %.4g)", c ? "; " : "", n, p, mx, bound);
  }
  r.measured = m;
  r.expectation = fmt("max quotient in [0.6, %.2f] x p/(n-p) over %zu fields", 1.0 + tol.hardy, suite.size());
  r.pass = ok;
  return r;
}

CheckResult hardy_failure(const Tolerances& tol) {
  CheckResult r{2, "hardy-failure", "Hardy inequality fails at p = n for sign(x2)|ln r|^-beta", {}, {}};
  auto g = cone_grid(2, spec(0.98, 1.0, 1e-13, 16));
  const auto rmins = decade_table(4, 12);
  auto f_over_r = [&](double beta) {
    auto f = make_test_field(g, fmt("logcounter(%g)", beta));
    return fit_divergence(partial_integrals(*g, f.values(), 2.0, Weight::InverseR, rmins));
  };
  auto grad = [&](double beta) {
    auto f = make_test_field(g, fmt("logcounter(%g)", beta));
    auto mag = gradient(f).magnitude();
    return fit_divergence(partial_integrals(*g, mag, 2.0, Weight::None, rmins));
  };
  const auto slow = f_over_r(0.25), fast = f_over_r(1.0);
  double worst_grad = 0.0;
  for (double beta : {0.25, 0.5, 1.0}) worst_grad = std::max(worst_grad, grad(beta).last_relative_increment);
  const bool slope_ok = std::abs(slow.exponent - 0.5) <= 0.5 * tol.slope;
  const bool cauchy_ok = fast.last_relative_increment < tol.cauchy;
  const bool grad_ok = worst_grad < tol.cauchy;
  r.measured = fmt("beta=0.25 slope %.4f; beta=1 last increment %.3g; max gradient last increment %.3g", slow.exponent,
                   fast.last_relative_increment, worst_grad);
  r.expectation = fmt("slope 0.5 +- %.0f%%; increments < %.3g", 100.0 * tol.slope, tol.cauchy);
  r.pass = slope_ok && cauchy_ok && grad_ok;
  return r;
}

CheckResult hat_gate_check(const Tolerances&) {
  CheckResult r{3, "hat-gate", "hat H^1_2 is a strict subspace of H^1_2: the membership gate", {}, {}};
  auto g = cone_grid(2, GridSpec{});
  std::map<double, HatGate> gates;
  for (double beta : {0.25, 0.5, 1.0}) gates[beta] = hat_gate(make_test_field(g, fmt("logcounter(%g)", beta)));
  r.measured = fmt("beta=1 %s (s=%.3f); beta=0.5 %s (s=%.3f); beta=0.25 %s (s=%.3f)",
                   gates[1.0].accepted ? "accepted" : "refused", gates[1.0].fit.exponent,
                   gates[0.5].accepted ? "accepted" : "refused", gates[0.5].fit.exponent,
                   gates[0.25].accepted ? "accepted" : "refused", gates[0.25].fit.exponent);
  r.expectation = "accept beta=1; refuse beta=0.5 and beta=0.25";
  r.pass = gates[1.0].accepted && !gates[0.5].accepted && !gates[0.25].accepted;
  return r;
}

struct CzSweep {
  double rec = 0.0;
  int overlap = 0;
  bool exact = true;
  std::vector<double> eg, eb;  // max over fields per level
  double eB = 0.0;             // sup over fields and levels
};

CzSweep cz_sweep(const GridSpec& s, const std::vector<std::string>& fields, int levels) {
  auto g = cone_grid(2, s);
  std::vector<std::vector<CZReport>> reps(fields.size());
  parallel_for(fields.size(), [&](std::size_t i) {
    const Field f = make_test_field(g, fields[i]);
    const Field M = maximal_function(f);
    const double top = *std::max_element(M.values().begin(), M.values().end());
    for (int m = 0; m < levels; ++m) {
      CZParams prm;
      prm.alpha = top * std::pow(10.0, -1 - m);
      reps[i].push_back(verify(f, decompose(f, M, prm)));
    }
  });
  CzSweep out;
  out.eg.assign(levels, 0.0);
  out.eb.assign(levels, 0.0);
  for (const auto& runs : reps)
    for (int m = 0; m < levels; ++m) {
      const auto& rep = runs[m];
      out.rec = std::max(out.rec, rep.rec_err);
      out.overlap = std::max(out.overlap, rep.overlap_N);
      out.exact = out.exact && rep.underline_disjoint && rep.overline_meets_F && rep.plain_cover_U;
      out.eg[m] = std::max(out.eg[m], rep.eg_ratio);
      out.eb[m] = std::max(out.eb[m], rep.eb_ratio);
      out.eB = std::max(out.eB, rep.eB_ratio);
    }
  return out;
}

CheckResult cz_check(const Tolerances& tol) {
  CheckResult r{4, "cz-decomposition", "Calderon-Zygmund decomposition on the half-cones", {}, {}};
  const std::vector<std::string> fields{"logcounter(1)", "logcounter(0.75)", "radial_power(0.25)", "radial_power(0.1)",
                                        "angular_bump(0.25)"};
  const int levels = 5;  // alpha = max(M) 10^{-1}, ..., 10^{-5}
  const auto base = cz_sweep(spec(0.9, 8.0, 1e-8, 24), fields, levels);
  const auto fine = cz_sweep(spec(std::sqrt(0.9), 8.0, 1e-8, 48), fields, levels);
  const double eg_var = max_of(base.eg) / min_of(base.eg), eb_var = max_of(base.eb) / min_of(base.eb);
  const double eB_drift = std::max(base.eB / fine.eB, fine.eB / base.eB);
  r.measured = fmt(
      "rec %.2g; C_g %.3f..%.3f (x%.2f); C_b %.3f..%.3f (x%.2f); N %d/%d; sup eB %.3f -> %.3f refined (x%.2f); "
      "disjoint/cover/meets-F %s",
      std::max(base.rec, fine.rec), min_of(base.eg), max_of(base.eg), eg_var, min_of(base.eb), max_of(base.eb), eb_var,
      base.overlap, fine.overlap, base.eB, fine.eB, eB_drift, base.exact && fine.exact ? "exact" : "violated");
  r.expectation = fmt("rec <= %.0e; C_g, C_b <= 100 varying < %.0fx over 4 decades; N <= 20; eB drift < %.0fx",
                      tol.reconstruction, tol.drift, tol.drift);
  r.pass = std::max(base.rec, fine.rec) <= tol.reconstruction && eg_var < tol.drift && eb_var < tol.drift &&
           max_of(base.eg) <= 100.0 && max_of(base.eb) <= 100.0 && std::max(base.overlap, fine.overlap) <= 20 &&
           std::isfinite(base.eB) && eB_drift < tol.drift && base.exact && fine.exact;
  return r;
}

CheckResult kfunc_check(const Tolerances&) {
  CheckResult r{5, "kfunc-equiv", "K-functional of (tilde H^1_1, tilde H^1_inf) via rearrangements", {}, {}};
  const std::vector<std::string> fields{"logcounter(1)", "radial_exp", "angular_bump(1)", "lipschitz_compact", "jump"};
  auto g = cone_grid(2, spec(0.9, 8.0, 1e-8, 24));
  std::vector<double> ts;
  for (int i = 0; i <= 12; ++i) ts.push_back(std::pow(10.0, -3.0 + 0.5 * i));
  std::vector<std::vector<double>> ratio(fields.size());
  std::vector<double> lower_gap(fields.size(), kInf);
  parallel_for(fields.size(), [&](std::size_t i) {
    const Field f = make_test_field(g, fields[i]);
    const Field M = maximal_function(f);
    const auto tables = SobolevTables::build(f);
    for (double t : ts) {
      const auto up = k_upper_via_cz(f, M, t);
      ratio[i].push_back(up.value / k_sobolev_estimate(tables, t));
      const double lower = std::max({k_l1_linf(tables.f, t), k_l1_linf(tables.f_over_r, t), k_l1_linf(tables.grad, t)});
      lower_gap[i] = std::min(lower_gap[i], up.value / lower);
    }
  });
  double lo = kInf, hi = 0.0, gap = kInf;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    lo = std::min(lo, min_of(ratio[i]));
    hi = std::max(hi, max_of(ratio[i]));
    gap = std::min(gap, lower_gap[i]);
  }
  r.measured = fmt("ratio band [%.3f, %.3f], c2/c1 = %.2f; min upper/lower = %.4f", lo, hi, hi / lo, gap);
  r.expectation = "c2/c1 <= 50 over t in 1e-3..1e3; upper >= every (L1, Linf) component bound";
  r.pass = lo > 0.0 && hi / lo <= 50.0 && gap >= 1.0 - 1e-12;
  return r;
}

CheckResult k_identity_check(const Tolerances&) {
  CheckResult r{6, "k-identity", "K(f, t; L1, Linf) = int_0^t f*", {}, {}};
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> val(-5.0, 5.0), meas(0.1, 2.0), logt(-2.0, 2.0);
  double worst = 0.0;
  for (int inst = 0; inst < 50; ++inst) {
    const int m = 1 + inst % 10;
    std::vector<double> v(m), w(m);
    for (int i = 0; i < m; ++i) {
      v[i] = val(rng);
      w[i] = meas(rng);
    }
    const double t = std::pow(10.0, logt(rng));
    const double exact = k_l1_linf(RearrangementTable::build(v, w), t);
    const double brute = k_l1_linf_truncation_search(v, w, t);
    worst = std::max(worst, std::abs(exact - brute) / std::max(1.0, brute));
  }
  // random splittings never beat the truncation optimum
  double min_gap = kInf;
  for (int inst = 0; inst < 20; ++inst) {
    std::vector<double> v(4), w(4), gsplit(4);
    for (int i = 0; i < 4; ++i) {
      v[i] = val(rng);
      w[i] = meas(rng);
    }
    const double t = std::pow(10.0, logt(rng));
    const double exact = k_l1_linf(RearrangementTable::build(v, w), t);
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::abs(x));
    std::uniform_real_distribution<double> gv(-vmax, vmax);
    for (int trial = 0; trial < 5000; ++trial) {
      for (int i = 0; i < 4; ++i) gsplit[i] = trial % 2 ? gv(rng) : v[i] * (0.5 + 0.5 * (gv(rng) / vmax));
      min_gap = std::min(min_gap, k_l1_linf_cost(v, gsplit, w, t) - exact);
    }
  }
  r.measured = fmt("max |formula - brute force| = %.2e over 50 instances; min(random cost - K) = %.4g", worst, min_gap);
  r.expectation = "agreement <= 1e-12; no random splitting below K";
  r.pass = worst <= 1e-12 && min_gap >= -1e-12;
  return r;
}

CheckResult rearrangement_check(const Tolerances&) {
  CheckResult r{7, "rearrangement-laws", "equimeasurability and the Hardy bound for f**", {}, {}};
  double equi = 0.0, dist_excess = -kInf, maximal = 0.0;
  for (int n : {2, 3}) {
    auto g = cone_grid(n, spec(0.95, 40.0, 1e-8, 32));
    for (const auto& name : hardy_suite()) {
      const Field f = make_test_field(g, name);
      const auto tb = RearrangementTable::build(f);
      for (double p : {1.0, 2.0, 3.0}) {
        const double direct = std::pow(lp_norm(f, NormSpec{p}), p);
        equi = std::max(equi, std::abs(tb.integral_pow(0.0, kInf, p) - direct) / direct);
      }
      for (int i = 0; i <= 40; ++i) {
        const double t = tb.total_measure() * std::pow(10.0, -8.0 + 0.2 * i);
        dist_excess = std::max(dist_excess, tb.distribution(tb.f_star(t)) - t);
      }
      for (double p : {2.0, static_cast<double>(n)}) {
        const double bound = p / (p - 1.0);
        maximal = std::max(maximal, tb.f_star_star_lp_norm(p) / tb.lp_norm(p) / bound);
      }
    }
  }
  r.measured = fmt("equimeasurability %.2e; max lambda(|f| > f*(t)) - t = %.3g; max ||f**||_p / (p' ||f||_p) = %.4f",
                   equi, dist_excess, maximal);
  r.expectation = "<= 1e-10; <= 0; <= 1.05";
  r.pass = equi <= 1e-10 && dist_excess <= 0.0 && maximal <= 1.05;
  return r;
}

CheckResult extension_check(const Tolerances& tol) {
  CheckResult r{8, "extension-restriction", "extension E(f) = f_r + xi(f_a) and restriction R", {}, {}};
  auto suite = smooth_suite();
  suite.push_back(TestFieldSpec::parse("logcounter(1)"));
  const std::vector<double> ps{1.0, 1.5, 2.0, 3.0, kInf};
  std::vector<GridPtr> grids{cone_grid(2, spec(0.96, 40.0, 4e-11, 48)), cone_grid(2, spec(0.98, 40.0, 4e-11, 96))};
  std::vector<std::vector<ExtensionRow>> rows(grids.size() * suite.size());
  std::vector<double> leak(suite.size(), 0.0);
  parallel_for(rows.size(), [&](std::size_t i) {
    const auto& g = grids[i / suite.size()];
    const Field f = make_test_field(g, suite[i % suite.size()]);
    for (double p : ps) rows[i].push_back(extension_row(f, p));
    if (i < suite.size()) {
      const auto parts = extension_parts(f);
      const double wide = BilipschitzConeMap::for_cone(g->domain().half_angle).target_half_angle();
      leak[i] = std::max(support_leak(parts.plus, Side::Plus, wide), support_leak(parts.minus, Side::Minus, wide));
    }
  });
  double rt = 0.0, drift = 1.0, max_ratio = 0.0;
  int used = 0, p2_used = 0;
  bool finite = true;
  for (std::size_t f = 0; f < suite.size(); ++f)
    for (std::size_t k = 0; k < ps.size(); ++k) {
      const auto& a = rows[f][k];
      const auto& b = rows[suite.size() + f][k];
      if (a.gate != "ok" || b.gate != "ok") continue;
      ++used;
      if (ps[k] == 2.0) ++p2_used;
      rt = std::max({rt, a.roundtrip_err, b.roundtrip_err});
      finite = finite && std::isfinite(a.ratio) && a.ratio > 0.0 && std::isfinite(b.ratio) && b.ratio > 0.0;
      drift = std::max(drift, std::max(a.ratio / b.ratio, b.ratio / a.ratio));
      max_ratio = std::max({max_ratio, a.ratio, b.ratio});
    }
  // a cone whose nodes do not line up with the whole-space grid
  double rt_off = 0.0;
  auto gw = cone_grid(2, spec(0.96, 40.0, 4e-11, 48), 0.6);
  for (const auto& s : smooth_suite()) {
    const Field f = make_test_field(gw, s);
    for (double p : {1.0, 1.5}) rt_off = std::max(rt_off, extension_row(f, p).roundtrip_err);
  }
  const double max_leak = max_of(leak);
  r.measured = fmt("%d admitted rows (%d at p=2); round trip %.2e (w=0.6: %.2e); max ratio %.3f, refinement drift "
                   "x%.3f; support leak %.3g",
                   used, p2_used, rt, rt_off, max_ratio, drift, max_leak);
  r.expectation = fmt("round trip <= %.0f%%; finite ratios with drift < %.0fx; no support outside enlarged cones",
                      100.0 * tol.roundtrip, tol.drift);
  r.pass = used > 0 && p2_used > 0 && finite && rt <= tol.roundtrip && rt_off <= tol.roundtrip && drift < tol.drift &&
           max_leak == 0.0;
  return r;
}

CheckResult quadrant_check(const Tolerances&) {
  CheckResult r{9, "quadrant-extension", "explicit extension from the double quadrant {xy > 0}", {}, {}};
  auto g = std::make_shared<PolarGrid>(PolarGrid::cone(ConeDomain::quadrant(), spec(0.96, 40.0, 4e-11, 48)));
  const double oracle = quadrant_formula([](double x, double y) { return x + y; }, 1.0, -1.0);
  double seam_ratio = 0.0, rt = 0.0, max_ratio = 0.0;
  bool finite = true;
  int used = 0;
  for (const auto& s : smooth_suite()) {
    const Field f = make_test_field(g, s);
    const Field E = extend_quadrant_2d(f);
    const auto seams = quadrant_seams(E);
    seam_ratio = std::max(seam_ratio, seams.seam_jump / std::max(seams.interior_step, 1e-300));
    const Field back = restrict_to_cone(E, g);
    for (std::size_t i = 0; i < f.size(); ++i) rt = std::max(rt, std::abs(back.values()[i] - f.values()[i]));
    for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
      if (!gradient_finite(f, p) || (p > 2.0 && !vertex_continuous(f))) continue;
      if (p == 2.0 && !hat_gate(f).accepted) continue;
      const double ratio = w1p_norm(E, p) / source_norm(f, p);
      finite = finite && std::isfinite(ratio) && ratio > 0.0;
      max_ratio = std::max(max_ratio, ratio);
      ++used;
    }
  }
  r.measured = fmt("Ef(1,-1) for x+y = %.3g; max seam jump / interior step %.3g; round trip %.3g; %d ratios, max %.3f",
                   oracle, seam_ratio, rt, used, max_ratio);
  r.expectation = "oracle 0; seam jump <= 2 x interior step; round trip exact; finite ratios";
  r.pass = oracle == 0.0 && seam_ratio <= 2.0 && rt == 0.0 && finite && used > 0;
  return r;
}

GridPtr density_grid() { return cone_grid(2, spec(0.95, 40.0, 1e-131, 8)); }

CheckResult density_check(const Tolerances& tol) {
  CheckResult r{10, "density", "approximation by fields vanishing near the vertex", {}, {}};
  auto g = density_grid();
  const Field f = make_test_field(g, "lipschitz_compact");
  std::vector<ApproxParams> sweep;
  std::vector<double> eps;
  for (int m = 1; m <= 8; ++m) {
    eps.push_back(std::pow(10.0, -m));
    sweep.push_back({eps.back(), 1.0, 1.0});
  }
  std::vector<double> tot1, grad2;
  for (const auto& row : convergence_table(f, 1.0, ApproxMode::Cutoff, sweep)) tot1.push_back(row.lp_err + row.grad_err);
  for (const auto& row : convergence_table(f, 2.0, ApproxMode::Cutoff, sweep)) grad2.push_back(row.grad_err);
  const double slope = log_log_slope(eps, tot1);
  const std::vector<double> tail(grad2.end() - 4, grad2.end());
  const double plateau_var = max_of(tail) / min_of(tail) - 1.0;

  std::vector<double> kv;
  for (double k : {2.0, 4.0, 8.0, 16.0}) kv.push_back(k * eta_grad_chi_norm(*g, 1e-100, k, 2.0));
  const double k_spread = max_of(kv) / min_of(kv) - 1.0;

  std::vector<ApproxParams> diag;
  std::vector<double> ks, err;
  for (int k = 2; k <= 16; k += 2) diag.push_back({std::pow(10.0, -0.5 * k * k), static_cast<double>(k), 1.0});
  bool monotone = true;
  for (const auto& row : convergence_table(f, 2.0, ApproxMode::Corrected, diag)) {
    ks.push_back(row.k);
    err.push_back(row.lp_err + row.grad_err);
    if (err.size() > 1 && err.back() >= err[err.size() - 2]) monotone = false;
  }
  const double decay = -log_log_slope(ks, err);
  r.measured = fmt("p=1 slope %.4f; p=2 plateau %.4f (spread %.2g); k ||eta grad chi|| spread %.3g; corrected error "
                   "%.3f -> %.3f along eps = 10^{-k^2/2}, decay k^-%.2f%s",
                   slope, tail.back(), plateau_var, k_spread, err.front(), err.back(), decay,
                   monotone ? "" : " (not monotone)");
  r.expectation = fmt("slope 1 +- %.0f%%; plateau > 0 with spread < 2%%; 1/k law within 15%%; monotone decay, "
                      "exponent >= 0.4",
                      100.0 * tol.slope);
  r.pass = std::abs(slope - 1.0) <= tol.slope && tail.back() > 0.0 && plateau_var < 0.02 && k_spread <= 0.15 &&
           monotone && decay >= 0.4;
  return r;
}

CheckResult codimension_check(const Tolerances&) {
  CheckResult r{11, "codimension", "fields with different vertex limits stay away from fields vanishing near 0", {}, {}};
  auto g = density_grid();
  const Field f = make_test_field(g, "jump");
  const double norm = w1p_norm(f, 4.0);
  std::vector<ApproxParams> plain, corrected;
  for (int m = 1; m <= 8; ++m) {
    const double e = std::pow(10.0, -m);
    plain.push_back({e, 1.0, 1.0});
    for (double k : {1.0, 2.0, 4.0, 8.0}) corrected.push_back({e, k, 1.0});
  }
  double lo = kInf;
  for (const auto& row : convergence_table(f, 4.0, ApproxMode::Cutoff, plain))
    lo = std::min(lo, (row.lp_err + row.grad_err) / norm);
  for (const auto& row : convergence_table(f, 4.0, ApproxMode::Corrected, corrected))
    lo = std::min(lo, (row.lp_err + row.grad_err) / norm);
  r.measured = fmt("min W1_4 distance / ||f|| = %.5f over %zu approximants (frozen %.4f)", lo,
                   plain.size() + corrected.size(), kFrozenJumpDistance);
  r.expectation = ">= 0.1 and within 1% of the frozen value";
  r.pass = lo >= 0.1 && std::abs(lo - kFrozenJumpDistance) <= 0.01 * kFrozenJumpDistance;
  return r;
}

CheckResult restriction_hat_check(const Tolerances&) {
  CheckResult r{12, "restriction-hat", "restriction maps W^1_2(R^2) into hat H^1_2 via the cap Poincare chain", {}, {}};
  const auto names = fullspace_suite();
  std::vector<double> C;
  for (auto [q, J] : {std::pair{0.96, 48}, std::pair{0.98, 96}}) {
    auto cone = cone_grid(2, spec(q, 40.0, 4e-11, J));
    auto full = full_grid_for(*cone);
    std::vector<double> ratio(names.size());
    parallel_for(names.size(), [&](std::size_t i) {
      const Field F = make_fullspace_field(full, names[i]);
      const Field fa = radial_split(restrict_to_cone(F, cone)).anti_radial;
      ratio[i] = lp_norm(fa, NormSpec{2.0, Weight::InverseR}) / lp_norm(gradient(F), 2.0);
    });
    C.push_back(max_of(ratio));
  }
  const double drift = std::abs(C[1] / C[0] - 1.0);
  // Wirtinger on the full circle gives 1; subtracting the cap mean adds at most a factor 2
  const double chain = 2.0;
  r.measured = fmt("C = %.5f (coarse) -> %.5f (refined), drift %.2g", C[0], C[1], drift);
  r.expectation = fmt("C <= %.1f and drift <= 5%%", chain);
  r.pass = C[0] <= chain && C[1] <= chain && drift <= 0.05;
  return r;
}

}  // namespace

CheckResult run_criterion(int criterion, const Tolerances& tol) {
  using Check = CheckResult (*)(const Tolerances&);
  static const Check checks[kCriteriaCount] = {hardy_bound,    hardy_failure,       hat_gate_check,
                                               cz_check,       kfunc_check,         k_identity_check,
                                               rearrangement_check, extension_check, quadrant_check,
                                               density_check,  codimension_check,   restriction_hat_check};
  if (criterion < 1 || criterion > kCriteriaCount) throw std::invalid_argument("no such criterion");
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = checks[criterion - 1](tol);
  } catch (const std::exception& e) {
    r.criterion = criterion;
    r.id = "criterion-" + std::to_string(criterion);
    r.measured = std::string("error: ") + e.what();
    r.pass = false;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CheckResult> run_acceptance(const std::vector<int>& criteria, const Tolerances& tol) {
  std::vector<int> which = criteria;
  if (which.empty())
    for (int i = 1; i <= kCriteriaCount; ++i) which.push_back(i);
  std::vector<CheckResult> out;
  for (int c : which) out.push_back(run_criterion(c, tol));
  return out;
}

std::string format_result(const CheckResult& r) {
  return fmt("[%s] %2d %-22s %s | expected %s (%.1fs)", r.pass ? "PASS" : "FAIL", r.criterion, r.id.c_str(),
             r.measured.c_str(), r.expectation.c_str(), r.seconds);
}

std::string summary_json(const std::vector<CheckResult>& results) {
  nlohmann::ordered_json j;
  bool all = true;
  auto& checks = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    checks.push_back({{"criterion", r.criterion},
                      {"id", r.id},
                      {"anchor", r.anchor},
                      {"measured", r.measured},
                      {"expectation", r.expectation},
                      {"pass", r.pass},
                      {"seconds", r.seconds}});
  }
  j["pass"] = all;
  return j.dump(2) + "\n";
}

}  // namespace conelab
