#include "conelab/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "conelab/numerics.hpp"

namespace conelab {

double ApproxParams::delta() const { return std::pow(eps, 1.0 / k); }

void ApproxParams::validate() const {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (!(k >= 1.0)) throw std::invalid_argument("k must be at least 1");
  if (!(N > 0.0)) throw std::invalid_argument("truncation height must be positive");
}

double chi(double s) { return step_down(s, 0.5, 1.0); }

double chi_derivative(double s) { return -2.0 * smoothstep_derivative(2.0 * s - 1.0); }

double eta(double r, double delta) {
  if (r > delta) return 1.0;
  return std::log(delta) / std::log(r);
}

double eta_derivative(double r, double delta) {
  if (r >= delta) return 0.0;
  const double l = std::log(r);
  return -std::log(delta) / (l * l * r);
}

namespace {

void check_resolution(const PolarGrid& g, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  int inside = 0, below = 0;
  for (int k = 0; k < g.K(); ++k) {
    if (g.r(k) >= 0.5 * eps && g.r(k) <= eps) ++inside;
    if (g.r(k) < 0.5 * eps) ++below;
  }
  if (inside < 3 || below < 1) throw std::invalid_argument("eps is below the grid resolution");
}

Field radial_multiply(const Field& f, const std::vector<double>& factor, const std::string& name) {
  const PolarGrid& g = f.grid();
  Field out(f.grid_ptr(), name);
  for (int b = 0; b < g.block_count(); ++b)
    for (int k = 0; k < g.K(); ++k)
      for (int j = 0; j < g.J(); ++j) out.at(b, k, j) = f.at(b, k, j) * factor[k];
  return out;
}

double ring_power_sum(const PolarGrid& g, const std::vector<double>& v, double p) {
  // integral of |v(r)|^p over the grid region for a radial v
  const double ang = g.block_angular_measure() * g.block_count();
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  double s = 0.0;
  for (int k = 0; k < g.K(); ++k) s += std::pow(std::abs(v[k]), p) * g.radial_measure(k);
  return std::pow(s * ang, 1.0 / p);
}

}  // namespace

Field truncate(const Field& f, double N) {
  if (!(N > 0.0)) throw std::invalid_argument("truncation height must be positive");
  Field out = f;
  for (double& v : out.values()) v = std::clamp(v, -N, N);
  out.set_name(f.name() + "_N");
  if (out.vertex_plus) out.vertex_plus = std::clamp(*out.vertex_plus, -N, N);
  if (out.vertex_minus) out.vertex_minus = std::clamp(*out.vertex_minus, -N, N);
  return out;
}

Field cutoff_profile(const GridPtr& grid, double eps) {
  check_resolution(*grid, eps);
  return Field::sample(grid, [eps](const Node& nd) { return chi(nd.r / eps); }, "chi_eps");
}

Field corrector_profile(const GridPtr& grid, double eps, double k) {
  ApproxParams{eps, k, 1.0}.validate();
  const double d = ApproxParams{eps, k, 1.0}.delta();
  return Field::sample(grid, [d](const Node& nd) { return eta(nd.r, d); }, "eta_delta");
}

Field vertex_cutoff(const Field& f, double eps) {
  const PolarGrid& g = f.grid();
  check_resolution(g, eps);
  std::vector<double> factor(g.K());
  for (int k = 0; k < g.K(); ++k) factor[k] = 1.0 - chi(g.r(k) / eps);
  Field out = radial_multiply(f, factor, f.name() + "_eps");
  out.vertex_plus = out.vertex_minus = 0.0;
  return out;
}

Field log_corrector(const Field& f, double eps, double k) {
  const PolarGrid& g = f.grid();
  ApproxParams prm{eps, k, 1.0};
  prm.validate();
  check_resolution(g, eps);
  const double d = prm.delta();
  if (!(d < 1.0)) throw std::invalid_argument("delta must be below 1");
  std::vector<double> factor(g.K());
  for (int i = 0; i < g.K(); ++i) factor[i] = eta(g.r(i), d) * (1.0 - chi(g.r(i) / eps));
  Field out = radial_multiply(f, factor, f.name() + "_eps_delta");
  out.vertex_plus = out.vertex_minus = 0.0;
  return out;
}

double eta_grad_chi_norm(const PolarGrid& g, double eps, double k, double p) {
  ApproxParams prm{eps, k, 1.0};
  prm.validate();
  const double d = prm.delta();
  std::vector<double> v(g.K());
  for (int i = 0; i < g.K(); ++i) v[i] = eta(g.r(i), d) * chi_derivative(g.r(i) / eps) / eps;
  return ring_power_sum(g, v, p);
}

double grad_eta_norm(const PolarGrid& g, double eps, double k, double p) {
  ApproxParams prm{eps, k, 1.0};
  prm.validate();
  const double d = prm.delta();
  std::vector<double> v(g.K());
  for (int i = 0; i < g.K(); ++i) v[i] = eta_derivative(g.r(i), d);
  return ring_power_sum(g, v, p);
}

std::vector<ConvergenceRow> convergence_table(const Field& f, double p, ApproxMode mode,
                                              const std::vector<ApproxParams>& sweep) {
  std::vector<ConvergenceRow> rows;
  double prev = -1.0;
  for (const auto& prm : sweep) {
    Field approx;
    ConvergenceRow row;
    switch (mode) {
      case ApproxMode::Truncate:
        approx = truncate(f, prm.N);
        row.eps = prm.N;
        break;
      case ApproxMode::Cutoff:
        approx = vertex_cutoff(f, prm.eps);
        row.eps = prm.eps;
        break;
      case ApproxMode::Corrected:
        approx = log_corrector(f, prm.eps, prm.k);
        row.eps = prm.eps;
        row.k = prm.k;
        break;
    }
    const Field diff = f - approx;
    row.lp_err = lp_norm(diff, NormSpec{p, Weight::None, NormKind::Lp});
    row.grad_err = lp_norm(gradient(diff), p);
    const double total = row.lp_err + row.grad_err;
    if (prev < 0.0)
      row.trend = "first";
    else if (std::abs(total - prev) <= 0.01 * std::max(prev, 1e-300))
      row.trend = "flat";
    else
      row.trend = total < prev ? "decreasing" : "increasing";
    prev = total;
    rows.push_back(std::move(row));
  }
  return rows;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& value) {
  if (x.size() != value.size() || x.size() < 2) throw std::invalid_argument("slope needs two matching samples");
  double mx = 0.0, my = 0.0;
  const double m = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(value[i]);
  }
  mx /= m;
  my /= m;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = std::log(x[i]) - mx;
    sxy += a * (std::log(value[i]) - my);
    sxx += a * a;
  }
  return sxy / sxx;
}

}  // namespace conelab
