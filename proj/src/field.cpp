#include "conelab/field.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "conelab/kernels.hpp"
#include "conelab/numerics.hpp"

namespace conelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_grid(const Field& a, const Field& b) {
  if (a.grid_ptr() != b.grid_ptr() && a.size() != b.size())
    throw std::invalid_argument("fields live on different grids");
}

// Derivative at `at` of the quadratic through (x_i, .). The weights sum to zero;
// callers apply them to differences so constants stay exact near the vertex.
std::array<double, 3> lagrange_d1(double x0, double x1, double x2, double at) {
  return {((at - x1) + (at - x2)) / ((x0 - x1) * (x0 - x2)), ((at - x0) + (at - x2)) / ((x1 - x0) * (x1 - x2)),
          ((at - x0) + (at - x1)) / ((x2 - x0) * (x2 - x1))};
}

// d/dtheta of one ring; `row` holds J values.
double angular_derivative(const PolarGrid& g, const double* row, int b, int j) {
  const int J = g.J();
  const double h = g.dtheta();
  const Block blk = g.blocks()[b];
  const bool n3 = g.n() == 3;
  if (j > 0 && j < J - 1) return (row[j + 1] - row[j - 1]) / (2.0 * h);
  if (blk == Block::Full && !n3) {
    int jm = (j - 1 + J) % J, jp = (j + 1) % J;
    return (row[jp] - row[jm]) / (2.0 * h);
  }
  if (j == 0) {
    if (n3) return (row[1] - row[0]) / (2.0 * h);  // mirror ghost across the axis
    return (-3.0 * row[0] + 4.0 * row[1] - row[2]) / (2.0 * h);
  }
  if (n3 && blk == Block::Full) return (row[J - 1] - row[J - 2]) / (2.0 * h);
  return (3.0 * row[J - 1] - 4.0 * row[J - 2] + row[J - 3]) / (2.0 * h);
}

std::vector<double> divided_by_r(const PolarGrid& g, std::span<const double> v) {
  std::vector<double> out(v.size());
  const std::size_t J = g.J(), K = g.K();
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g.r(static_cast<int>((i / J) % K));
  return out;
}

}  // namespace

Field::Field(GridPtr grid, std::vector<double> values, std::string name)
    : grid_(std::move(grid)), values_(std::move(values)), name_(std::move(name)) {
  if (!grid_) throw std::invalid_argument("field without grid");
  if (values_.size() != grid_->size()) throw std::invalid_argument("sample array does not match grid shape");
}

Field::Field(GridPtr grid, std::string name) : grid_(std::move(grid)), name_(std::move(name)) {
  if (!grid_) throw std::invalid_argument("field without grid");
  values_.assign(grid_->size(), 0.0);
}

Field Field::sample(GridPtr grid, const std::function<double(const Node&)>& fn, std::string name) {
  Field f(grid, std::move(name));
  const PolarGrid& g = *grid;
  for (int b = 0; b < g.block_count(); ++b)
    for (int k = 0; k < g.K(); ++k)
      for (int j = 0; j < g.J(); ++j) f.values_[g.index(b, k, j)] = fn(g.node(b, k, j));
  return f;
}

Field& Field::operator+=(const Field& o) {
  require_same_grid(*this, o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  require_same_grid(*this, o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

Field& Field::operator*=(double s) {
  for (double& v : values_) v *= s;
  if (vertex_plus) *vertex_plus *= s;
  if (vertex_minus) *vertex_minus *= s;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

std::vector<double> GradientField::magnitude() const {
  std::vector<double> out(radial.size());
  kernels::magnitude(radial, angular, out);
  return out;
}

GradientField gradient(const Field& f) {
  const PolarGrid& g = f.grid();
  const int K = g.K(), J = g.J();
  if (K < 3 || J < 3) throw std::invalid_argument("gradient needs at least 3 nodes in each direction");
  GradientField out{f.grid_ptr(), std::vector<double>(f.size()), std::vector<double>(f.size())};

  std::vector<std::array<double, 3>> rw(K);
  std::vector<int> rc(K);
  for (int k = 0; k < K; ++k) {
    int c = std::clamp(k, 1, K - 2);
    rc[k] = c;
    rw[k] = lagrange_d1(g.r(c - 1), g.r(c), g.r(c + 1), g.r(k));
  }
  auto v = f.values();
  for (int b = 0; b < g.block_count(); ++b) {
    for (int k = 0; k < K; ++k) {
      const double* row = &v[g.index(b, k, 0)];
      const double* rm = &v[g.index(b, rc[k] - 1, 0)];
      const double* r0 = &v[g.index(b, rc[k], 0)];
      const double* rp = &v[g.index(b, rc[k] + 1, 0)];
      const double inv_r = 1.0 / g.r(k);
      for (int j = 0; j < J; ++j) {
        std::size_t i = g.index(b, k, j);
        out.radial[i] = rw[k][0] * (rm[j] - r0[j]) + rw[k][2] * (rp[j] - r0[j]);
        out.angular[i] = angular_derivative(g, row, b, j) * inv_r;
      }
    }
  }
  return out;
}

std::pair<double, double> gradient_at(const Field& f, int b, int k, int j) {
  const PolarGrid& g = f.grid();
  const int K = g.K();
  if (K < 3 || g.J() < 3) throw std::invalid_argument("gradient needs at least 3 nodes in each direction");
  const int c = std::clamp(k, 1, K - 2);
  auto w = lagrange_d1(g.r(c - 1), g.r(c), g.r(c + 1), g.r(k));
  const double f0 = f.at(b, c, j);
  double dr = w[0] * (f.at(b, c - 1, j) - f0) + w[2] * (f.at(b, c + 1, j) - f0);
  double da = angular_derivative(g, &f.values()[g.index(b, k, 0)], b, j) / g.r(k);
  return {dr, da};
}

double lp_norm(const PolarGrid& grid, std::span<const double> values, double p, Weight weight) {
  if (values.empty()) throw std::invalid_argument("empty field");
  if (!(p >= 1.0)) throw std::invalid_argument("norm exponent must be >= 1");
  std::vector<double> scaled;
  if (weight == Weight::InverseR) {
    scaled = divided_by_r(grid, values);
    values = scaled;
  }
  if (std::isinf(p)) return kernels::max_abs(values);
  double s = kernels::weighted_pow_sum(values, grid.measures(), p);
  return std::pow(s, 1.0 / p);
}

double lp_norm(const Field& f, const NormSpec& spec) {
  if (spec.kind != NormKind::Lp) return sobolev_norm(f, spec);
  return lp_norm(f.grid(), f.values(), spec.p, spec.weight);
}

double lp_norm(const GradientField& g, double p) { return lp_norm(*g.grid, g.magnitude(), p); }

double radial_derivative_norm(const GradientField& g, double p) { return lp_norm(*g.grid, g.radial, p); }

double hardy_quotient(const Field& f, double p) {
  double den = radial_derivative_norm(gradient(f), p);
  if (!(den > 0.0)) throw std::domain_error("Hardy quotient of a field with zero radial derivative");
  return lp_norm(f.grid(), f.values(), p, Weight::InverseR) / den;
}

std::vector<double> ring_means(const Field& f, std::optional<int> block) {
  const PolarGrid& g = f.grid();
  const int K = g.K(), J = g.J();
  int b0 = 0, b1 = g.block_count();
  if (block) {
    if (*block < 0 || *block >= b1) throw std::invalid_argument("no such block");
    b0 = *block;
    b1 = *block + 1;
  }
  const double wsum = g.block_angular_measure() * (b1 - b0);
  std::vector<double> means(K);
  for (int k = 0; k < K; ++k) {
    double s = 0.0;
    for (int b = b0; b < b1; ++b)
      s += kernels::weighted_sum(std::span<const double>(&f.values()[g.index(b, k, 0)], J),
                                 std::span<const double>(g.angular_weights()));
    means[k] = s / wsum;
  }
  return means;
}

RadialSplit radial_split(const Field& f, std::optional<int> block) {
  const PolarGrid& g = f.grid();
  auto means = ring_means(f, block);
  Field fr(f.grid_ptr(), f.name() + "_r");
  for (int b = 0; b < g.block_count(); ++b)
    for (int k = 0; k < g.K(); ++k)
      for (int j = 0; j < g.J(); ++j) fr.at(b, k, j) = means[k];
  Field fa = f - fr;
  fa.set_name(f.name() + "_a");
  fa.vertex_plus.reset();
  fa.vertex_minus.reset();
  return {std::move(fr), std::move(fa)};
}

EvenOddSplit even_odd_split(const Field& f) {
  const PolarGrid& g = f.grid();
  const int bp = g.block_index(Block::Plus), bm = g.block_index(Block::Minus);
  if (bp < 0 || bm < 0) throw std::invalid_argument("even/odd split needs both half-cones");
  Field e(f.grid_ptr(), f.name() + "_e"), o(f.grid_ptr(), f.name() + "_o");
  for (int k = 0; k < g.K(); ++k)
    for (int j = 0; j < g.J(); ++j) {
      double a = f.at(bp, k, j), s = f.at(bm, k, j);
      e.at(bp, k, j) = e.at(bm, k, j) = 0.5 * (a + s);
      o.at(bp, k, j) = 0.5 * (a - s);
      o.at(bm, k, j) = 0.5 * (s - a);
    }
  return {std::move(e), std::move(o)};
}

double sobolev_norm(const Field& f, const NormSpec& spec) {
  const double p = spec.p;
  switch (spec.kind) {
    case NormKind::Lp:
      return lp_norm(f.grid(), f.values(), p, spec.weight);
    case NormKind::W1p:
      return lp_norm(f.grid(), f.values(), p) + lp_norm(gradient(f), p);
    case NormKind::TildeH1p:
      return lp_norm(f.grid(), f.values(), p) + lp_norm(gradient(f), p) +
             lp_norm(f.grid(), f.values(), p, Weight::InverseR);
    case NormKind::HatH1n: {
      if (p != f.grid().n()) throw std::invalid_argument("the hat norm is defined for p = n only");
      auto split = radial_split(f);
      return lp_norm(f.grid(), f.values(), p) + lp_norm(gradient(f), p) +
             lp_norm(f.grid(), split.anti_radial.values(), p, Weight::InverseR);
    }
  }
  return 0.0;
}

double poincare_cap_ratio(const Field& f, int block, int k, double p) {
  const PolarGrid& g = f.grid();
  if (block < 0 || block >= g.block_count() || k < 0 || k >= g.K()) throw std::invalid_argument("no such ring");
  const int J = g.J();
  const double* row = &f.values()[g.index(block, k, 0)];
  std::span<const double> w(g.angular_weights());
  std::span<const double> vals(row, J);
  const double mean = kernels::weighted_sum(vals, w) / g.block_angular_measure();
  std::vector<double> dev(J), der(J);
  for (int j = 0; j < J; ++j) {
    dev[j] = row[j] - mean;
    der[j] = angular_derivative(g, row, block, j);
  }
  // Both sides carry the same factor r^{(n-1)/p} from dsigma; the tangential
  // gradient carries 1/r and the diameter r, so r drops out entirely.
  double num, den;
  if (std::isinf(p)) {
    num = kernels::max_abs(dev);
    den = kernels::max_abs(der);
  } else {
    num = std::pow(kernels::weighted_pow_sum(dev, w, p), 1.0 / p);
    den = std::pow(kernels::weighted_pow_sum(der, w, p), 1.0 / p);
  }
  const double scale = g.is_full() ? kPi : 2.0 * g.domain().half_angle;
  // oscillation at round-off level counts as constant
  if (num <= 1e-14 * kernels::max_abs(vals) || num <= 1e-300) return 0.0;
  if (den <= 0.0) return kInf;
  return num / (scale * den);
}

double poincare_ball_ratio(const Field& f, std::span<const double> center, double radius, double q) {
  const PolarGrid& g = f.grid();
  if (!(radius > 0.0) || !(q >= 1.0)) throw std::invalid_argument("degenerate ball");
  if (static_cast<int>(center.size()) != g.n()) throw DimensionError("ball centre has the wrong dimension");
  auto grad = gradient(f).magnitude();
  double c = 0.0;
  for (double x : center) c += x * x;
  c = std::sqrt(c);
  std::vector<std::size_t> cells;
  for (int b = 0; b < g.block_count(); ++b)
    for (int k = 0; k < g.K(); ++k) {
      if (g.r(k) >= c + radius || g.r(k) <= c - radius) continue;
      for (int j = 0; j < g.J(); ++j) {
        Point x = g.cartesian(b, k, j);
        double d2 = 0.0;
        for (int i = 0; i < g.n(); ++i) d2 += (x[i] - center[i]) * (x[i] - center[i]);
        if (d2 < radius * radius) cells.push_back(g.index(b, k, j));
      }
    }
  if (cells.empty()) throw std::invalid_argument("ball contains no grid cell");
  const auto& mu = g.measures();
  double vol = 0.0, mean = 0.0;
  for (auto i : cells) {
    vol += mu[i];
    mean += f.values()[i] * mu[i];
  }
  mean /= vol;
  double osc = 0.0, gq = 0.0;
  for (auto i : cells) {
    osc += std::pow(std::abs(f.values()[i] - mean), q) * mu[i];
    gq += std::pow(grad[i], q) * mu[i];
  }
  osc = std::pow(osc / vol, 1.0 / q);
  gq = std::pow(gq / vol, 1.0 / q);
  if (osc <= 1e-14 * (std::abs(mean) + 1e-300)) return 0.0;
  if (gq <= 0.0) return kInf;
  return osc / (radius * gq);
}

double morrey_quotient(const Field& f, double p, double eps) {
  const PolarGrid& g = f.grid();
  const int n = g.n();
  if (!(p > n)) throw std::invalid_argument("Morrey quotient needs p > n");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  auto grad = gradient(f).magnitude();
  const auto& mu = g.measures();
  double vol = 0.0, acc = 0.0;
  for (int b = 0; b < g.block_count(); ++b)
    for (int k = 0; k < g.K(); ++k) {
      if (g.r(k) >= 2.0 * eps) continue;
      for (int j = 0; j < g.J(); ++j) {
        auto i = g.index(b, k, j);
        vol += mu[i];
        acc += std::pow(grad[i], p) * mu[i];
      }
    }
  if (vol <= 0.0) throw std::invalid_argument("eps below grid resolution");
  const double avg = std::pow(acc / vol, 1.0 / p);
  double best = 0.0;
  for (int b = 0; b < g.block_count(); ++b)
    for (int k = 0; k < g.K(); ++k) {
      if (g.r(k) >= eps) continue;
      const double scale = std::pow(g.r(k) / eps, 1.0 - n / p) * avg;
      for (int j = 0; j < g.J(); ++j) {
        double v = std::abs(f.at(b, k, j)) / eps;
        if (v == 0.0) continue;
        best = std::max(best, scale > 0.0 ? v / scale : kInf);
      }
    }
  return best;
}

std::vector<PartialIntegralRow> partial_integrals(const PolarGrid& grid, std::span<const double> values, double p,
                                                  Weight weight, std::span<const double> r_mins) {
  const int K = grid.K(), J = grid.J();
  std::vector<double> v(values.begin(), values.end());
  if (weight == Weight::InverseR) v = divided_by_r(grid, values);
  std::vector<double> ring(K, 0.0);
  for (int b = 0; b < grid.block_count(); ++b)
    for (int k = 0; k < K; ++k)
      ring[k] += kernels::weighted_pow_sum(std::span<const double>(&v[grid.index(b, k, 0)], J),
                                           std::span<const double>(&grid.measures()[grid.index(b, k, 0)], J), p);
  std::vector<double> cum(K + 1, 0.0);
  for (int k = 0; k < K; ++k) cum[k + 1] = cum[k] + ring[k];

  std::vector<PartialIntegralRow> out;
  out.reserve(r_mins.size());
  for (double rm : r_mins) {
    double val;
    if (rm >= grid.r_hi(0)) {
      val = 0.0;
    } else if (rm <= grid.r_lo(K - 1)) {
      val = cum[K];
    } else {
      int k = 0;
      while (k < K && grid.r_lo(k) > rm) ++k;
      double frac = std::log(grid.r_hi(k) / rm) / std::log(grid.r_hi(k) / grid.r_lo(k));
      val = cum[k] + frac * ring[k];
    }
    out.push_back({rm, val});
  }
  return out;
}

DivergenceFit fit_divergence(std::span<const PartialIntegralRow> table) {
  DivergenceFit fit;
  if (table.size() < 3) throw std::invalid_argument("divergence fit needs at least 3 rows");
  const double last = table.back().integral;
  std::vector<double> xs, ys;
  double max_inc = 0.0;
  for (std::size_t i = 0; i + 1 < table.size(); ++i) {
    double inc = table[i + 1].integral - table[i].integral;
    max_inc = std::max(max_inc, std::abs(inc));
    double L0 = std::abs(std::log(table[i].r_min)), L1 = std::abs(std::log(table[i + 1].r_min));
    double per_unit = inc / (L1 - L0);
    if (per_unit > 0.0) {
      xs.push_back(std::log(0.5 * (L0 + L1)));
      ys.push_back(std::log(per_unit));
    }
  }
  const double tail = table.back().integral - table[table.size() - 2].integral;
  fit.last_relative_increment = last != 0.0 ? tail / last : 0.0;
  if (max_inc <= 1e-12 * std::abs(last) || xs.size() < 2) {
    fit.negligible = true;
    fit.exponent = -kInf;
    return fit;
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  fit.exponent = 1.0 + sxy / sxx;
  return fit;
}

std::vector<double> decade_table(int first, int last) {
  std::vector<double> out;
  for (int m = first; m <= last; ++m) out.push_back(std::pow(10.0, -m));
  return out;
}

}  // namespace conelab
