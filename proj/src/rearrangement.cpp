#include "conelab/rearrangement.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace conelab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

RearrangementTable RearrangementTable::build(std::span<const double> values, std::span<const double> measures) {
  if (values.size() != measures.size()) throw std::invalid_argument("values and measures differ in length");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(values[a]) > std::abs(values[b]); });
  RearrangementTable t;
  t.value_.reserve(order.size());
  t.cum_.reserve(order.size());
  t.int_.reserve(order.size());
  t.width_.reserve(order.size());
  double cum = 0.0, acc = 0.0;
  for (std::size_t i : order) {
    if (!(measures[i] >= 0.0)) throw std::invalid_argument("negative cell measure");
    if (measures[i] == 0.0) continue;
    double v = std::abs(values[i]);
    cum += measures[i];
    acc += v * measures[i];
    t.value_.push_back(v);
    t.cum_.push_back(cum);
    t.int_.push_back(acc);
    t.width_.push_back(measures[i]);
  }
  return t;
}

RearrangementTable RearrangementTable::build(const Field& f) { return build(f.values(), f.grid().measures()); }

std::size_t RearrangementTable::step_at(double t) const {
  // first i with cum_[i] > t
  return static_cast<std::size_t>(std::upper_bound(cum_.begin(), cum_.end(), t) - cum_.begin());
}

double RearrangementTable::f_star(double t) const {
  if (t < 0.0) throw std::invalid_argument("f* needs t >= 0");
  std::size_t i = step_at(t);
  return i < value_.size() ? value_[i] : 0.0;
}

double RearrangementTable::integral(double t) const {
  if (t <= 0.0) return 0.0;
  std::size_t i = step_at(t);
  if (i >= value_.size()) return total_integral();
  double start = i == 0 ? 0.0 : cum_[i - 1];
  double base = i == 0 ? 0.0 : int_[i - 1];
  return base + value_[i] * (t - start);
}

double RearrangementTable::f_star_star(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("f** needs t > 0");
  return integral(t) / t;
}

double RearrangementTable::integral_pow(double a, double b, double p) const {
  a = std::max(a, 0.0);
  if (b <= a) return 0.0;
  double s = 0.0;
  for (std::size_t i = step_at(a); i < value_.size(); ++i) {
    const double start = i == 0 ? 0.0 : cum_[i - 1];
    if (start >= b) break;
    // whole steps use the cell measure, which cum_ differences lose near the vertex
    const double w = (a <= start && cum_[i] <= b) ? width_[i] : std::min(b, cum_[i]) - std::max(a, start);
    if (value_[i] > 0.0 && w > 0.0) s += std::pow(value_[i], p) * w;
  }
  return s;
}

double RearrangementTable::lp_norm(double p) const {
  if (std::isinf(p)) return value_.empty() ? 0.0 : value_.front();
  return std::pow(integral_pow(0.0, kInf, p), 1.0 / p);
}

double RearrangementTable::f_star_star_lp_norm(double p) const {
  if (!(p > 1.0)) throw std::invalid_argument("||f**||_p is finite only for p > 1");
  if (value_.empty()) return 0.0;
  using Gauss = boost::math::quadrature::gauss<double, 20>;
  double s = 0.0;
  // First step: f** = value_[0] is constant.
  s += std::pow(value_[0], p) * cum_[0];
  for (std::size_t i = 1; i < value_.size(); ++i) {
    const double a = value_[i], b = int_[i - 1] - value_[i] * cum_[i - 1];
    const double t0 = cum_[i - 1], t1 = cum_[i];
    if (t1 <= t0) continue;
    // f**(t) = a + b/t; integrate in u = ln t, splitting long steps.
    const double u0 = std::log(t0), u1 = std::log(t1);
    const int pieces = std::max(1, static_cast<int>(std::ceil((u1 - u0) / 0.5)));
    const double du = (u1 - u0) / pieces;
    for (int m = 0; m < pieces; ++m) {
      s += Gauss::integrate(
          [&](double u) {
            double t = std::exp(u);
            return std::pow(a + b / t, p) * t;
          },
          u0 + m * du, u0 + (m + 1) * du);
    }
  }
  const double T = total_measure(), I = total_integral();
  s += std::pow(I, p) * std::pow(T, 1.0 - p) / (p - 1.0);
  return std::pow(s, 1.0 / p);
}

double RearrangementTable::distribution(double s) const {
  // value_ is nonincreasing: count steps with value > s.
  auto it = std::partition_point(value_.begin(), value_.end(), [s](double v) { return v > s; });
  std::size_t n = static_cast<std::size_t>(it - value_.begin());
  return n == 0 ? 0.0 : cum_[n - 1];
}

double k_l1_linf(const RearrangementTable& table, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("K-functional needs t > 0");
  return table.integral(t);
}

double k_l1_ln(const RearrangementTable& table, double t, int n) {
  if (!(t > 0.0)) throw std::invalid_argument("K-functional needs t > 0");
  if (n < 2) throw std::invalid_argument("K(L^1, L^n) needs n >= 2");
  const double a = static_cast<double>(n) / (n - 1);
  const double s = std::pow(t, a);
  return table.integral(s) + t * std::pow(table.integral_pow(s, kInf, n), 1.0 / n);
}

double k_l1_linf_cost(std::span<const double> values, std::span<const double> g, std::span<const double> measures,
                      double t) {
  double l1 = 0.0, sup = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    l1 += std::abs(values[i] - g[i]) * measures[i];
    if (measures[i] > 0.0) sup = std::max(sup, std::abs(g[i]));
  }
  return l1 + t * sup;
}

double k_l1_linf_truncation_search(std::span<const double> values, std::span<const double> measures, double t) {
  std::vector<double> levels{0.0};
  std::vector<double> a;
  for (double v : values) a.push_back(std::abs(v));
  std::sort(a.begin(), a.end());
  for (std::size_t i = 0; i < a.size(); ++i) {
    levels.push_back(a[i]);
    if (i + 1 < a.size()) levels.push_back(0.5 * (a[i] + a[i + 1]));
  }
  double best = kInf;
  std::vector<double> g(values.size());
  for (double lam : levels) {
    for (std::size_t i = 0; i < values.size(); ++i)
      g[i] = std::copysign(std::min(std::abs(values[i]), lam), values[i]);
    best = std::min(best, k_l1_linf_cost(values, g, measures, t));
  }
  return best;
}

SobolevTables SobolevTables::build(const Field& f) {
  const PolarGrid& g = f.grid();
  std::vector<double> over_r(f.size());
  const std::size_t J = g.J(), K = g.K();
  for (std::size_t i = 0; i < f.size(); ++i) over_r[i] = f.values()[i] / g.r(static_cast<int>((i / J) % K));
  return {RearrangementTable::build(f.values(), g.measures()), RearrangementTable::build(over_r, g.measures()),
          RearrangementTable::build(gradient(f).magnitude(), g.measures())};
}

double k_sobolev_estimate(const SobolevTables& tb, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("K-functional needs t > 0");
  return tb.f.integral(t) + tb.f_over_r.integral(t) + tb.grad.integral(t);
}

double k_sobolev_estimate(const Field& f, double t) { return k_sobolev_estimate(SobolevTables::build(f), t); }

double interpolation_norm(const Field& f, double theta, double p) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in (0, 1)");
  if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("p must lie in [1, inf)");
  const auto tables = SobolevTables::build(f);
  constexpr int kPoints = 240;
  const double la = std::log(1e-6), lb = std::log(1e6);
  const double h = (lb - la) / (kPoints - 1);
  std::vector<double> vals(kPoints);
  double Ka = 0.0, Kb = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    double u = la + i * h, t = std::exp(u);
    double K = k_sobolev_estimate(tables, t);
    if (i == 0) Ka = K;
    if (i == kPoints - 1) Kb = K;
    vals[i] = std::pow(std::exp(-theta * u) * K, p);
  }
  double s = 0.0;
  for (int i = 0; i + 1 < kPoints; ++i) s += 0.5 * h * (vals[i] + vals[i + 1]);
  const double a = 1e-6, b = 1e6;
  // Below a: K(t) = K(a) t/a, so (t^{-theta} K)^p = (K(a)/a)^p t^{p(1-theta)}.
  s += std::pow(Ka / a, p) * std::pow(a, p * (1.0 - theta)) / (p * (1.0 - theta));
  // Above b: K(t) = K(b).
  s += std::pow(Kb, p) * std::pow(b, -p * theta) / (p * theta);
  return std::pow(s, 1.0 / p);
}

}  // namespace conelab
