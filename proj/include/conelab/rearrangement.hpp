#pragma once
// Decreasing rearrangements f*, maximal rearrangements f** and the
// K-functionals of the couples (L^1, L^inf), (L^1, L^n) and of the weighted
// Sobolev couple.

#include <span>
#include <vector>

#include "conelab/field.hpp"

namespace conelab {

/// Right-continuous step function f*(t) = value[i] on [cum[i-1], cum[i]),
/// built from |values| sorted descending (ties broken by sample index).
class RearrangementTable {
 public:
  RearrangementTable() = default;
  static RearrangementTable build(std::span<const double> values, std::span<const double> measures);
  static RearrangementTable build(const Field& f);

  std::size_t steps() const { return value_.size(); }
  const std::vector<double>& step_values() const { return value_; }
  const std::vector<double>& step_ends() const { return cum_; }
  double total_measure() const { return cum_.empty() ? 0.0 : cum_.back(); }
  double total_integral() const { return int_.empty() ? 0.0 : int_.back(); }

  double f_star(double t) const;
  /// int_0^t f*(s) ds
  double integral(double t) const;
  /// (1/t) int_0^t f*
  double f_star_star(double t) const;
  /// int_a^b f*(s)^p ds, b may be +infinity.
  double integral_pow(double a, double b, double p) const;
  /// ||f*||_{L^p(0, inf)}; p = infinity gives f*(0).
  double lp_norm(double p) const;
  /// ||f**||_{L^p(0, inf)} for p > 1, by per-step Gauss quadrature plus the
  /// exact tail ||f||_1^p T^{1-p}/(p-1) beyond the support.
  double f_star_star_lp_norm(double p) const;
  /// lambda({|f| > s})
  double distribution(double s) const;

 private:
  std::size_t step_at(double t) const;

  std::vector<double> value_;  // nonincreasing
  std::vector<double> cum_;    // step right ends
  std::vector<double> int_;    // int_0^{cum_[i]} f*
  std::vector<double> width_;  // step measures
};

/// K(f, t; L^1, L^inf) = int_0^t f*.
double k_l1_linf(const RearrangementTable& table, double t);

/// K(f, t; L^1, L^n) ~ int_0^{t^a} f* + t (int_{t^a}^inf f*^n)^{1/n}, a = n/(n-1).
double k_l1_ln(const RearrangementTable& table, double t, int n);

/// Brute-force (L^1, L^inf) K over truncations g = sign(f) min(|f|, lambda) for
/// lambda in {0, every |value|, midpoints of consecutive sorted values}.
double k_l1_linf_truncation_search(std::span<const double> values, std::span<const double> measures, double t);

/// ||f - g||_1 + t ||g||_inf for an arbitrary splitting.
double k_l1_linf_cost(std::span<const double> values, std::span<const double> g, std::span<const double> measures,
                      double t);

/// Rearrangements of |f|, |f|/r and |grad f|.
struct SobolevTables {
  RearrangementTable f, f_over_r, grad;
  static SobolevTables build(const Field& f);
};

/// t (f**(t) + (|f|/r)**(t) + |grad f|**(t)).
double k_sobolev_estimate(const SobolevTables& tables, double t);
double k_sobolev_estimate(const Field& f, double t);

/// (int_0^inf (t^{-theta} K(f, t))^p dt/t)^{1/p} with K the Sobolev estimate.
/// 240 geometric points on [1e-6, 1e6], trapezoidal in log t, with tails from
/// K(t) ~ K(a) t / a below a and K(t) ~ K(b) above b.
double interpolation_norm(const Field& f, double theta, double p);

}  // namespace conelab
