#pragma once
// Scalar fields on polar grids and the calculus built on them: gradients,
// L^p / Sobolev / Hardy norms, radial and even/odd splits, Poincare and Morrey
// quotients, and partial-integral tables for norms that diverge at the vertex.

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conelab/grid.hpp"

namespace conelab {

using GridPtr = std::shared_ptr<const PolarGrid>;

class Field {
 public:
  Field() = default;
  Field(GridPtr grid, std::vector<double> values, std::string name = {});
  /// Zero field on the grid.
  explicit Field(GridPtr grid, std::string name = {});

  static Field sample(GridPtr grid, const std::function<double(const Node&)>& fn, std::string name = {});

  const PolarGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  std::size_t size() const { return values_.size(); }

  double at(int b, int k, int j) const { return values_[grid_->index(b, k, j)]; }
  double& at(int b, int k, int j) { return values_[grid_->index(b, k, j)]; }

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Declared limits f(0+), f(0-) at the vertex, when they exist.
  std::optional<double> vertex_plus, vertex_minus;

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(double s);

 private:
  GridPtr grid_;
  std::vector<double> values_;
  std::string name_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);

struct GradientField {
  GridPtr grid;
  std::vector<double> radial;   // d_r f
  std::vector<double> angular;  // r^{-1} d_theta f

  /// |grad f| per cell.
  std::vector<double> magnitude() const;
};

enum class Weight { None, InverseR };
enum class NormKind { Lp, W1p, TildeH1p, HatH1n };

struct NormSpec {
  double p = 2.0;  // +infinity allowed
  Weight weight = Weight::None;
  NormKind kind = NormKind::Lp;
};

/// Three-point finite differences; throws if the grid has fewer than 3 nodes in
/// either direction.
GradientField gradient(const Field& f);
/// The same stencils evaluated at one cell: (d_r f, r^{-1} d_theta f).
std::pair<double, double> gradient_at(const Field& f, int b, int k, int j);

/// (sum |v|^p mu)^{1/p} over all cells, or max |v| for p = infinity.
double lp_norm(const PolarGrid& grid, std::span<const double> values, double p, Weight weight = Weight::None);
double lp_norm(const Field& f, const NormSpec& spec);
/// L^p norm of |grad f|.
double lp_norm(const GradientField& g, double p);
/// L^p norm of the radial component alone.
double radial_derivative_norm(const GradientField& g, double p);

/// ||f/r||_p / ||d_r f||_p. Throws std::domain_error on a zero radial derivative.
double hardy_quotient(const Field& f, double p);

struct RadialSplit {
  Field radial;
  Field anti_radial;
};

/// f_r(r) = mean of f over the caps of every block on the ring (or over the
/// given block only); f_a = f - f_r.
RadialSplit radial_split(const Field& f, std::optional<int> block = std::nullopt);
/// Per-ring cap means, K entries.
std::vector<double> ring_means(const Field& f, std::optional<int> block = std::nullopt);

struct EvenOddSplit {
  Field even;
  Field odd;
};
/// f_e = (f + f o S)/2, f_o = (f - f o S)/2 with S x = -x. Needs both half-cones.
EvenOddSplit even_odd_split(const Field& f);

/// W^1_p, tilde H^1_p or hat H^1_n norm. Throws std::invalid_argument for the
/// hat norm with p != n.
double sobolev_norm(const Field& f, const NormSpec& spec);

/// Cap Poincare ratio on ring k of a block:
///   ||f - mean||_{L^p(cap)} / (diam(cap) ||grad_theta f||_{L^p(cap)}),
/// diam being the geodesic diameter 2 w r. Returns 0 for f constant on the cap.
double poincare_cap_ratio(const Field& f, int block, int k, double p);

/// (avg_B |f - f_B|^q)^{1/q} / (R (avg_B |grad f|^q)^{1/q}) over grid cells with
/// centres in B(center, R). Returns +infinity for a nonzero oscillation with
/// vanishing gradient.
double poincare_ball_ratio(const Field& f, std::span<const double> center, double radius, double q);

/// sup_{|x| < eps} |f(x)|/eps / ((|x|/eps)^{1-n/p} (avg_{|y|<2eps} |grad f|^p)^{1/p}).
double morrey_quotient(const Field& f, double p, double eps);

/// Integral of sum over the ring |v|^p mu over r >= r_min, for each r_min.
/// Within a cell the integral is interpolated linearly in log r.
struct PartialIntegralRow {
  double r_min;
  double integral;
};
std::vector<PartialIntegralRow> partial_integrals(const PolarGrid& grid, std::span<const double> values, double p,
                                                  Weight weight, std::span<const double> r_mins);

/// Divergence rate of partial integrals tabulated at r_min = 10^{-m}:
/// per-decade increments D(L) behave like L^{s-1} with L = |ln r_min|, and s is
/// fitted from the increments (s = 1 - 2 beta for the logarithmic counterexample;
/// s < 0 means convergence).
struct DivergenceFit {
  double exponent = 0.0;               // s
  double last_relative_increment = 0;  // last increment / last value
  bool negligible = false;             // all increments below round-off
};
DivergenceFit fit_divergence(std::span<const PartialIntegralRow> table);

/// r_min = 10^{-first}, ..., 10^{-last}.
std::vector<double> decade_table(int first, int last);

}  // namespace conelab
