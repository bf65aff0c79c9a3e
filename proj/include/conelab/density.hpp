#pragma once
// Approximation of cone fields by fields vanishing near the vertex: bounded
// truncation, the vertex cutoff f (1 - chi_eps) and, at the critical exponent,
// the logarithmic corrector f eta_delta (1 - chi_eps) with delta = eps^{1/k}.
//
// chi(s) = 1 on [0, 1/2], 0 on [1, inf), quintic in between; chi_eps(x) = chi(|x|/eps).
// eta_delta(x) = |ln delta| / |ln |x|| for |x| <= delta and 1 beyond.

#include <string>
#include <vector>

#include "conelab/field.hpp"

namespace conelab {

struct ApproxParams {
  double eps = 1e-3;
  double k = 1.0;
  double N = 1.0;

  double delta() const;
  /// Throws std::invalid_argument unless 0 < eps < 1, k >= 1 and N > 0.
  void validate() const;
};

double chi(double s);
double chi_derivative(double s);
double eta(double r, double delta);
double eta_derivative(double r, double delta);

/// Clamp to [-N, N].
Field truncate(const Field& f, double N);
/// f (1 - chi_eps). Throws std::invalid_argument when fewer than three radial
/// nodes fall in the transition [eps/2, eps] or none lies below eps/2.
Field vertex_cutoff(const Field& f, double eps);
/// f eta_delta (1 - chi_eps), delta = eps^{1/k}. Same resolution rule; throws
/// for delta >= 1.
Field log_corrector(const Field& f, double eps, double k);

/// Grid fields of the cutoff pieces, used for the ||f grad chi_eps|| and
/// ||eta grad chi_eps|| measurements.
Field cutoff_profile(const GridPtr& grid, double eps);               // chi_eps
Field corrector_profile(const GridPtr& grid, double eps, double k);  // eta_delta

/// || eta_delta grad chi_eps ||_p and || grad eta_delta ||_p from the exact
/// radial derivatives on the grid cells.
double eta_grad_chi_norm(const PolarGrid& grid, double eps, double k, double p);
double grad_eta_norm(const PolarGrid& grid, double eps, double k, double p);

enum class ApproxMode { Truncate, Cutoff, Corrected };

struct ConvergenceRow {
  double eps = 0.0;  // or N for truncation
  double k = 0.0;
  double lp_err = 0.0;
  double grad_err = 0.0;
  std::string trend;  // "first", "decreasing", "flat", "increasing"
};

/// Errors ||f - approx||_p and ||grad(f - approx)||_p for each sweep point. The
/// trend compares lp_err + grad_err with the previous row; changes under 1% are
/// "flat".
std::vector<ConvergenceRow> convergence_table(const Field& f, double p, ApproxMode mode,
                                              const std::vector<ApproxParams>& sweep);

/// Least-squares slope of ln(value) against ln(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& value);

}  // namespace conelab
