#pragma once
// Calderon-Zygmund decomposition of a field on each half-cone of a planar
// cone grid: maximal function of h = |f| + |f|/r + |grad f|, level set
// U = {M h > alpha}, greedy Whitney cover of U, partition of unity, and the
// good/bad split f = g + sum_i b_i with type-1 / type-2 bad parts.
//
// Ball scales follow the usual Whitney convention: the underline ball has
// radius r_i/C1, the plain ball B_i radius r_i and the overline ball radius
// C2 r_i / C1, with r_i = d(x_i, F)/2 and C2 = 4 C1. Balls are balls of the
// half-cone, i.e. sets of grid cells of one block whose centres lie in the
// Euclidean ball.

#include <span>
#include <stdexcept>
#include <vector>

#include "conelab/field.hpp"

namespace conelab {

struct CZParams {
  double alpha = 1.0;
  double C1 = 4.0;
  double p = 2.0;  // exponent of the measure bound

  double C2() const { return 4.0 * C1; }
  /// psi: 1 on [0, 1], 0 on [(1 + C1)/2, inf), quintic in between.
  double psi(double s) const;
  void validate() const;
};

/// Error raised when the level set fills a whole half-cone of the grid.
class DegenerateLevelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Discrete maximal function: for every cell, the largest average of h over
/// balls B(c, R) ∩ Omega_± containing it, with c a grid node of the same block
/// and R = r_max 2^{-m}; each cell also sees its own value (single-cell floor).
Field maximal_function(const Field& f);
/// h = |f| + |f|/r + |grad f|.
Field cz_density(const Field& f);

struct WhitneyBall {
  int block = 0;
  int k = 0;
  int j = 0;  // centre node
  double radius = 0.0;  // r_i
  int type = 1;
  double mean = 0.0;     // f_{B_i}
  double measure = 0.0;  // lambda(B_i) from the cells it contains
  std::vector<std::size_t> cells;  // cells of B_i
};

struct BadPart {
  std::vector<std::size_t> cells;  // support, inside B_i
  std::vector<double> chi;         // partition weight on those cells
  std::vector<double> values;      // b_i on those cells
};

struct CZResult {
  CZParams params;
  Field maximal;
  std::vector<char> in_U;
  std::vector<double> dist_F;  // d(x, F) for U cells, 0 on F
  std::vector<WhitneyBall> balls;
  std::vector<BadPart> bad;
  Field good;

  /// sum_i b_i as a field.
  Field bad_sum() const;
};

/// Throws std::invalid_argument for alpha <= 0 and DegenerateLevelError when
/// U is a whole block of the grid.
CZResult decompose(const Field& f, const CZParams& params);
/// Same with a precomputed maximal function.
CZResult decompose(const Field& f, const Field& maximal, const CZParams& params);

struct CZReport {
  double alpha = 0.0;
  std::size_t n_balls = 0;
  int overlap_N = 0;
  double rec_err = 0.0;   // max |f - g - sum b_i| / max |f|
  double eg_ratio = 0.0;  // sup (|g| + |g|/r + |grad g|) / alpha
  double eb_ratio = 0.0;  // max_i avg_{B_i}(|b_i| + |b_i|/r + |grad b_i|) / alpha
  double eB_ratio = 0.0;  // sum lambda(B_i) alpha^p / int h^p
  bool underline_disjoint = true;
  bool plain_cover_U = true;
  bool overline_meets_F = true;
  double partition_err = 0.0;       // max |sum chi_i - 1_U|
  double neighbour_ratio = 1.0;     // max r_i/r_j over intersecting balls
  double mean_comparability = 0.0;  // max |f_Bj - f_Bi| / (r_j alpha)
  double type2_reach = 0.0;         // max |x|/r_i over cells of type-2 balls
  double chi_gradient = 0.0;        // max r_i |grad chi_i|
};

CZReport verify(const Field& f, const CZResult& result);

/// Glues the good parts of the two half-cones into one field on the double
/// cone and reports its Lipschitz constant (max |grad g|) and ||g/r||_inf / alpha.
struct GluedGood {
  Field field;
  double lipschitz = 0.0;
  double g_over_r = 0.0;
  double vertex_value = 0.0;  // max |g| on the innermost ring
};
/// Both inputs live on the same two-sided grid; g_plus is read on the "+"
/// block and g_minus on the "-" block. Throws std::runtime_error when the
/// innermost-ring values exceed vertex_tol.
GluedGood glue_good_parts(const Field& g_plus, const Field& g_minus, double alpha, double vertex_tol);

/// C with lambda({M > alpha}) <= C ||h||_1 / alpha over the given levels.
double weak_type_constant(const Field& maximal, const Field& density, std::span<const double> alphas);

/// Constructive upper bound for K(f, t; tilde H^1_1, tilde H^1_inf): run the
/// decomposition at alpha(t) = max over half-cones of (M h)*(t) and return
/// ||b||_{tilde H^1_1} + t ||g||_{tilde H^1_inf}. When U would fill a half-cone
/// the trivial splitting b = f, g = 0 is used instead.
struct KUpper {
  double value = 0.0;
  double alpha = 0.0;
  double b_norm = 0.0;  // ||b||_1 + ||grad b||_1 + ||b/r||_1
  double g_norm = 0.0;  // ||g||_inf + ||grad g||_inf + ||g/r||_inf
  std::size_t n_balls = 0;
  bool trivial = false;
};
KUpper k_upper_via_cz(const Field& f, const Field& maximal, double t, double C1 = 4.0);
double k_upper_via_cz(const Field& f, double t);

}  // namespace conelab
