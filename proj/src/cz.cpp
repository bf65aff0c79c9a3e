#include "conelab/cz.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "conelab/numerics.hpp"
#include "conelab/rearrangement.hpp"

namespace conelab {

namespace {

void require_planar_cone(const PolarGrid& g) {
  if (g.is_full()) throw std::invalid_argument("the CZ decomposition runs on cone grids");
  if (g.n() != 2) throw DimensionError("the CZ decomposition is implemented for n = 2");
}

// Squared distance between two cells of the same block.
double dist2(const PolarGrid& g, int k1, int j1, int k2, int j2) {
  const double a = g.r(k1), b = g.r(k2);
  return a * a + b * b - 2.0 * a * b * std::cos(g.theta(j1) - g.theta(j2));
}

// Calls fn(k, jlo, jhi) for every ring holding cells whose centres lie in the
// open ball of radius R about node (kc, jc) of the same block.
template <class Fn>
void for_each_ring_in_ball(const PolarGrid& g, int kc, int jc, double R, Fn&& fn) {
  const double rc = g.r(kc), tc = g.theta(jc);
  const double h = g.dtheta(), t0 = g.theta_lo();
  const int J = g.J();
  auto [kb, ke] = g.radial_range(rc - R, rc + R);
  for (int k = kb; k < ke; ++k) {
    const double r = g.r(k);
    if (std::abs(r - rc) >= R) continue;
    auto inside = [&](int j) { return dist2(g, k, j, kc, jc) < R * R; };
    const double gam = (r * r + rc * rc - R * R) / (2.0 * r * rc);
    int jlo, jhi;
    if (gam < -1.0) {
      jlo = 0;
      jhi = J - 1;
    } else {
      const double beta = std::acos(std::min(gam, 1.0));
      jlo = std::max(0, static_cast<int>(std::floor((tc - beta - t0) / h - 0.5)) + 1);
      jhi = std::min(J - 1, static_cast<int>(std::ceil((tc + beta - t0) / h - 0.5)) - 1);
      while (jlo > 0 && inside(jlo - 1)) --jlo;
      while (jhi < J - 1 && inside(jhi + 1)) ++jhi;
      while (jlo <= jhi && !inside(jlo)) ++jlo;
      while (jhi >= jlo && !inside(jhi)) --jhi;
    }
    if (jlo <= jhi) fn(k, jlo, jhi);
  }
}

std::vector<std::size_t> cells_in_ball(const PolarGrid& g, int b, int kc, int jc, double R) {
  std::vector<std::size_t> out;
  for_each_ring_in_ball(g, kc, jc, R, [&](int k, int jlo, int jhi) {
    for (int j = jlo; j <= jhi; ++j) out.push_back(g.index(b, k, j));
  });
  return out;
}

double density_at(const Field& f, int b, int k, int j) {
  auto [dr, da] = gradient_at(f, b, k, j);
  const double v = std::abs(f.at(b, k, j));
  return v + v / f.grid().r(k) + std::hypot(dr, da);
}

}  // namespace

double CZParams::psi(double s) const { return step_down(s, 1.0, 0.5 * (1.0 + C1)); }

void CZParams::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("CZ level alpha must be positive");
  if (!(C1 > 1.0)) throw std::invalid_argument("Whitney constant C1 must exceed 1");
  if (!(p >= 1.0)) throw std::invalid_argument("CZ exponent p must be >= 1");
}

Field cz_density(const Field& f) {
  const PolarGrid& g = f.grid();
  auto grad = gradient(f).magnitude();
  Field h(f.grid_ptr(), "cz_density");
  const std::size_t J = g.J(), K = g.K();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double v = std::abs(f.values()[i]);
    h.values()[i] = v + v / g.r(static_cast<int>((i / J) % K)) + grad[i];
  }
  return h;
}

Field maximal_function(const Field& f) {
  const PolarGrid& g = f.grid();
  require_planar_cone(g);
  const Field h = cz_density(f);
  const int K = g.K(), J = g.J();
  const auto& mu = g.measures();
  Field M = h;
  M.set_name("maximal");

  int levels = static_cast<int>(std::ceil(std::log2(g.r(0) / g.r(K - 1))));
  std::vector<double> radii;
  for (int m = 0; m <= levels; ++m) radii.push_back(g.spec().r_max * std::ldexp(1.0, -m));

  for (int b = 0; b < g.block_count(); ++b) {
    // Per-ring prefix sums of h mu and mu.
    std::vector<double> ph(static_cast<std::size_t>(K) * (J + 1), 0.0), pm(ph.size(), 0.0);
    for (int k = 0; k < K; ++k)
      for (int j = 0; j < J; ++j) {
        auto i = g.index(b, k, j);
        ph[k * (J + 1) + j + 1] = ph[k * (J + 1) + j] + h.values()[i] * mu[i];
        pm[k * (J + 1) + j + 1] = pm[k * (J + 1) + j] + mu[i];
      }
    for (int kc = 0; kc < K; ++kc)
      for (int jc = 0; jc < J; ++jc)
        for (double R : radii) {
          double sh = 0.0, sm = 0.0;
          for_each_ring_in_ball(g, kc, jc, R, [&](int k, int jlo, int jhi) {
            sh += ph[k * (J + 1) + jhi + 1] - ph[k * (J + 1) + jlo];
            sm += pm[k * (J + 1) + jhi + 1] - pm[k * (J + 1) + jlo];
          });
          const double avg = sh / sm;
          for_each_ring_in_ball(g, kc, jc, R, [&](int k, int jlo, int jhi) {
            double* row = &M.values()[g.index(b, k, 0)];
            for (int j = jlo; j <= jhi; ++j) row[j] = std::max(row[j], avg);
          });
        }
  }
  return M;
}

Field CZResult::bad_sum() const {
  Field s(good.grid_ptr(), "bad");
  for (const auto& bp : bad)
    for (std::size_t c = 0; c < bp.cells.size(); ++c) s.values()[bp.cells[c]] += bp.values[c];
  return s;
}

CZResult decompose(const Field& f, const CZParams& params) {
  params.validate();
  return decompose(f, maximal_function(f), params);
}

CZResult decompose(const Field& f, const Field& maximal, const CZParams& params) {
  params.validate();
  const PolarGrid& g = f.grid();
  require_planar_cone(g);
  if (maximal.size() != f.size()) throw std::invalid_argument("maximal function on a different grid");
  const int K = g.K(), J = g.J();
  const double C1 = params.C1;

  CZResult res{params, maximal, std::vector<char>(f.size(), 0), std::vector<double>(f.size(), 0.0), {}, {}, f};
  res.good.set_name(f.name() + "_good");
  for (std::size_t i = 0; i < f.size(); ++i) res.in_U[i] = maximal.values()[i] > params.alpha;

  std::vector<double> psi_sum(f.size(), 0.0);
  struct Support {
    std::vector<std::size_t> cells;
    std::vector<double> psi;
  };
  std::vector<Support> supports;

  for (int b = 0; b < g.block_count(); ++b) {
    std::vector<std::pair<int, int>> ucells, fcells;
    for (int k = 0; k < K; ++k)
      for (int j = 0; j < J; ++j) (res.in_U[g.index(b, k, j)] ? ucells : fcells).emplace_back(k, j);
    if (ucells.empty()) continue;
    if (fcells.empty())
      throw DegenerateLevelError("level set U covers a whole half-cone of the grid; raise alpha");

    // Exact distance to F over cell centres.
    for (auto [k, j] : ucells) {
      double best = std::numeric_limits<double>::infinity();
      for (auto [kf, jf] : fcells) best = std::min(best, dist2(g, k, j, kf, jf));
      res.dist_F[g.index(b, k, j)] = std::sqrt(best);
    }

    std::vector<std::pair<int, int>> order = ucells;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto c) {
      double da = res.dist_F[g.index(b, a.first, a.second)], dc = res.dist_F[g.index(b, c.first, c.second)];
      if (da != dc) return da > dc;
      return g.index(b, a.first, a.second) < g.index(b, c.first, c.second);
    });
    std::vector<char> covered(f.size(), 0);
    for (auto [kc, jc] : order) {
      const auto ic = g.index(b, kc, jc);
      if (covered[ic]) continue;
      WhitneyBall ball;
      ball.block = b;
      ball.k = kc;
      ball.j = jc;
      ball.radius = 0.5 * res.dist_F[ic];
      for (auto i : cells_in_ball(g, b, kc, jc, 2.0 * ball.radius / C1)) covered[i] = 1;
      covered[ic] = 1;
      ball.cells = cells_in_ball(g, b, kc, jc, ball.radius);
      const double d0 = std::max(0.0, g.r(kc) - ball.radius);
      ball.type = 4.0 * ball.radius <= d0 ? 1 : 2;
      double s = 0.0, m = 0.0;
      for (auto i : ball.cells) {
        s += f.values()[i] * g.measures()[i];
        m += g.measures()[i];
      }
      ball.mean = s / m;
      ball.measure = m;

      Support sup;
      const double reach = 0.5 * (1.0 + C1) / C1 * ball.radius;
      for_each_ring_in_ball(g, kc, jc, reach, [&](int k, int jlo, int jhi) {
        for (int j = jlo; j <= jhi; ++j) {
          const double w = params.psi(C1 * std::sqrt(std::max(0.0, dist2(g, k, j, kc, jc))) / ball.radius);
          if (w <= 0.0) continue;
          auto i = g.index(b, k, j);
          sup.cells.push_back(i);
          sup.psi.push_back(w);
          psi_sum[i] += w;
        }
      });
      res.balls.push_back(std::move(ball));
      supports.push_back(std::move(sup));
    }
  }

  res.bad.resize(res.balls.size());
  for (std::size_t n = 0; n < res.balls.size(); ++n) {
    const auto& ball = res.balls[n];
    auto& bp = res.bad[n];
    bp.cells = supports[n].cells;
    bp.chi.resize(bp.cells.size());
    bp.values.resize(bp.cells.size());
    for (std::size_t c = 0; c < bp.cells.size(); ++c) {
      const auto i = bp.cells[c];
      bp.chi[c] = supports[n].psi[c] / psi_sum[i];
      const double base = ball.type == 1 ? f.values()[i] - ball.mean : f.values()[i];
      bp.values[c] = base * bp.chi[c];
    }
  }
  for (const auto& bp : res.bad)
    for (std::size_t c = 0; c < bp.cells.size(); ++c) res.good.values()[bp.cells[c]] -= bp.values[c];
  return res;
}

CZReport verify(const Field& f, const CZResult& res) {
  const PolarGrid& g = f.grid();
  const double alpha = res.params.alpha, C1 = res.params.C1, p = res.params.p;
  CZReport rep;
  rep.alpha = alpha;
  rep.n_balls = res.balls.size();

  Field sum = res.bad_sum();
  double fmax = 0.0, err = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    fmax = std::max(fmax, std::abs(f.values()[i]));
    err = std::max(err, std::abs(f.values()[i] - res.good.values()[i] - sum.values()[i]));
  }
  rep.rec_err = fmax > 0.0 ? err / fmax : err;

  const Field hg = cz_density(res.good);
  rep.eg_ratio = *std::max_element(hg.values().begin(), hg.values().end()) / alpha;

  const Field hf = cz_density(f);
  double hp = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) hp += std::pow(hf.values()[i], p) * g.measures()[i];
  double ball_sum = 0.0;
  for (const auto& ball : res.balls) ball_sum += ball.measure;
  rep.eB_ratio = hp > 0.0 ? ball_sum * std::pow(alpha, p) / hp : 0.0;

  // Membership lists and overlap.
  std::vector<std::vector<int>> members(f.size());
  for (std::size_t n = 0; n < res.balls.size(); ++n)
    for (auto i : res.balls[n].cells) members[i].push_back(static_cast<int>(n));
  for (std::size_t i = 0; i < f.size(); ++i) {
    rep.overlap_N = std::max(rep.overlap_N, static_cast<int>(members[i].size()));
    if (res.in_U[i] && members[i].empty()) rep.plain_cover_U = false;
  }

  for (std::size_t a = 0; a < res.balls.size(); ++a) {
    const auto& A = res.balls[a];
    if (!(res.dist_F[g.index(A.block, A.k, A.j)] < res.params.C2() / C1 * A.radius)) rep.overline_meets_F = false;
    for (std::size_t c = a + 1; c < res.balls.size(); ++c) {
      const auto& B = res.balls[c];
      if (A.block != B.block) continue;
      const double d = std::sqrt(std::max(0.0, dist2(g, A.k, A.j, B.k, B.j)));
      if (d < (A.radius + B.radius) / C1 * (1.0 - 1e-12)) rep.underline_disjoint = false;
    }
  }

  std::vector<double> chi_sum(f.size(), 0.0);
  for (const auto& bp : res.bad)
    for (std::size_t c = 0; c < bp.cells.size(); ++c) chi_sum[bp.cells[c]] += bp.chi[c];
  for (std::size_t i = 0; i < f.size(); ++i)
    rep.partition_err = std::max(rep.partition_err, std::abs(chi_sum[i] - (res.in_U[i] ? 1.0 : 0.0)));

  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& m = members[i];
    for (std::size_t x = 0; x < m.size(); ++x)
      for (std::size_t y = 0; y < m.size(); ++y) {
        if (x == y) continue;
        const auto& A = res.balls[m[x]];
        const auto& B = res.balls[m[y]];
        rep.neighbour_ratio = std::max(rep.neighbour_ratio, A.radius / B.radius);
        rep.mean_comparability = std::max(rep.mean_comparability, std::abs(B.mean - A.mean) / (B.radius * alpha));
      }
  }

  // Per-ball gradients of b_i and chi_i through a scratch field.
  Field scratch(f.grid_ptr());
  const std::size_t J = g.J(), K = g.K();
  for (std::size_t n = 0; n < res.balls.size(); ++n) {
    const auto& ball = res.balls[n];
    const auto& bp = res.bad[n];
    auto coords = [&](std::size_t i) {
      return std::array<int, 3>{static_cast<int>(i / (J * K)), static_cast<int>((i / J) % K),
                                static_cast<int>(i % J)};
    };
    for (std::size_t c = 0; c < bp.cells.size(); ++c) scratch.values()[bp.cells[c]] = bp.values[c];
    double acc = 0.0, vol = 0.0;
    for (auto i : ball.cells) {
      auto [b, k, j] = coords(i);
      acc += density_at(scratch, b, k, j) * g.measures()[i];
      vol += g.measures()[i];
    }
    rep.eb_ratio = std::max(rep.eb_ratio, acc / vol / alpha);
    for (std::size_t c = 0; c < bp.cells.size(); ++c) scratch.values()[bp.cells[c]] = bp.chi[c];
    for (auto i : ball.cells) {
      auto [b, k, j] = coords(i);
      auto [dr, da] = gradient_at(scratch, b, k, j);
      rep.chi_gradient = std::max(rep.chi_gradient, ball.radius * std::hypot(dr, da));
    }
    for (auto i : bp.cells) scratch.values()[i] = 0.0;
    if (ball.type == 2)
      for (auto i : ball.cells) rep.type2_reach = std::max(rep.type2_reach, g.r(coords(i)[1]) / ball.radius);
  }
  return rep;
}

GluedGood glue_good_parts(const Field& g_plus, const Field& g_minus, double alpha, double vertex_tol) {
  const PolarGrid& g = g_plus.grid();
  if (g_minus.size() != g_plus.size()) throw std::invalid_argument("good parts live on different grids");
  const int bp = g.block_index(Block::Plus), bm = g.block_index(Block::Minus);
  if (bp < 0 || bm < 0) throw std::invalid_argument("gluing needs a two-sided grid");
  GluedGood out{Field(g_plus.grid_ptr(), "good")};
  for (int k = 0; k < g.K(); ++k)
    for (int j = 0; j < g.J(); ++j) {
      out.field.at(bp, k, j) = g_plus.at(bp, k, j);
      out.field.at(bm, k, j) = g_minus.at(bm, k, j);
    }
  for (int b : {bp, bm})
    for (int j = 0; j < g.J(); ++j)
      out.vertex_value = std::max(out.vertex_value, std::abs(out.field.at(b, g.K() - 1, j)));
  if (out.vertex_value > vertex_tol)
    throw std::runtime_error("good parts do not vanish at the vertex; cannot glue");
  auto grad = gradient(out.field).magnitude();
  out.lipschitz = *std::max_element(grad.begin(), grad.end());
  out.g_over_r = lp_norm(g, out.field.values(), std::numeric_limits<double>::infinity(), Weight::InverseR) / alpha;
  out.field.vertex_plus = out.field.vertex_minus = 0.0;
  return out;
}

double weak_type_constant(const Field& maximal, const Field& density, std::span<const double> alphas) {
  const auto& mu = maximal.grid().measures();
  double l1 = 0.0;
  for (std::size_t i = 0; i < density.size(); ++i) l1 += std::abs(density.values()[i]) * mu[i];
  double C = 0.0;
  for (double a : alphas) {
    double lam = 0.0;
    for (std::size_t i = 0; i < maximal.size(); ++i)
      if (maximal.values()[i] > a) lam += mu[i];
    C = std::max(C, lam * a / l1);
  }
  return C;
}

namespace {

double h1_norm(const Field& f, double p) {
  return lp_norm(f.grid(), f.values(), p) + lp_norm(gradient(f), p) +
         lp_norm(f.grid(), f.values(), p, Weight::InverseR);
}

}  // namespace

KUpper k_upper_via_cz(const Field& f, const Field& maximal, double t, double C1) {
  if (!(t > 0.0)) throw std::invalid_argument("K-functional needs t > 0");
  const PolarGrid& g = f.grid();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  KUpper out;
  const std::size_t per_block = static_cast<std::size_t>(g.K()) * g.J();
  for (int b = 0; b < g.block_count(); ++b) {
    std::span<const double> mv(&maximal.values()[b * per_block], per_block);
    std::span<const double> mu(&g.measures()[b * per_block], per_block);
    out.alpha = std::max(out.alpha, RearrangementTable::build(mv, mu).f_star(t));
  }
  if (out.alpha <= 0.0) {
    out.trivial = true;
  } else {
    try {
      CZParams params;
      params.alpha = out.alpha;
      params.C1 = C1;
      CZResult res = decompose(f, maximal, params);
      Field bad = f - res.good;
      out.b_norm = h1_norm(bad, 1.0);
      out.g_norm = h1_norm(res.good, kInf);
      out.n_balls = res.balls.size();
    } catch (const DegenerateLevelError&) {
      out.trivial = true;
    }
  }
  if (out.trivial) {
    out.b_norm = h1_norm(f, 1.0);
    out.g_norm = 0.0;
  }
  out.value = out.b_norm + t * out.g_norm;
  return out;
}

double k_upper_via_cz(const Field& f, double t) { return k_upper_via_cz(f, maximal_function(f), t).value; }

}  // namespace conelab
