#include "conelab/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "conelab/numerics.hpp"

namespace conelab {

void GridSpec::validate() const {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("grid ratio q must lie in (0, 1)");
  if (!(r_max > 0.0)) throw std::invalid_argument("r_max must be positive");
  if (K == 0 && !(r_min > 0.0 && r_min < r_max)) throw std::invalid_argument("r_min must lie in (0, r_max)");
  if (K != 0 && K < 3) throw std::invalid_argument("grid needs at least 3 radial nodes");
  if (J < 3) throw std::invalid_argument("grid needs at least 3 angular nodes");
}

int GridSpec::radial_count() const {
  if (K > 0) return K;
  return std::max(3, static_cast<int>(std::ceil(std::log(r_min / r_max) / std::log(q) - 1e-9)) + 1);
}

PolarGrid::PolarGrid(const ConeDomain& domain, const GridSpec& spec, std::vector<Block> blocks, int J,
                     bool full)
    : domain_(domain), spec_(spec), blocks_(std::move(blocks)) {
  domain_.validate();
  spec_.validate();
  const int n = domain_.n;
  const int K = spec_.radial_count();
  const double sq = std::sqrt(spec_.q);
  r_.resize(K);
  r_lo_.resize(K);
  r_hi_.resize(K);
  radial_measure_.resize(K);
  for (int k = 0; k < K; ++k) {
    r_[k] = spec_.r_max * std::pow(spec_.q, k);
    r_lo_[k] = r_[k] * sq;
    r_hi_[k] = r_[k] / sq;
    radial_measure_[k] = (std::pow(r_hi_[k], n) - std::pow(r_lo_[k], n)) / n;
  }

  const double w = domain_.half_angle;
  if (full) {
    theta_lo_ = n == 2 ? -kPi : 0.0;
    theta_hi_ = kPi;
  } else {
    theta_lo_ = n == 2 ? -w : 0.0;
    theta_hi_ = w;
  }
  dtheta_ = (theta_hi_ - theta_lo_) / J;
  theta_.resize(J);
  angular_weight_.resize(J);
  for (int j = 0; j < J; ++j) {
    double lo = theta_lo_ + j * dtheta_, hi = lo + dtheta_;
    theta_[j] = lo + 0.5 * dtheta_;
    angular_weight_[j] = n == 2 ? dtheta_ : 2.0 * kPi * (std::cos(lo) - std::cos(hi));
  }

  measures_.resize(size());
  for (int b = 0; b < block_count(); ++b)
    for (int k = 0; k < K; ++k)
      for (int j = 0; j < J; ++j) measures_[index(b, k, j)] = cell_measure(k, j);
}

PolarGrid PolarGrid::cone(const ConeDomain& domain, const GridSpec& spec, Coverage coverage) {
  std::vector<Block> blocks{Block::Plus};
  if (coverage == Coverage::Both) blocks.push_back(Block::Minus);
  return PolarGrid(domain, spec, std::move(blocks), spec.J, false);
}

PolarGrid PolarGrid::full_space(const ConeDomain& domain, const GridSpec& spec) {
  int J = static_cast<int>(std::lround(kPi * spec.J / domain.half_angle));
  return PolarGrid(domain, spec, {Block::Full}, J, true);
}

int PolarGrid::block_index(Block b) const {
  for (int i = 0; i < block_count(); ++i)
    if (blocks_[i] == b) return i;
  return -1;
}

double PolarGrid::block_angular_measure() const {
  double s = 0.0;
  for (double w : angular_weight_) s += w;
  return s;
}

double PolarGrid::global_angle(int b, int j) const {
  const double t = theta_[j];
  const bool minus = blocks_[b] == Block::Minus;
  if (n() == 2) return domain_.axis_angle() + t + (minus ? kPi : 0.0);
  return minus ? kPi - t : t;
}

double PolarGrid::full_local_angle(double global) const {
  if (n() == 3) return global;
  double a = global - domain_.axis_angle();
  a = std::fmod(a + kPi, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  return a - kPi;
}

Point PolarGrid::cartesian(int b, int k, int j) const {
  const double g = global_angle(b, j), r = r_[k];
  if (n() == 2) return {r * std::cos(g), r * std::sin(g)};
  return {r * std::sin(g), 0.0, r * std::cos(g)};
}

Node PolarGrid::node(int b, int k, int j) const { return Node{b, k, j, r_[k], theta_[j], cartesian(b, k, j)}; }

std::pair<int, int> PolarGrid::radial_range(double lo, double hi) const {
  // r_ is decreasing in k.
  int begin = 0, end = K();
  while (begin < end && r_[begin] > hi) ++begin;
  while (end > begin && r_[end - 1] < lo) --end;
  return {begin, end};
}

}  // namespace conelab
