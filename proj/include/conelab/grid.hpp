#pragma once
// Polar grids on a double cone or on the whole space.
//
// Radial nodes are geometric, r_k = r_max q^k (k = 0 is the outermost ring),
// and each node owns the cell [r_k q^{1/2}, r_k q^{-1/2}] whose exact radial
// measure is (r_hi^n - r_lo^n)/n. Angular nodes are cell midpoints, uniform
// inside each angular block. For n = 3 only axisymmetric fields are carried,
// so the angular variable is the polar angle and angular weights include the
// full azimuthal circle.
//
// A grid holds one or more blocks:
//   Plus   local angle from the "+" axis; (-w, w) for n = 2, [0, w) for n = 3.
//   Minus  the point reflection of Plus: node (Minus, k, j) is -x for the node
//          x = (Plus, k, j), so x -> -x is a block swap.
//   Full   the whole angular range; [-pi, pi) from the "+" axis (periodic) for
//          n = 2, polar angle [0, pi] for n = 3.

#include <cstddef>
#include <vector>

#include "conelab/geometry.hpp"

namespace conelab {

enum class Block { Plus, Minus, Full };

struct GridSpec {
  double q = 0.98;
  double r_max = 40.0;
  double r_min = 4e-11;  // 1e-12 r_max
  int K = 0;             // 0: smallest K with r_{K-1} <= r_min
  int J = 96;            // angular nodes per half-cone

  void validate() const;
  int radial_count() const;
};

enum class Coverage { Both, PlusOnly };

struct Node {
  int block;  // index into PolarGrid::blocks()
  int k;
  int j;
  double r;
  double theta;  // local angle in the block
  Point x;       // Cartesian position (meridian plane x_2 = 0 for n = 3)
};

class PolarGrid {
 public:
  /// Cone grid with J nodes per half-cone.
  static PolarGrid cone(const ConeDomain& domain, const GridSpec& spec, Coverage coverage = Coverage::Both);
  /// Whole-space grid sharing the radial nodes of the cone grid and its
  /// angular spacing (J_full = round(pi J / w)). With w = pi/4 and J even the
  /// cone nodes are a subset of the full nodes.
  static PolarGrid full_space(const ConeDomain& domain, const GridSpec& spec);

  const ConeDomain& domain() const { return domain_; }
  const GridSpec& spec() const { return spec_; }
  int n() const { return domain_.n; }
  int K() const { return static_cast<int>(r_.size()); }
  int J() const { return static_cast<int>(theta_.size()); }
  const std::vector<Block>& blocks() const { return blocks_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  int block_index(Block b) const;  // -1 if absent
  bool is_full() const { return blocks_.size() == 1 && blocks_[0] == Block::Full; }
  std::size_t size() const { return blocks_.size() * r_.size() * theta_.size(); }

  std::size_t index(int b, int k, int j) const {
    return (static_cast<std::size_t>(b) * r_.size() + static_cast<std::size_t>(k)) * theta_.size() +
           static_cast<std::size_t>(j);
  }

  double r(int k) const { return r_[k]; }
  double r_lo(int k) const { return r_lo_[k]; }
  double r_hi(int k) const { return r_hi_[k]; }
  double radial_measure(int k) const { return radial_measure_[k]; }
  const std::vector<double>& radii() const { return r_; }

  double theta(int j) const { return theta_[j]; }
  double theta_lo() const { return theta_lo_; }
  double theta_hi() const { return theta_hi_; }
  double dtheta() const { return dtheta_; }
  double angular_weight(int j) const { return angular_weight_[j]; }
  const std::vector<double>& angular_weights() const { return angular_weight_; }
  /// Sum of angular weights of one block.
  double block_angular_measure() const;

  double cell_measure(int k, int j) const { return radial_measure_[k] * angular_weight_[j]; }
  /// Flattened cell measures, size() entries.
  const std::vector<double>& measures() const { return measures_; }

  /// Global direction of a node: math angle for n = 2, polar angle for n = 3.
  double global_angle(int b, int j) const;
  /// Local angle in a Full grid for a global direction.
  double full_local_angle(double global) const;
  Point cartesian(int b, int k, int j) const;
  Node node(int b, int k, int j) const;

  /// Radial index range [k_begin, k_end) of nodes with r in [lo, hi].
  std::pair<int, int> radial_range(double lo, double hi) const;

 private:
  PolarGrid(const ConeDomain& domain, const GridSpec& spec, std::vector<Block> blocks, int J, bool full);

  ConeDomain domain_;
  GridSpec spec_;
  std::vector<Block> blocks_;
  std::vector<double> r_, r_lo_, r_hi_, radial_measure_;
  std::vector<double> theta_, angular_weight_;
  double theta_lo_ = 0.0, theta_hi_ = 0.0, dtheta_ = 0.0;
  std::vector<double> measures_;
};

}  // namespace conelab
