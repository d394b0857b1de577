#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>

#include "mmi/types.hpp"

namespace mmi {

/// Uniform rectangular discretization of momentum space in d ∈ {1,2,3}
/// dimensions.
///
/// Nodes along axis a sit at p_i = lower + i·step with step = (upper−lower)/N
/// and i = 0..N−1 (half-open: the upper bound itself carries no node). On a
/// symmetric interval with even N this places a node exactly at p = 0.
/// Quadrature uses the rectangle rule: every node carries the weight
/// Π_a step_a, which is also the volume element identifying grid nodes with
/// discrete modes in the Fock-space oracle.
///
/// Flat indices are row-major with the last axis fastest.
class MomentumGrid {
 public:
  MomentumGrid(int dimension, std::span<const double> lower, std::span<const double> upper,
               std::span<const int> points);

  /// 1D convenience constructor.
  static MomentumGrid line(double lower, double upper, int points);

  int dimension() const { return dim_; }
  std::size_t size() const { return total_; }
  int axis_points(int axis) const { return n_[axis]; }
  double lower(int axis) const { return lo_[axis]; }
  double upper(int axis) const { return hi_[axis]; }
  double step(int axis) const { return step_[axis]; }

  /// Quadrature weight of one node: the product of the per-axis spacings.
  double weight() const { return weight_; }

  /// Coordinates of the node with the given flat index.
  Vec point(std::size_t flat) const;

  /// Flat index of the node matching p within tol_frac·step per axis, or
  /// nullopt if p does not land on the grid.
  std::optional<std::size_t> locate(const Vec& p, double tol_frac = 1e-9) const;

  bool operator==(const MomentumGrid&) const = default;

 private:
  int dim_ = 1;
  std::array<double, 3> lo_{};
  std::array<double, 3> hi_{};
  std::array<double, 3> step_{};
  std::array<int, 3> n_{1, 1, 1};
  std::size_t total_ = 0;
  double weight_ = 1.0;
};

}  // namespace mmi
