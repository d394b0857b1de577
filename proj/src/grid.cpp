#include "mmi/grid.hpp"

#include <cmath>
#include <string>

#include "mmi/errors.hpp"

namespace mmi {

MomentumGrid::MomentumGrid(int dimension, std::span<const double> lower,
                           std::span<const double> upper, std::span<const int> points) {
  if (dimension < 1 || dimension > 3)
    throw InvalidParameter("MomentumGrid: dimension must be 1, 2, or 3");
  if (lower.size() != static_cast<std::size_t>(dimension) ||
      upper.size() != static_cast<std::size_t>(dimension) ||
      points.size() != static_cast<std::size_t>(dimension))
    throw InvalidParameter("MomentumGrid: bounds and point counts must have one entry per axis");

  dim_ = dimension;
  total_ = 1;
  weight_ = 1.0;
  for (int a = 0; a < dim_; ++a) {
    if (points[a] < 2)
      throw InvalidParameter("MomentumGrid: axis " + std::to_string(a) +
                             " needs at least 2 points");
    if (!(upper[a] > lower[a]))
      throw InvalidParameter("MomentumGrid: axis " + std::to_string(a) +
                             " upper bound must exceed lower bound");
    lo_[a] = lower[a];
    hi_[a] = upper[a];
    n_[a] = points[a];
    step_[a] = (upper[a] - lower[a]) / points[a];
    total_ *= static_cast<std::size_t>(points[a]);
    weight_ *= step_[a];
  }
}

MomentumGrid MomentumGrid::line(double lower, double upper, int points) {
  const double lo[1] = {lower};
  const double hi[1] = {upper};
  const int n[1] = {points};
  return MomentumGrid(1, lo, hi, n);
}

Vec MomentumGrid::point(std::size_t flat) const {
  Vec p{};
  for (int a = dim_ - 1; a >= 0; --a) {
    const std::size_t i = flat % static_cast<std::size_t>(n_[a]);
    flat /= static_cast<std::size_t>(n_[a]);
    p[a] = lo_[a] + static_cast<double>(i) * step_[a];
  }
  return p;
}

std::optional<std::size_t> MomentumGrid::locate(const Vec& p, double tol_frac) const {
  std::size_t flat = 0;
  for (int a = 0; a < dim_; ++a) {
    const double x = (p[a] - lo_[a]) / step_[a];
    const long long i = std::llround(x);
    if (i < 0 || i >= n_[a]) return std::nullopt;
    const double node = lo_[a] + static_cast<double>(i) * step_[a];
    if (std::abs(p[a] - node) > tol_frac * step_[a]) return std::nullopt;
    flat = flat * static_cast<std::size_t>(n_[a]) + static_cast<std::size_t>(i);
  }
  return flat;
}

}  // namespace mmi
