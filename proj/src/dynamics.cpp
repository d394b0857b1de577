#include "mmi/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "mmi/errors.hpp"

namespace mmi {

double dispersion(const Vec& momentum, const PhysicalConstants& constants) {
  return squared_length(momentum) / (2.0 * constants.mass);
}

Complex propagate(const ModeDistribution& dist, const SpacetimePoint& at,
                  const PhysicalConstants& constants) {
  const MomentumGrid& grid = dist.grid();
  const double inv_hbar = 1.0 / constants.hbar;
  Complex sum(0.0, 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec p = grid.point(i);
    const double phase =
        (dot(p, at.position) - dispersion(p, constants) * at.time) * inv_hbar;
    sum += dist.amplitude(i) * Complex(std::cos(phase), std::sin(phase));
  }
  const double norm = std::pow(2.0 * std::numbers::pi * constants.hbar,
                               -0.5 * grid.dimension());
  return sum * grid.weight() * norm;
}

CrossAmplitude cross_amplitude(const ModeDistribution& a, const ModeDistribution& b,
                               const SpacetimePoint& at, const PhysicalConstants& constants) {
  if (!(a.grid() == b.grid()))
    throw GridMismatch("cross_amplitude: distributions live on different grids");
  return std::conj(propagate(a, at, constants)) * propagate(b, at, constants);
}

double sampling_phase_step(const MomentumGrid& grid, const SpacetimePoint& at,
                           const PhysicalConstants& constants) {
  double worst = 0.0;
  for (int a = 0; a < grid.dimension(); ++a) {
    const double p_max = std::max(std::abs(grid.lower(a)), std::abs(grid.upper(a)));
    const double r_piece = std::abs(at.position[a]) * grid.step(a) / constants.hbar;
    const double t_piece =
        p_max * grid.step(a) * std::abs(at.time) / (constants.mass * constants.hbar);
    worst = std::max({worst, r_piece, t_piece});
  }
  return worst;
}

PositionBox enclosing_box(std::span<const GaussianShape> sources, double time,
                          const PhysicalConstants& constants, int dimension) {
  PositionBox box;
  for (int a = 0; a < dimension; ++a) {
    double half = 0.0;
    for (const GaussianShape& s : sources) {
      const double sigma_x = constants.hbar / (2.0 * s.width);
      const double extent = std::abs(s.position[a]) + 5.0 * sigma_x +
                            std::abs(s.center[a]) / constants.mass * std::abs(time) +
                            5.0 * s.width / constants.mass * std::abs(time);
      half = std::max(half, extent);
    }
    box.lower[a] = -half;
    box.upper[a] = half;
  }
  return box;
}

}  // namespace mmi
