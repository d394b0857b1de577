#include "mmi/modes.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "mmi/errors.hpp"

namespace mmi {

ModeDistribution::ModeDistribution(MomentumGrid grid, std::vector<Complex> amplitudes,
                                   ModeKind kind)
    : grid_(std::move(grid)), amps_(std::move(amplitudes)), kind_(kind) {
  if (amps_.size() != grid_.size())
    throw LengthMismatch("ModeDistribution: expected " + std::to_string(grid_.size()) +
                         " amplitudes, got " + std::to_string(amps_.size()));
}

double ModeDistribution::squared_norm() const {
  double sum = 0.0;
  for (const Complex& a : amps_) sum += std::norm(a);
  return sum * grid_.weight();
}

ModeDistribution make_gaussian(const MomentumGrid& grid, const Vec& center, double width,
                               const Vec& position, const PhysicalConstants& constants) {
  if (!(width > 0.0)) throw NonpositiveWidth("make_gaussian: width must be > 0");
  for (int a = 0; a < grid.dimension(); ++a) {
    if (center[a] - 5.0 * width < grid.lower(a) || center[a] + 5.0 * width > grid.upper(a))
      throw GridTooNarrow("make_gaussian: grid axis " + std::to_string(a) +
                          " must extend at least 5 widths beyond the center");
  }

  const double inv_four_sigma2 = 1.0 / (4.0 * width * width);
  std::vector<Complex> amps(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec p = grid.point(i);
    double d2 = 0.0;
    for (int a = 0; a < grid.dimension(); ++a) {
      const double d = p[a] - center[a];
      d2 += d * d;
    }
    const double phase = -dot(p, position) / constants.hbar;
    amps[i] = std::exp(-d2 * inv_four_sigma2) * Complex(std::cos(phase), std::sin(phase));
  }

  ModeDistribution dist(grid, std::move(amps), ModeKind::gaussian);
  dist.shape_ = GaussianShape{center, width, position};
  return normalize(dist);
}

ModeDistribution from_modes(const MomentumGrid& grid,
                            std::span<const std::pair<std::size_t, Complex>> entries) {
  std::vector<Complex> amps(grid.size(), Complex(0.0, 0.0));
  for (const auto& [index, value] : entries) {
    if (index >= grid.size())
      throw IndexOutOfRange("from_modes: node index " + std::to_string(index) +
                            " outside grid of size " + std::to_string(grid.size()));
    amps[index] += value;
  }
  return normalize(ModeDistribution(grid, std::move(amps), ModeKind::discrete_modes));
}

ModeDistribution load_tabulated(const MomentumGrid& grid, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_tabulated: cannot open '" + path + "'");

  std::vector<Complex> amps(grid.size(), Complex(0.0, 0.0));
  std::set<std::size_t> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream fields(line);
    Vec p{};
    for (int a = 0; a < grid.dimension(); ++a) {
      if (!(fields >> p[a]))
        throw ParseError(path + ":" + std::to_string(lineno) + ": expected " +
                         std::to_string(grid.dimension()) +
                         " momentum coordinates plus real and imaginary parts");
    }
    double re = 0.0, im = 0.0;
    if (!(fields >> re >> im))
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": expected real and imaginary amplitude parts");
    std::string rest;
    if (fields >> rest)
      throw ParseError(path + ":" + std::to_string(lineno) + ": trailing content '" + rest + "'");

    const auto index = grid.locate(p);
    if (!index)
      throw ValidationError(path + ":" + std::to_string(lineno) + ": momentum not on grid");
    if (!seen.insert(*index).second)
      throw ValidationError(path + ":" + std::to_string(lineno) + ": duplicate grid point");
    amps[*index] = Complex(re, im);
  }
  return normalize(ModeDistribution(grid, std::move(amps), ModeKind::tabulated));
}

ModeDistribution normalize(const ModeDistribution& dist) {
  const double sn = dist.squared_norm();
  if (!(sn > 0.0)) throw ZeroDistribution("normalize: all amplitudes are zero");
  const double scale = 1.0 / std::sqrt(sn);
  ModeDistribution out = dist;
  for (Complex& a : out.amps_) a *= scale;
  return out;
}

Complex inner_product(const ModeDistribution& a, const ModeDistribution& b) {
  if (!(a.grid() == b.grid()))
    throw GridMismatch("inner_product: distributions live on different grids");
  Complex sum(0.0, 0.0);
  const auto av = a.amplitudes();
  const auto bv = b.amplitudes();
  for (std::size_t i = 0; i < av.size(); ++i) sum += std::conj(av[i]) * bv[i];
  return sum * a.grid().weight();
}

}  // namespace mmi
