#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mmi/constants.hpp"
#include "mmi/grid.hpp"
#include "mmi/types.hpp"

namespace mmi {

/// How a distribution was constructed. Informative metadata only; the
/// operations below never branch on it.
enum class ModeKind { gaussian, discrete_modes, tabulated, custom };

/// Closed-form descriptor of a Gaussian wavepacket in momentum space:
/// amplitude ∝ exp(−(p−center)²/(4·width²)) · exp(−i p·position/ħ).
/// |amplitude|² then has momentum standard deviation `width`, and the
/// carrier phase centers the position-space packet at `position` with
/// standard deviation ħ/(2·width).
struct GaussianShape {
  Vec center{};
  double width = 1.0;
  Vec position{};
};

/// Complex momentum-space amplitude sampled on a MomentumGrid, one value per
/// node. Immutable after construction.
class ModeDistribution {
 public:
  ModeDistribution(MomentumGrid grid, std::vector<Complex> amplitudes,
                   ModeKind kind = ModeKind::custom);

  const MomentumGrid& grid() const { return grid_; }
  std::span<const Complex> amplitudes() const { return amps_; }
  Complex amplitude(std::size_t i) const { return amps_[i]; }
  ModeKind kind() const { return kind_; }

  /// Set for ModeKind::gaussian, empty otherwise.
  const std::optional<GaussianShape>& gaussian() const { return shape_; }

  /// Quadrature sum Σ |a_k|² · weight. Equals 1 for normalized distributions.
  double squared_norm() const;

 private:
  friend ModeDistribution make_gaussian(const MomentumGrid&, const Vec&, double, const Vec&,
                                        const PhysicalConstants&);
  friend ModeDistribution normalize(const ModeDistribution&);

  MomentumGrid grid_;
  std::vector<Complex> amps_;
  ModeKind kind_ = ModeKind::custom;
  std::optional<GaussianShape> shape_;
};

/// Normalized Gaussian wavepacket (see GaussianShape for the functional
/// form). The grid must extend at least 5·width beyond the center on every
/// axis, so the truncated tails carry no appreciable weight.
///
/// Throws NonpositiveWidth, GridTooNarrow.
ModeDistribution make_gaussian(const MomentumGrid& grid, const Vec& center, double width,
                               const Vec& position = {},
                               const PhysicalConstants& constants = {});

/// Normalized distribution supported on the listed nodes only; entries are
/// (flat node index, complex amplitude) pairs.
///
/// Throws IndexOutOfRange, ZeroDistribution.
ModeDistribution from_modes(const MomentumGrid& grid,
                            std::span<const std::pair<std::size_t, Complex>> entries);

/// Normalized distribution read from a plain-text table. One record per
/// line: d momentum coordinates, real part, imaginary part, whitespace
/// separated; lines starting with '#' are comments. Every record must land
/// exactly on a grid node (no interpolation); unlisted nodes are zero.
///
/// Throws ParseError, ValidationError, ZeroDistribution, IoError.
ModeDistribution load_tabulated(const MomentumGrid& grid, const std::string& path);

/// Rescale by the single positive real factor that makes squared_norm() == 1.
/// Global phase is untouched. Throws ZeroDistribution.
ModeDistribution normalize(const ModeDistribution& dist);

/// Quadrature inner product Σ conj(a_k)·b_k · weight, the discrete
/// ∫ a*(p) b(p) dp. Throws GridMismatch.
Complex inner_product(const ModeDistribution& a, const ModeDistribution& b);

}  // namespace mmi
