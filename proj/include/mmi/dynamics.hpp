#pragma once

#include <numbers>
#include <span>

#include "mmi/constants.hpp"
#include "mmi/modes.hpp"
#include "mmi/types.hpp"

namespace mmi {

/// Detector coordinates: position r and time t (t may be negative).
struct SpacetimePoint {
  Vec position{};
  double time = 0.0;
};

/// Complex position- and time-dependent pairing of two mode distributions,
/// P_ab(r,t) = conj(ψ_a(r,t))·ψ_b(r,t). Units: inverse volume in d
/// dimensions. Satisfies P_ab = conj(P_ba); the diagonal P_aa is the
/// probability density |ψ_a|².
using CrossAmplitude = Complex;

/// Free-particle kinetic energy E(p) = |p|²/(2m).
double dispersion(const Vec& momentum, const PhysicalConstants& constants);

/// Position-space wavepacket amplitude under free Schrödinger evolution,
///
///   ψ(r,t) = (2πħ)^(−d/2) Σ_k w · f_k · exp(i(p_k·r − E(p_k)t)/ħ),
///
/// the rectangle-rule quadrature of the plane-wave synthesis integral with
/// node weight w. Callers supply a normalized distribution; then ∫|ψ|²dr = 1
/// at every t (free evolution is unitary).
Complex propagate(const ModeDistribution& dist, const SpacetimePoint& at,
                  const PhysicalConstants& constants);

/// Cross function P_ab(r,t). The defining double momentum integral separates
/// exactly into conj(ψ_a)·ψ_b, and this routine computes that product; the
/// unfactored double sum lives only in the test suite as a reference.
/// Throws GridMismatch.
CrossAmplitude cross_amplitude(const ModeDistribution& a, const ModeDistribution& b,
                               const SpacetimePoint& at, const PhysicalConstants& constants);

/// Largest phase advance of the propagation integrand across one grid cell,
/// max over axes of both the position piece |r_a|·Δp_a/ħ and the dispersion
/// piece |p_a|max·Δp_a·|t|/(m·ħ). Values above kPhaseStepLimit mean the
/// rectangle rule is under-sampling the oscillation; callers surface that as
/// a diagnostic, not an error.
double sampling_phase_step(const MomentumGrid& grid, const SpacetimePoint& at,
                           const PhysicalConstants& constants);

inline constexpr double kPhaseStepLimit = std::numbers::pi / 4.0;

/// Axis-aligned position box, lower/upper corner per axis.
struct PositionBox {
  Vec lower{};
  Vec upper{};
};

/// Box guaranteed to hold the given Gaussian packets at time t to more than
/// five standard deviations: half-extent per axis is the max over sources of
/// |x0| + 5·ħ/(2σ) + |p0|/m·|t| + 5·σ/m·|t| (drift plus ballistic spreading).
PositionBox enclosing_box(std::span<const GaussianShape> sources, double time,
                          const PhysicalConstants& constants, int dimension);

}  // namespace mmi
