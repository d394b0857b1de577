#pragma once

#include <span>
#include <vector>

#include "mmi/dynamics.hpp"
#include "mmi/modes.hpp"

namespace mmi {

/// Position- and time-independent data of the two-boson pair state built
/// from normalized source distributions eta and mu:
///
///   overlap       c = ∫ mu*(Q) eta(Q) dQ
///   state_norm    ⟨I|I⟩ = 1 + |c|²
///   alpha_xy      overlap coefficients normalized by ⟨I|I⟩
///
/// alpha_eta_eta and alpha_mu_mu both equal 1/⟨I|I⟩ and are real;
/// alpha_mu_eta = c/⟨I|I⟩ and alpha_eta_mu is its conjugate.
struct OverlapSet {
  Complex overlap;
  double state_norm = 1.0;
  Complex alpha_mu_eta;
  Complex alpha_eta_mu;
  double alpha_eta_eta = 1.0;
  double alpha_mu_mu = 1.0;
};

/// Single-detection probability density at one spacetime point, split into
/// the two terms a lone source would give plus the interference term:
///
///   term_mu_mu    alpha_eta_eta · |ψ_mu|²
///   term_eta_eta  alpha_mu_mu · |ψ_eta|²
///   interference  2·Re(alpha_mu_eta · conj(ψ_eta)·ψ_mu)
///
/// total is stored as the exact floating-point sum of the three terms. It is
/// the expectation of a non-negative operator, so total ≥ 0 up to roundoff,
/// and its spatial integral is the particle number 2.
struct DetectionResult {
  double total = 0.0;
  double term_mu_mu = 0.0;
  double term_eta_eta = 0.0;
  double interference = 0.0;
};

/// Overlap coefficients and state norm for a pair of normalized
/// distributions on a shared grid. The norm uses the single-integral form
/// 1 + |c|²; state_norm_literal below keeps the quadratic route as a
/// cross-check. Throws GridMismatch, NotNormalized.
OverlapSet overlap_set(const ModeDistribution& eta, const ModeDistribution& mu);

/// Squared norm of the pair state evaluated as the literal double sum
/// 1 + ΣΣ eta*(p) mu*(q) eta(q) mu(p) over all node pairs, O(N²). Retained
/// as an independent reference for the 1 + |c|² collapse; production code
/// should use overlap_set. Throws GridMismatch.
double state_norm_literal(const ModeDistribution& eta, const ModeDistribution& mu);

/// Probability density of detecting exactly one of the two bosons at the
/// given point, with its three-term decomposition. When the sources share no
/// modes (c = 0) the interference term vanishes and the density is the plain
/// sum of the single-source terms. Throws GridMismatch, NotNormalized.
DetectionResult detection_probability(const ModeDistribution& eta, const ModeDistribution& mu,
                                      const SpacetimePoint& at,
                                      const PhysicalConstants& constants);

/// detection_probability over a list of positions at one fixed time.
/// Order-preserving, elementwise identical to single-point calls; positions
/// are independent, so evaluations may be reordered or parallelized by
/// callers. Throws GridMismatch, NotNormalized.
std::vector<DetectionResult> position_sweep(const ModeDistribution& eta,
                                            const ModeDistribution& mu,
                                            std::span<const Vec> positions, double time,
                                            const PhysicalConstants& constants);

/// Tolerance on |squared_norm − 1| beyond which inputs count as
/// not normalized.
inline constexpr double kNormTolerance = 1e-6;

}  // namespace mmi
