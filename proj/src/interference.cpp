#include "mmi/interference.hpp"

#include <cmath>
#include <string>

#include "mmi/errors.hpp"

namespace mmi {

namespace {

void require_normalized(const ModeDistribution& dist, const char* name) {
  const double sn = dist.squared_norm();
  if (std::abs(sn - 1.0) > kNormTolerance)
    throw NotNormalized(std::string(name) + ": squared norm is " + std::to_string(sn) +
                        ", expected 1");
}

}  // namespace

OverlapSet overlap_set(const ModeDistribution& eta, const ModeDistribution& mu) {
  if (!(eta.grid() == mu.grid()))
    throw GridMismatch("overlap_set: distributions live on different grids");
  require_normalized(eta, "overlap_set: eta");
  require_normalized(mu, "overlap_set: mu");

  OverlapSet set;
  set.overlap = inner_product(mu, eta);
  set.state_norm = 1.0 + std::norm(set.overlap);
  set.alpha_mu_eta = set.overlap / set.state_norm;
  set.alpha_eta_mu = std::conj(set.alpha_mu_eta);
  set.alpha_eta_eta = 1.0 / set.state_norm;
  set.alpha_mu_mu = set.alpha_eta_eta;
  return set;
}

double state_norm_literal(const ModeDistribution& eta, const ModeDistribution& mu) {
  if (!(eta.grid() == mu.grid()))
    throw GridMismatch("state_norm_literal: distributions live on different grids");
  // Deliberately the unfactored O(N²) sum; overlap_set holds the O(N) route.
  const auto ev = eta.amplitudes();
  const auto mv = mu.amplitudes();
  const double w = eta.grid().weight();
  Complex sum(0.0, 0.0);
  for (std::size_t k = 0; k < ev.size(); ++k) {
    for (std::size_t l = 0; l < mv.size(); ++l) {
      sum += std::conj(ev[k]) * std::conj(mv[l]) * ev[l] * mv[k];
    }
  }
  return 1.0 + (sum * w * w).real();
}

DetectionResult detection_probability(const ModeDistribution& eta, const ModeDistribution& mu,
                                      const SpacetimePoint& at,
                                      const PhysicalConstants& constants) {
  const OverlapSet set = overlap_set(eta, mu);

  const Complex psi_eta = propagate(eta, at, constants);
  const Complex psi_mu = propagate(mu, at, constants);
  const double p_mu_mu = std::norm(psi_mu);
  const double p_eta_eta = std::norm(psi_eta);
  const CrossAmplitude p_eta_mu = std::conj(psi_eta) * psi_mu;

  DetectionResult result;
  result.term_mu_mu = set.alpha_eta_eta * p_mu_mu;
  result.term_eta_eta = set.alpha_mu_mu * p_eta_eta;
  result.interference = 2.0 * (set.alpha_mu_eta * p_eta_mu).real();
  result.total = result.term_mu_mu + result.term_eta_eta + result.interference;
  return result;
}

std::vector<DetectionResult> position_sweep(const ModeDistribution& eta,
                                            const ModeDistribution& mu,
                                            std::span<const Vec> positions, double time,
                                            const PhysicalConstants& constants) {
  std::vector<DetectionResult> results;
  results.reserve(positions.size());
  for (const Vec& r : positions)
    results.push_back(detection_probability(eta, mu, SpacetimePoint{r, time}, constants));
  return results;
}

}  // namespace mmi
