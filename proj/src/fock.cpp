#include "mmi/fock.hpp"

#include <cmath>
#include <numbers>

#include "mmi/errors.hpp"

namespace mmi::fock {

DiscreteModeSet::DiscreteModeSet(std::vector<Vec> modes_in, int dimension_in,
                                 const PhysicalConstants& constants_in)
    : modes(std::move(modes_in)), dimension(dimension_in), constants(constants_in) {
  if (dimension < 1 || dimension > 3) {
    throw InvalidParameter("mode set dimension must be 1, 2, or 3");
  }
  if (modes.empty()) {
    throw InvalidParameter("mode set must contain at least one mode");
  }
  for (std::size_t k = 0; k < modes.size(); ++k) {
    for (std::size_t l = k + 1; l < modes.size(); ++l) {
      if (modes[k] == modes[l]) {
        throw InvalidParameter("mode momenta must be pairwise distinct");
      }
    }
  }
}

DiscreteModeSet DiscreteModeSet::from_grid(const MomentumGrid& grid,
                                           const PhysicalConstants& constants) {
  std::vector<Vec> modes;
  modes.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    modes.push_back(grid.point(k));
  }
  return DiscreteModeSet(std::move(modes), grid.dimension(), constants);
}

FockState FockState::vacuum(std::size_t mode_count) {
  FockState state(mode_count);
  state.terms_[Occupation(mode_count, 0)] = Complex(1.0, 0.0);
  return state;
}

Complex FockState::coefficient(const Occupation& occ) const {
  auto it = terms_.find(occ);
  return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

void FockState::add(const Occupation& occ, Complex value) {
  if (occ.size() != mode_count_) {
    throw LengthMismatch("occupation vector length does not match mode count");
  }
  auto [it, inserted] = terms_.try_emplace(occ, value);
  if (!inserted) {
    it->second += value;
    if (it->second == Complex(0.0, 0.0)) {
      terms_.erase(it);
    }
  } else if (value == Complex(0.0, 0.0)) {
    terms_.erase(it);
  }
}

void FockState::add_scaled(const FockState& other, Complex factor) {
  if (other.mode_count_ != mode_count_) {
    throw LengthMismatch("fock states have different mode counts");
  }
  for (const auto& [occ, coeff] : other.terms_) {
    add(occ, factor * coeff);
  }
}

double FockState::norm_squared() const {
  double sum = 0.0;
  for (const auto& [occ, coeff] : terms_) {
    sum += std::norm(coeff);
  }
  return sum;
}

Complex inner(const FockState& a, const FockState& b) {
  if (a.mode_count() != b.mode_count()) {
    throw LengthMismatch("fock states have different mode counts");
  }
  // Iterate the sparser operand.
  const FockState& small = a.terms().size() <= b.terms().size() ? a : b;
  const FockState& large = a.terms().size() <= b.terms().size() ? b : a;
  Complex sum(0.0, 0.0);
  for (const auto& [occ, coeff] : small.terms()) {
    const Complex other = large.coefficient(occ);
    if (&small == &a) {
      sum += std::conj(coeff) * other;
    } else {
      sum += std::conj(other) * coeff;
    }
  }
  return sum;
}

FockState apply_creation(const FockState& state, std::size_t mode) {
  if (mode >= state.mode_count()) {
    throw IndexOutOfRange("creation mode index out of range");
  }
  FockState result(state.mode_count());
  for (const auto& [occ, coeff] : state.terms()) {
    FockState::Occupation raised = occ;
    raised[mode] += 1;
    result.add(raised, coeff * std::sqrt(static_cast<double>(raised[mode])));
  }
  return result;
}

FockState apply_annihilation(const FockState& state, std::size_t mode) {
  if (mode >= state.mode_count()) {
    throw IndexOutOfRange("annihilation mode index out of range");
  }
  FockState result(state.mode_count());
  for (const auto& [occ, coeff] : state.terms()) {
    if (occ[mode] == 0) {
      continue;
    }
    FockState::Occupation lowered = occ;
    lowered[mode] -= 1;
    result.add(lowered, coeff * std::sqrt(static_cast<double>(occ[mode])));
  }
  return result;
}

FockState build_state(std::span<const Complex> eta, std::span<const Complex> mu,
                      const DiscreteModeSet& modes) {
  const std::size_t m = modes.count();
  if (eta.size() != m || mu.size() != m) {
    throw LengthMismatch("amplitude vector length does not match mode count");
  }
  const FockState vac = FockState::vacuum(m);

  // Σ_l mu_l a⁺_l |0⟩
  FockState one_boson(m);
  for (std::size_t l = 0; l < m; ++l) {
    if (mu[l] == Complex(0.0, 0.0)) {
      continue;
    }
    one_boson.add_scaled(apply_creation(vac, l), mu[l]);
  }

  // Σ_k eta_k a⁺_k (Σ_l mu_l a⁺_l |0⟩)
  FockState pair(m);
  for (std::size_t k = 0; k < m; ++k) {
    if (eta[k] == Complex(0.0, 0.0)) {
      continue;
    }
    pair.add_scaled(apply_creation(one_boson, k), eta[k]);
  }
  return pair;
}

double expectation_density(const FockState& state, const DiscreteModeSet& modes,
                           const SpacetimePoint& at, double volume_weight) {
  if (state.mode_count() != modes.count()) {
    throw LengthMismatch("state mode count does not match mode set");
  }
  const double norm_sq = state.norm_squared();
  if (state.is_zero() || norm_sq <= 0.0) {
    throw NullState("expectation of the zero state is undefined");
  }
  const double hbar = modes.constants.hbar;
  const double prefactor =
      std::pow(2.0 * std::numbers::pi * hbar, -0.5 * modes.dimension) * std::sqrt(volume_weight);

  // ψ|state⟩ accumulated mode by mode; the expectation is its squared norm.
  FockState lowered(state.mode_count());
  for (std::size_t k = 0; k < modes.count(); ++k) {
    const Vec& p = modes.modes[k];
    const double energy = dispersion(p, modes.constants);
    const double phase = (dot(p, at.position) - energy * at.time) / hbar;
    const Complex coef = prefactor * Complex(std::cos(phase), std::sin(phase));
    lowered.add_scaled(apply_annihilation(state, k), coef);
  }
  return lowered.norm_squared() / norm_sq;
}

double oracle_detection_density(const ModeDistribution& eta, const ModeDistribution& mu,
                                const SpacetimePoint& at, const PhysicalConstants& constants,
                                std::size_t max_modes) {
  if (!(eta.grid() == mu.grid())) {
    throw GridMismatch("distributions live on different grids");
  }
  const MomentumGrid& grid = eta.grid();
  if (grid.size() > max_modes) {
    throw TooManyModes("grid has " + std::to_string(grid.size()) +
                       " nodes, oracle cap is " + std::to_string(max_modes));
  }
  DiscreteModeSet modes = DiscreteModeSet::from_grid(grid, constants);

  // Grid samples become discrete mode amplitudes via the sqrt(weight) factor,
  // making Σ_k |f_k sqrt(w)|² equal the quadrature of ∫|f|².
  const double root_w = std::sqrt(grid.weight());
  std::vector<Complex> eta_amps(grid.size());
  std::vector<Complex> mu_amps(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    eta_amps[k] = eta.amplitudes()[k] * root_w;
    mu_amps[k] = mu.amplitudes()[k] * root_w;
  }

  FockState pair = build_state(eta_amps, mu_amps, modes);
  return expectation_density(pair, modes, at, grid.weight());
}

}  // namespace mmi::fock
