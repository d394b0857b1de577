#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "mmi/constants.hpp"
#include "mmi/dynamics.hpp"
#include "mmi/grid.hpp"
#include "mmi/modes.hpp"
#include "mmi/types.hpp"

namespace mmi::fock {

/// Finite set of M distinct plane-wave modes, one per momentum vector.
/// The continuum dictionary on a grid with node weight w = Δp^d is
///   a(p)        -> a_k / sqrt(w)
///   δ^d(p − q)  -> δ_kl / w
///   ∫ d^d p     -> Σ_k w
/// so discrete amplitudes f_k·sqrt(w) built from grid samples f_k reproduce
/// the continuum formulas with no further approximation.
struct DiscreteModeSet {
  std::vector<Vec> modes;
  int dimension = 1;
  PhysicalConstants constants{};

  DiscreteModeSet(std::vector<Vec> modes_in, int dimension_in,
                  const PhysicalConstants& constants_in);

  /// All grid nodes, in flat-index order.
  static DiscreteModeSet from_grid(const MomentumGrid& grid, const PhysicalConstants& constants);

  std::size_t count() const { return modes.size(); }
};

/// Sparse state vector in the occupation-number basis over M modes. Keys are
/// per-mode occupation counts; terms with exactly zero coefficient are not
/// stored, so the zero vector is an empty map. Two-boson pair states live in
/// the sector where occupations sum to 2 (basis dimension M(M+1)/2), but the
/// ladder operators below move freely between sectors.
class FockState {
 public:
  using Occupation = std::vector<std::uint8_t>;

  explicit FockState(std::size_t mode_count) : mode_count_(mode_count) {}

  /// |0⟩: the single all-zero occupation with coefficient 1.
  static FockState vacuum(std::size_t mode_count);

  std::size_t mode_count() const { return mode_count_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Occupation, Complex>& terms() const { return terms_; }
  Complex coefficient(const Occupation& occ) const;

  /// Accumulate value onto one basis coefficient; erases the term if the
  /// result is exactly zero.
  void add(const Occupation& occ, Complex value);

  /// this += factor · other.
  void add_scaled(const FockState& other, Complex factor);

  double norm_squared() const;

 private:
  std::size_t mode_count_ = 0;
  std::map<Occupation, Complex> terms_;
};

/// ⟨a|b⟩ in the occupation basis.
Complex inner(const FockState& a, const FockState& b);

/// a⁺_k: each |n_k⟩ picks up sqrt(n_k + 1) and moves to |n_k + 1⟩.
/// Throws IndexOutOfRange.
FockState apply_creation(const FockState& state, std::size_t mode);

/// a_k: each |n_k⟩ picks up sqrt(n_k) and moves to |n_k − 1⟩; occupations at
/// zero are annihilated away, so applying this to the vacuum gives the zero
/// vector. Throws IndexOutOfRange.
FockState apply_annihilation(const FockState& state, std::size_t mode);

/// Unnormalized two-boson pair state Σ_k Σ_l eta_k mu_l a⁺_k a⁺_l |0⟩, built
/// by applying the two creation sums to the vacuum. Bosonic symmetrization
/// follows from the ladder algebra: a doubly occupied mode k carries
/// sqrt(2)·eta_k·mu_k and a singly-occupied pair k<l carries
/// eta_k·mu_l + eta_l·mu_k. For unit-norm amplitude vectors the squared norm
/// is 1 + |Σ_k mu*_k eta_k|². Throws LengthMismatch.
FockState build_state(std::span<const Complex> eta, std::span<const Complex> mu,
                      const DiscreteModeSet& modes);

/// Normalized expectation ⟨state|ψ†(r,t)ψ(r,t)|state⟩ / ⟨state|state⟩ of the
/// discretized field operator
///
///   ψ(r,t) = (2πħ)^(−d/2) · sqrt(volume_weight) · Σ_k exp(i(p_k·r − E_k t)/ħ) · a_k,
///
/// where volume_weight is the grid quadrature weight converting mode sums to
/// momentum integrals. Evaluated as the squared norm of ψ|state⟩, hence real
/// and non-negative by construction. Throws NullState.
double expectation_density(const FockState& state, const DiscreteModeSet& modes,
                           const SpacetimePoint& at, double volume_weight);

/// Brute-force single-detection density for two sources given as grid
/// distributions: identifies every grid node with one discrete mode, builds
/// the pair state, and evaluates expectation_density. Independent of the
/// analytic three-term path except for sharing the dispersion relation.
/// Throws TooManyModes when the grid has more than max_modes nodes, and
/// GridMismatch for distributions on different grids.
double oracle_detection_density(const ModeDistribution& eta, const ModeDistribution& mu,
                                const SpacetimePoint& at, const PhysicalConstants& constants,
                                std::size_t max_modes = 16);

}  // namespace mmi::fock
