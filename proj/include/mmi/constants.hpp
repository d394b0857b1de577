#pragma once

#include "mmi/errors.hpp"

namespace mmi {

/// Reduced Planck constant and particle mass. Natural units (hbar = m = 1)
/// by default; every propagation and dispersion formula takes these
/// explicitly so other unit systems work unchanged.
struct PhysicalConstants {
  double hbar = 1.0;
  double mass = 1.0;

  PhysicalConstants() = default;

  PhysicalConstants(double hbar_in, double mass_in) : hbar(hbar_in), mass(mass_in) {
    if (!(hbar > 0.0)) throw InvalidParameter("PhysicalConstants: hbar must be > 0");
    if (!(mass > 0.0)) throw InvalidParameter("PhysicalConstants: mass must be > 0");
  }
};

}  // namespace mmi
