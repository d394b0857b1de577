#pragma once

#include <array>
#include <complex>

namespace mmi {

using Complex = std::complex<double>;

/// Coordinate triple for momenta and positions. Axes beyond the active
/// dimension stay zero, so dot products over all three entries are safe
/// in any dimension.
using Vec = std::array<double, 3>;

inline double dot(const Vec& a, const Vec& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double squared_length(const Vec& a) { return dot(a, a); }

}  // namespace mmi
