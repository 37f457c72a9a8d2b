#pragma once

#include <numbers>

namespace qring::units {

// Natural units used throughout the library:
//   lengths in lambda0, rates in gamma0, frequencies as detunings (w - w0)/gamma0,
//   hbar = 1, radiated powers in P0 = hbar*w0*gamma0.
inline constexpr double gamma0 = 1.0;
inline constexpr double lambda0 = 1.0;
inline constexpr double hbar = 1.0;
inline constexpr double power0 = 1.0;
inline constexpr double k0 = 2.0 * std::numbers::pi;  // k0 * lambda0 = 2 pi exactly

}  // namespace qring::units
