#pragma once

#include <complex>
#include <vector>

namespace qring {

/// One-pole lineshape fit of a sampled positive spectrum:
///   y(x) ~ q0 + 2 Re[q1 / (x - p)] + q2 / |x - p|^2
/// which is the angular integral of a single resonance plus a smooth
/// background. Linear in (q0, q1, q2) for a given complex pole p; the pole is
/// located by a coarse grid plus coordinate golden-section refinement.
struct ResonanceFit {
  std::complex<double> pole;   // Im < 0, width = -2 Im
  double rel_residual = 0.0;   // fit residual / signal norm
};

ResonanceFit fit_resonance(const std::vector<double>& x, const std::vector<double>& y,
                           double center_guess, double width_lo, double width_hi);

}  // namespace qring
