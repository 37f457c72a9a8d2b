#pragma once

#include <Eigen/Dense>

#include "qring/spectra.hpp"

namespace qring {

/// Spherical quadrature grid: Gauss-Legendre in cos(theta), uniform in phi
/// (exact for trigonometric polynomials below the grid order).
struct SphericalGrid {
  Eigen::VectorXd theta;         // nodes in (0, pi), descending cos
  Eigen::VectorXd theta_weight;  // Gauss-Legendre weights (d cos theta)
  Eigen::VectorXd phi;           // uniform nodes on [0, 2 pi)
  double phi_weight = 0.0;

  static SphericalGrid gauss_legendre(int n_theta = 64, int n_phi = 128);
  Eigen::Vector3d direction(int i, int j) const;
};

struct FarFieldMap {
  SphericalGrid grid;
  Eigen::MatrixXd values;               // n_theta x n_phi, >= 0 where defined
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> mask;  // true = undefined

  double integrate() const;  // quadrature of values (mask treated as 0)
};

/// Angular power density p(theta, phi) of a one-excitation amplitude
/// distribution, in units of P0: (3/32pi) sin^2(theta) |sum_k e^{-i k0 n.r_k} c_k|^2.
FarFieldMap radiation_pattern(const Eigen::VectorXcd& amplitudes, const EmitterArray& g,
                              const SphericalGrid& grid);

/// Total radiated power of a map (quadrature), units of P0.
double total_power(const FarFieldMap& map);

/// Power radiated by one isolated emitter under the same pattern convention;
/// physical statements use the ratio P / single_emitter_power = gamma/gamma0.
inline constexpr double single_emitter_power = 0.25 * units::power0;

enum class DetectorConfig { PolarFixed, Coincident };

/// Two-detector correlation g2 of a two-excitation state at far-field
/// detector directions n1, n2. Polarization sums and the common sin^2(theta)
/// detector factors cancel analytically, so values are directional limits and
/// radius-independent. `defined` is cleared on nodal directions of the
/// single-photon intensity (zero denominator).
double g2_value(const DoubleExcState& state, const EmitterArray& g,
                const Eigen::Vector3d& n1, const Eigen::Vector3d& n2,
                bool* defined = nullptr);

/// g2 sampled on a grid: PolarFixed keeps detector 1 at theta = 0 and scans
/// detector 2; Coincident scans both detectors together.
FarFieldMap g2_map(const DoubleExcState& state, const EmitterArray& g, DetectorConfig config,
                   const SphericalGrid& grid);

}  // namespace qring
