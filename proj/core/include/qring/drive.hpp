#pragma once

#include <Eigen/Dense>
#include <numbers>
#include <vector>

#include "qring/geometry.hpp"
#include "qring/coupling.hpp"

namespace qring {

/// Ideal scalar Bessel beam propagating along +z; only the longitudinal
/// field component matters for z-oriented emitters. The azimuthal order of
/// E_z is the total angular momentum ell + spin.
struct BesselBeam {
  int oam_ell = 1;
  int spin = -1;  // -1, 0, +1
  double cone_half_angle = std::numbers::pi / 3.0;  // "tightly focused" default
  double amplitude = 1.0;

  int total_angular_momentum() const { return oam_ell + spin; }
};

/// E_z at a point: E0 J_{|m|}(k0 sin(theta_b) rho) e^{i m phi} e^{i k0 cos(theta_b) z}.
cplx bessel_field_z(const BesselBeam& beam, const Eigen::Vector3d& position);

struct DipoleSolution {
  Eigen::VectorXcd moments;  // z-components
  double detuning = 0.0;
  double residual = 0.0;     // relative residual of the coupled-dipole system
};

/// Self-consistent dipole moments under the beam at the given detuning.
/// The inter-emitter Green's tensor is frozen at the emitter resonance, so the
/// response poles coincide with the collective one-excitation eigenvalues.
DipoleSolution solve_coupled_dipoles(const EmitterArray& g, const BesselBeam& beam,
                                     double detuning);

struct ScsPoint {
  double detuning = 0.0;
  double scs_normalized = 0.0;  // sigma / (N sigma_0)
  bool ok = true;
};

/// Normalized scattering cross-section spectrum; the reference emitter for
/// sigma_0 sits at the origin and sees the same beam. Per-point solver
/// failures are flagged, the sweep continues.
std::vector<ScsPoint> scattering_cross_section_sweep(const EmitterArray& g,
                                                     const BesselBeam& beam,
                                                     const std::vector<double>& detunings,
                                                     int n_theta = 64, int n_phi = 128);

/// Absolute single-emitter scattering cross section, units of lambda0^2.
double single_emitter_cross_section(double detuning);

}  // namespace qring
