#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qring/units.hpp"

namespace qring {

using cplx = std::complex<double>;

/// Dipole-dipole coupling rate g(r) between two z-oriented emitters separated
/// in-plane by r (units of lambda0). Returned in units of gamma0. Evaluated at
/// the emitter resonance (Born-Markov), so it is a function of |r| only.
/// Throws std::domain_error for r <= 0; coincident emitters are not supported.
cplx coupling_rate(double separation);

/// Free-space electromagnetic Green's tensor G0(r, w0), 3x3 complex symmetric.
Eigen::Matrix3cd free_space_green(const Eigen::Vector3d& r);

/// Angular factor of the far-field Green's tensor for observation direction n
/// and source position r_src: exp(-i k0 n.r_src) (I - n n^T) / (4 pi).
/// The overall exp(i k0 r)/r factor is dropped; it cancels in every
/// normalized observable. n must be a unit vector to 1e-12.
Eigen::Matrix3cd farfield_green(const Eigen::Vector3d& n, const Eigen::Vector3d& r_src);

/// Lorentz polarizability near resonance, detuning in units of gamma0.
cplx lorentz_polarizability(double detuning);

}  // namespace qring
