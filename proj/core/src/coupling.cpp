#include "qring/coupling.hpp"

#include <cmath>
#include <stdexcept>

namespace qring {

namespace {
constexpr cplx I{0.0, 1.0};
}

cplx coupling_rate(double separation) {
  if (!(separation > 0.0)) {
    throw std::domain_error("coupling_rate: separation must be positive");
  }
  const double x = units::k0 * separation;
  const cplx phase = std::exp(I * x);
  return -0.75 * units::gamma0 * phase / x * (1.0 + I / x - 1.0 / (x * x));
}

Eigen::Matrix3cd free_space_green(const Eigen::Vector3d& r) {
  const double d = r.norm();
  if (!(d > 0.0)) {
    throw std::domain_error("free_space_green: zero separation");
  }
  const double x = units::k0 * d;
  const cplx pre = std::exp(I * x) / (4.0 * std::numbers::pi * d);
  const cplx ciso = 1.0 + I / x - 1.0 / (x * x);
  const cplx crad = -1.0 - 3.0 * I / x + 3.0 / (x * x);
  const Eigen::Vector3d u = r / d;
  Eigen::Matrix3cd g = pre * ciso * Eigen::Matrix3cd::Identity();
  g += pre * crad * (u * u.transpose()).cast<cplx>();
  return g;
}

Eigen::Matrix3cd farfield_green(const Eigen::Vector3d& n, const Eigen::Vector3d& r_src) {
  if (std::abs(n.norm() - 1.0) > 1e-12) {
    throw std::domain_error("farfield_green: direction must be a unit vector");
  }
  const cplx phase = std::exp(-I * units::k0 * n.dot(r_src));
  Eigen::Matrix3cd proj =
      Eigen::Matrix3cd::Identity() - (n * n.transpose()).cast<cplx>();
  return phase / (4.0 * std::numbers::pi) * proj;
}

cplx lorentz_polarizability(double detuning) {
  const double k03 = units::k0 * units::k0 * units::k0;
  return -(6.0 * std::numbers::pi / k03) * (0.5 * units::gamma0) /
         (detuning + I * 0.5 * units::gamma0);
}

}  // namespace qring
