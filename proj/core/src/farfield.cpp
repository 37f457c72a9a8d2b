#include "qring/farfield.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qring {

namespace {

constexpr cplx I{0.0, 1.0};

// Gauss-Legendre nodes/weights on (-1, 1) by Newton iteration on P_n.
void gauss_legendre_nodes(int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x(i) = -z;
    x(n - 1 - i) = z;
    w(i) = 2.0 / ((1.0 - z * z) * pp * pp);
    w(n - 1 - i) = w(i);
  }
}

// phase table exp(-i k0 n . r_k) for every grid direction and emitter
Eigen::MatrixXcd phase_row(const EmitterArray& g, const Eigen::Vector3d& n) {
  Eigen::MatrixXcd row(1, g.size());
  for (int k = 0; k < g.size(); ++k) {
    row(0, k) = std::exp(-I * units::k0 * n.dot(g.positions[k]));
  }
  return row;
}

// symmetric zero-diagonal tensor embedding of wedge amplitudes
Eigen::MatrixXcd embed(const DoubleExcState& state, int n) {
  const PairIndex pidx(n);
  if (state.amplitudes.size() != pidx.size()) {
    throw std::domain_error("g2: state dimension does not match geometry");
  }
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(n, n);
  for (int p = 0; p < pidx.size(); ++p) {
    const auto [k, l] = pidx.pair(p);
    t(k, l) = state.amplitudes(p);
    t(l, k) = state.amplitudes(p);
  }
  return t;
}

constexpr double kNodalTol = 1e-18;

double g2_from_tensor(const Eigen::MatrixXcd& ctil, const EmitterArray& g,
                      const Eigen::Vector3d& n1, const Eigen::Vector3d& n2, bool* defined) {
  const int n = g.size();
  Eigen::VectorXcd e1(n), e2(n);
  for (int k = 0; k < n; ++k) {
    e1(k) = std::exp(-I * units::k0 * n1.dot(g.positions[k]));
    e2(k) = std::exp(-I * units::k0 * n2.dot(g.positions[k]));
  }
  const cplx s = e1.transpose() * ctil * e2;
  const double i1 = (ctil * e1).squaredNorm();
  const double i2 = (ctil * e2).squaredNorm();
  const double den = i1 * i2;
  if (den <= kNodalTol * n * n) {
    if (defined) *defined = false;
    return 0.0;
  }
  if (defined) *defined = true;
  return std::norm(s) / den;
}

}  // namespace

SphericalGrid SphericalGrid::gauss_legendre(int n_theta, int n_phi) {
  if (n_theta < 2 || n_phi < 2) throw std::domain_error("SphericalGrid: grid too small");
  SphericalGrid grid;
  Eigen::VectorXd x;
  gauss_legendre_nodes(n_theta, x, grid.theta_weight);
  grid.theta.resize(n_theta);
  for (int i = 0; i < n_theta; ++i) grid.theta(i) = std::acos(x(n_theta - 1 - i));
  grid.theta_weight.reverseInPlace();
  grid.phi.resize(n_phi);
  for (int j = 0; j < n_phi; ++j) grid.phi(j) = 2.0 * std::numbers::pi * j / n_phi;
  grid.phi_weight = 2.0 * std::numbers::pi / n_phi;
  return grid;
}

Eigen::Vector3d SphericalGrid::direction(int i, int j) const {
  const double st = std::sin(theta(i)), ct = std::cos(theta(i));
  return {st * std::cos(phi(j)), st * std::sin(phi(j)), ct};
}

double FarFieldMap::integrate() const {
  double sum = 0.0;
  for (int i = 0; i < values.rows(); ++i) {
    for (int j = 0; j < values.cols(); ++j) {
      if (!mask(i, j)) sum += values(i, j) * grid.theta_weight(i) * grid.phi_weight;
    }
  }
  return sum;
}

FarFieldMap radiation_pattern(const Eigen::VectorXcd& amplitudes, const EmitterArray& g,
                              const SphericalGrid& grid) {
  if (amplitudes.size() != g.size()) {
    throw std::domain_error("radiation_pattern: amplitude count does not match geometry");
  }
  const int nt = static_cast<int>(grid.theta.size());
  const int np = static_cast<int>(grid.phi.size());
  FarFieldMap map;
  map.grid = grid;
  map.values.resize(nt, np);
  map.mask.setConstant(nt, np, false);
  const double pre = units::power0 * 3.0 / (32.0 * std::numbers::pi);
  for (int i = 0; i < nt; ++i) {
    const double s2 = std::sin(grid.theta(i)) * std::sin(grid.theta(i));
    for (int j = 0; j < np; ++j) {
      const cplx amp = (phase_row(g, grid.direction(i, j)) * amplitudes)(0, 0);
      map.values(i, j) = pre * s2 * std::norm(amp);
    }
  }
  return map;
}

double total_power(const FarFieldMap& map) { return map.integrate(); }

double g2_value(const DoubleExcState& state, const EmitterArray& g, const Eigen::Vector3d& n1,
                const Eigen::Vector3d& n2, bool* defined) {
  if (std::abs(n1.norm() - 1.0) > 1e-12 || std::abs(n2.norm() - 1.0) > 1e-12) {
    throw std::domain_error("g2_value: detector directions must be unit vectors");
  }
  return g2_from_tensor(embed(state, g.size()), g, n1, n2, defined);
}

FarFieldMap g2_map(const DoubleExcState& state, const EmitterArray& g, DetectorConfig config,
                   const SphericalGrid& grid) {
  const Eigen::MatrixXcd ctil = embed(state, g.size());
  const int nt = static_cast<int>(grid.theta.size());
  const int np = static_cast<int>(grid.phi.size());
  FarFieldMap map;
  map.grid = grid;
  map.values.resize(nt, np);
  map.mask.resize(nt, np);
  const Eigen::Vector3d pole(0.0, 0.0, 1.0);
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < np; ++j) {
      const Eigen::Vector3d n2 = grid.direction(i, j);
      const Eigen::Vector3d n1 = (config == DetectorConfig::PolarFixed) ? pole : n2;
      bool ok = true;
      map.values(i, j) = g2_from_tensor(ctil, g, n1, n2, &ok);
      map.mask(i, j) = !ok;
    }
  }
  return map;
}

}  // namespace qring
