#include "qring/resonance_fit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace qring {

namespace {

double lsq_residual(const std::vector<double>& x, const std::vector<double>& y,
                    std::complex<double> p) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd a(n, 4);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    const std::complex<double> w = 1.0 / (x[i] - p);
    a(i, 0) = 1.0;
    a(i, 1) = 2.0 * w.real();
    a(i, 2) = -2.0 * w.imag();
    a(i, 3) = std::norm(w);
    b(i) = y[i];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  return (a * c - b).norm();
}

}  // namespace

ResonanceFit fit_resonance(const std::vector<double>& x, const std::vector<double>& y,
                           double center_guess, double width_lo, double width_hi) {
  if (x.size() != y.size() || x.size() < 8) {
    throw std::domain_error("fit_resonance: need matching samples (>= 8 points)");
  }
  if (!(width_lo > 0.0) || !(width_hi > width_lo)) {
    throw std::domain_error("fit_resonance: invalid width bracket");
  }
  const double span = x.back() - x.front();

  // coarse grid over (center, log width)
  std::complex<double> best_p;
  double best_r = std::numeric_limits<double>::infinity();
  constexpr int nx = 41, ny = 17;
  for (int i = 0; i < nx; ++i) {
    const double cx = center_guess - 0.25 * span + 0.5 * span * i / (nx - 1);
    for (int j = 0; j < ny; ++j) {
      const double hw = 0.5 * width_lo * std::pow(width_hi / width_lo, double(j) / (ny - 1));
      const std::complex<double> p(cx, -hw);
      const double r = lsq_residual(x, y, p);
      if (r < best_r) {
        best_r = r;
        best_p = p;
      }
    }
  }

  // coordinate golden-section refinement
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  std::complex<double> p = best_p;
  for (int sweep = 0; sweep < 4; ++sweep) {
    double lo = p.real() - 0.05 * span, hi = p.real() + 0.05 * span;
    for (int it = 0; it < 60; ++it) {
      const double c1 = hi - gr * (hi - lo), c2 = lo + gr * (hi - lo);
      if (lsq_residual(x, y, {c1, p.imag()}) < lsq_residual(x, y, {c2, p.imag()})) {
        hi = c2;
      } else {
        lo = c1;
      }
    }
    p = {0.5 * (lo + hi), p.imag()};
    double wlo = p.imag() * 2.0, whi = p.imag() * 0.5;  // imag < 0
    lo = std::min(wlo, whi);
    hi = std::max(wlo, whi);
    for (int it = 0; it < 60; ++it) {
      const double c1 = hi - gr * (hi - lo), c2 = lo + gr * (hi - lo);
      if (lsq_residual(x, y, {p.real(), c1}) < lsq_residual(x, y, {p.real(), c2})) {
        hi = c2;
      } else {
        lo = c1;
      }
    }
    p = {p.real(), 0.5 * (lo + hi)};
  }

  ResonanceFit fit;
  fit.pole = p;
  double norm = 0.0;
  for (double v : y) norm += v * v;
  fit.rel_residual = lsq_residual(x, y, p) / std::max(std::sqrt(norm), 1e-300);
  return fit;
}

}  // namespace qring
