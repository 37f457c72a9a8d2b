#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qring/manifolds.hpp"

namespace oracles {

using qring::cplx;

std::complex<long double> coupling_rate_ld(long double separation) {
  const long double pi = 3.14159265358979323846264338327950288L;
  const long double x = 2.0L * pi * separation;
  const std::complex<long double> i(0.0L, 1.0L);
  const std::complex<long double> phase(std::cos(x), std::sin(x));
  return -0.75L * phase / x * (1.0L + i / x - 1.0L / (x * x));
}

Eigen::MatrixXcd double_hamiltonian_tensor(const qring::EmitterArray& g) {
  const int n = g.size();
  const Eigen::MatrixXcd h1 = qring::single_hamiltonian(g);
  Eigen::MatrixXcd ht = Eigen::MatrixXcd::Zero(n * n, n * n);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          ht(a * n + b, c * n + d) = h1(a, c) * id(b, d) + id(a, c) * h1(b, d);
        }
      }
    }
  }
  const qring::PairIndex pidx(n);
  Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(n * n, pidx.size());
  for (int p = 0; p < pidx.size(); ++p) {
    const auto [k, l] = pidx.pair(p);
    proj(k * n + l, p) = 1.0 / std::numbers::sqrt2;
    proj(l * n + k, p) = 1.0 / std::numbers::sqrt2;
  }
  return proj.transpose() * ht * proj;
}

std::vector<cplx> char_poly(const Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<cplx> c(n + 1);
  c[n] = 1.0;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    m = a * m + c[n - k + 1] * Eigen::MatrixXcd::Identity(n, n);
    c[n - k] = -(a * m).trace() / double(k);
  }
  return c;
}

cplx eval_poly(const std::vector<cplx>& c, cplx x) {
  cplx acc = 0.0;
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) acc = acc * x + c[k];
  return acc;
}

double bessel_j_series(int order, double x) {
  if (order < 0) throw std::domain_error("bessel_j_series: order >= 0");
  const long double half = 0.5L * static_cast<long double>(x);
  long double term = 1.0L;
  for (int k = 1; k <= order; ++k) term *= half / k;
  long double sum = term;
  const long double h2 = half * half;
  for (int j = 1; j <= 40; ++j) {
    term *= -h2 / (static_cast<long double>(j) * (j + order));
    sum += term;
  }
  return static_cast<double>(sum);
}

namespace {

// far-field Green column for a z-dipole, all three Cartesian components
Eigen::Vector3cd green_column(const Eigen::Vector3d& n, const Eigen::Vector3d& src) {
  const cplx phase = std::exp(cplx(0.0, -qring::units::k0 * n.dot(src)));
  Eigen::Vector3d pol = Eigen::Vector3d::UnitZ() - n * n.z();
  return phase / (4.0 * std::numbers::pi) * pol.cast<cplx>();
}

}  // namespace

double g2_brute_force(const qring::DoubleExcState& state, const qring::EmitterArray& g,
                      const Eigen::Vector3d& n1, const Eigen::Vector3d& n2) {
  const int n = g.size();
  if (n > 12) throw std::domain_error("g2_brute_force: Fock space too large");
  const int dim = 1 << n;
  const qring::PairIndex pidx(n);

  // two-excitation wavefunction in the Fock basis (bit k = emitter k excited)
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  for (int p = 0; p < pidx.size(); ++p) {
    const auto [k, l] = pidx.pair(p);
    psi((1 << k) | (1 << l)) = state.amplitudes(p);
  }

  // sigma_k lowering operator applied to a Fock vector
  auto lower = [&](int k, const Eigen::VectorXcd& v) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    for (int s = 0; s < dim; ++s) {
      if (s & (1 << k)) out(s & ~(1 << k)) += v(s);
    }
    return out;
  };

  // field operator E^dag_alpha(r) |v> = sum_k G_alpha(n, r_k) sigma_k |v>
  auto apply_field = [&](const Eigen::Vector3d& dir, int alpha, const Eigen::VectorXcd& v) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    for (int k = 0; k < n; ++k) {
      out += green_column(dir, g.positions[k])(alpha) * lower(k, v);
    }
    return out;
  };

  double num = 0.0;
  for (int alpha = 0; alpha < 3; ++alpha) {
    for (int beta = 0; beta < 3; ++beta) {
      const Eigen::VectorXcd v = apply_field(n1, alpha, apply_field(n2, beta, psi));
      num += v.squaredNorm();
    }
  }
  auto intensity = [&](const Eigen::Vector3d& dir) {
    double acc = 0.0;
    for (int alpha = 0; alpha < 3; ++alpha) acc += apply_field(dir, alpha, psi).squaredNorm();
    return acc;
  };
  return num / (intensity(n1) * intensity(n2));
}

int count_double_states_enumerated(int n_d, int n_r, int m) {
  const int n = n_d * n_r;
  const qring::PairIndex pidx(n);
  // cyclic action: shift within each ring
  auto shift = [&](int k) { return (k / n_d) * n_d + (k % n_d + 1) % n_d; };
  std::vector<int> perm(pidx.size());
  for (int p = 0; p < pidx.size(); ++p) {
    const auto [k, l] = pidx.pair(p);
    perm[p] = pidx.flat(shift(k), shift(l));
  }
  std::vector<bool> seen(pidx.size(), false);
  int count = 0;
  for (int p = 0; p < pidx.size(); ++p) {
    if (seen[p]) continue;
    int len = 0;
    for (int q = p; !seen[q]; q = perm[q]) {
      seen[q] = true;
      ++len;
    }
    // orbit of length L contributes momenta j * n_d / L, j = 0..L-1
    for (int j = 0; j < len; ++j) {
      if (qring::fold_momentum(j * (n_d / len), n_d) == m) ++count;
    }
  }
  return count;
}

}  // namespace oracles
