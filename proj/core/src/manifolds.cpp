#include "qring/manifolds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qring {

PairIndex::PairIndex(int n) : n_(n) {
  if (n < 2) throw std::domain_error("PairIndex: need n >= 2");
  flat_.assign(n * n, -1);
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      flat_[k * n + l] = static_cast<int>(pairs_.size());
      flat_[l * n + k] = static_cast<int>(pairs_.size());
      pairs_.emplace_back(k, l);
    }
  }
}

int PairIndex::flat(int k, int l) const {
  if (k == l || k < 0 || l < 0 || k >= n_ || l >= n_) {
    throw std::domain_error("PairIndex: invalid pair");
  }
  return flat_[k * n_ + l];
}

Eigen::MatrixXcd single_hamiltonian(const EmitterArray& g) {
  const int n = g.size();
  Eigen::MatrixXcd h(n, n);
  for (int k = 0; k < n; ++k) {
    h(k, k) = cplx(0.0, -0.5 * units::gamma0);
    for (int l = k + 1; l < n; ++l) {
      const cplx v = coupling_rate((g.positions[k] - g.positions[l]).norm());
      h(k, l) = v;
      h(l, k) = v;
    }
  }
  return h;
}

Eigen::MatrixXcd double_hamiltonian(const EmitterArray& g) {
  const int n = g.size();
  if (n < 2) throw std::domain_error("double_hamiltonian: need at least 2 emitters");
  const PairIndex pi(n);
  const int m = pi.size();
  // pairwise couplings, reused for every shared-emitter matrix element
  Eigen::MatrixXcd gmat = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      gmat(k, l) = gmat(l, k) = coupling_rate((g.positions[k] - g.positions[l]).norm());
    }
  }
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m, m);
  for (int p = 0; p < m; ++p) {
    const auto [k, l] = pi.pair(p);
    h(p, p) = cplx(0.0, -units::gamma0);
    // hop the excitation at l to any free emitter d (pair (k,l) -> (k,d))
    for (int d = 0; d < n; ++d) {
      if (d == k || d == l) continue;
      h(p, pi.flat(k, d)) += gmat(l, d);
      h(p, pi.flat(d, l)) += gmat(k, d);
    }
  }
  return h;
}

std::vector<int> rotation_permutation(const EmitterArray& g) {
  if (g.n_d < 2) {
    throw std::domain_error("rotation_permutation: geometry has no discrete rotation order");
  }
  const int n = g.size();
  const double angle = 2.0 * std::numbers::pi / g.n_d;
  const double c = std::cos(angle), s = std::sin(angle);
  // tolerance scaled to the geometry size
  double scale = 0.0;
  for (const auto& p : g.positions) scale = std::max(scale, p.norm());
  const double tol = 1e-9 * std::max(scale, 1e-12);

  std::vector<int> sigma(n, -1);
  std::vector<bool> used(n, false);
  for (int k = 0; k < n; ++k) {
    const Eigen::Vector3d& p = g.positions[k];
    const Eigen::Vector3d q(c * p.x() - s * p.y(), s * p.x() + c * p.y(), p.z());
    for (int j = 0; j < n; ++j) {
      if (!used[j] && (g.positions[j] - q).norm() < tol) {
        sigma[k] = j;
        used[j] = true;
        break;
      }
    }
    if (sigma[k] < 0) {
      throw std::domain_error("rotation_permutation: positions are not invariant under 2pi/n_d");
    }
  }
  return sigma;
}

namespace {

// pair permutation induced by the single-emitter permutation
std::vector<int> pair_permutation(const std::vector<int>& sigma, const PairIndex& pi) {
  std::vector<int> out(pi.size());
  for (int p = 0; p < pi.size(); ++p) {
    const auto [k, l] = pi.pair(p);
    out[p] = pi.flat(sigma[k], sigma[l]);
  }
  return out;
}

}  // namespace

Eigen::MatrixXd rotation_operator(Manifold manifold, const EmitterArray& g) {
  const auto sigma = rotation_permutation(g);
  if (manifold == Manifold::Single) {
    const int n = g.size();
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) r(k, sigma[k]) = 1.0;  // (Rc)_k = c_{sigma(k)}
    return r;
  }
  const PairIndex pi(g.size());
  const auto tau = pair_permutation(sigma, pi);
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(pi.size(), pi.size());
  for (int p = 0; p < pi.size(); ++p) r(p, tau[p]) = 1.0;
  return r;
}

std::vector<int> brillouin_zone(int n_d) {
  if (n_d < 2) throw std::domain_error("brillouin_zone: n_d >= 2 required");
  std::vector<int> zone{0};
  for (int m = 1; m <= (n_d - 1) / 2; ++m) {
    zone.push_back(m);
    zone.push_back(-m);
  }
  if (n_d % 2 == 0) zone.push_back(n_d / 2);
  return zone;
}

int fold_momentum(int m, int n_d) {
  int r = ((m % n_d) + n_d) % n_d;
  if (2 * r > n_d) r -= n_d;  // even n_d boundary stays at +n_d/2
  return r;
}

const MomentumSector& MomentumBasis::sector(int m) const {
  for (const auto& s : sectors) {
    if (s.m == m) return s;
  }
  throw std::domain_error("MomentumBasis: momentum outside the first Brillouin zone");
}

namespace {

// Fourier vectors over the orbits of a permutation: each orbit of length L
// contributes eigenvectors of the permutation operator with eigenvalues
// exp(2 pi i j / L), i.e. momentum m = j * n_d / L folded into the zone.
MomentumBasis orbit_basis(const std::vector<int>& perm, int n_d, Manifold manifold) {
  const int dim = static_cast<int>(perm.size());
  MomentumBasis basis;
  basis.manifold = manifold;
  basis.n_d = n_d;
  basis.dim = dim;
  for (int m : brillouin_zone(n_d)) basis.sectors.push_back({m, {}});

  std::vector<std::vector<Eigen::VectorXcd>> cols(basis.sectors.size());
  auto sector_slot = [&](int m) -> int {
    for (std::size_t i = 0; i < basis.sectors.size(); ++i) {
      if (basis.sectors[i].m == m) return static_cast<int>(i);
    }
    return -1;
  };

  std::vector<bool> seen(dim, false);
  for (int start = 0; start < dim; ++start) {
    if (seen[start]) continue;
    std::vector<int> orbit{start};
    seen[start] = true;
    for (int j = perm[start]; j != start; j = perm[j]) {
      orbit.push_back(j);
      seen[j] = true;
    }
    const int len = static_cast<int>(orbit.size());
    if (n_d % len != 0) {
      throw std::domain_error("momentum_basis: orbit length incompatible with rotation order");
    }
    for (int j = 0; j < len; ++j) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
      for (int t = 0; t < len; ++t) {
        const double arg = 2.0 * std::numbers::pi * j * t / len;
        v(orbit[t]) = cplx(std::cos(arg), std::sin(arg)) / std::sqrt(double(len));
      }
      cols[sector_slot(fold_momentum(j * (n_d / len), n_d))].push_back(std::move(v));
    }
  }

  for (std::size_t i = 0; i < basis.sectors.size(); ++i) {
    auto& sec = basis.sectors[i];
    sec.vectors.resize(dim, static_cast<int>(cols[i].size()));
    for (std::size_t c = 0; c < cols[i].size(); ++c) sec.vectors.col(c) = cols[i][c];
  }
  return basis;
}

}  // namespace

MomentumBasis momentum_basis(Manifold manifold, const EmitterArray& g) {
  const auto sigma = rotation_permutation(g);
  if (manifold == Manifold::Single) {
    return orbit_basis(sigma, g.n_d, manifold);
  }
  const PairIndex pi(g.size());
  return orbit_basis(pair_permutation(sigma, pi), g.n_d, manifold);
}

int count_double_states(int n_d, int n_r, int m) {
  if (n_d < 2 || n_r < 1) throw std::domain_error("count_double_states: invalid geometry");
  const auto zone = brillouin_zone(n_d);
  if (std::find(zone.begin(), zone.end(), m) == zone.end()) {
    throw std::domain_error("count_double_states: momentum outside the first Brillouin zone");
  }
  const int cross = n_r * (n_r - 1) / 2 * n_d;
  if (n_d % 2 == 0) {
    const int even_m = (((m % 2) + 2) % 2 == 0);
    return (even_m ? n_r * (n_d / 2) : n_r * (n_d / 2 - 1)) + cross;
  }
  return n_r * ((n_d - 1) / 2) + cross;
}

}  // namespace qring
