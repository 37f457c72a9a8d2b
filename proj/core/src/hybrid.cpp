#include "qring/hybrid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qring {

namespace {

constexpr cplx I{0.0, 1.0};

cplx branch_sqrt(cplx z) {
  cplx s = std::sqrt(z);
  if (s.real() < 0.0 || (s.real() == 0.0 && s.imag() < 0.0)) s = -s;
  return s;
}

char tag_from_vector(const Eigen::Vector2cd& v) {
  const double rel = std::arg(v(1) / v(0));
  return (std::abs(rel) <= std::numbers::pi / 2.0) ? '+' : '-';
}

}  // namespace

char TwoModeModel::tag_of_plus_root() const { return tag_from_vector(vec_plus); }

cplx TwoModeModel::symmetric_energy() const {
  return tag_of_plus_root() == '+' ? eps_plus : eps_minus;
}

cplx TwoModeModel::antisymmetric_energy() const {
  return tag_of_plus_root() == '+' ? eps_minus : eps_plus;
}

Eigen::Vector2cd TwoModeModel::symmetric_vector() const {
  return tag_of_plus_root() == '+' ? vec_plus : vec_minus;
}

Eigen::Vector2cd TwoModeModel::antisymmetric_vector() const {
  return tag_of_plus_root() == '+' ? vec_minus : vec_plus;
}

TwoModeModel hybridize(cplx eps_a, cplx eps_b, cplx kappa) {
  TwoModeModel m;
  m.eps_a = eps_a;
  m.eps_b = eps_b;
  m.kappa = kappa;
  const cplx s = branch_sqrt((eps_a - eps_b) * (eps_a - eps_b) + 4.0 * kappa * kappa);
  m.eps_plus = 0.5 * (eps_a + eps_b + s);
  m.eps_minus = 0.5 * (eps_a + eps_b - s);
  m.eta_plus = (eps_b - eps_a + s) / (2.0 * kappa);
  m.eta_minus = (eps_b - eps_a - s) / (2.0 * kappa);
  m.vec_plus << 1.0, m.eta_plus;
  m.vec_minus << 1.0, m.eta_minus;
  m.vec_plus /= std::sqrt(1.0 + std::norm(m.eta_plus));
  m.vec_minus /= std::sqrt(1.0 + std::norm(m.eta_minus));
  return m;
}

TwoModeModel ring_center_model(int n_d, double spacing) {
  if (n_d < 2) throw std::domain_error("ring_center_model: n_d >= 2 required");
  const cplx eps_center{0.0, -0.5 * units::gamma0};
  const cplx eps_ring = ring_mode_energy(n_d, spacing, 0);
  const cplx kappa = std::sqrt(double(n_d)) * coupling_rate(ring_radius(n_d, spacing));
  return hybridize(eps_center, eps_ring, kappa);
}

TwoModeModel ring_ring_model(int n_d, double spacing, double ratio, int m) {
  if (!(ratio > 1.0)) throw std::domain_error("ring_ring_model: ratio must exceed 1");
  const auto zone = brillouin_zone(n_d);
  if (std::find(zone.begin(), zone.end(), m) == zone.end()) {
    throw std::domain_error("ring_ring_model: momentum outside the first Brillouin zone");
  }
  const cplx eps_in = ring_mode_energy(n_d, spacing, m);
  const cplx eps_out = ring_mode_energy(n_d, ratio * spacing, m);
  // coupling sum from the first inner emitter to the whole outer ring
  const double r_in = ring_radius(n_d, spacing);
  const double r_out = ring_radius(n_d, ratio * spacing);
  const Eigen::Vector3d p0(r_in, 0.0, 0.0);
  cplx kappa = 0.0;
  for (int k = 0; k < n_d; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / n_d;
    const Eigen::Vector3d q(r_out * std::cos(phi), r_out * std::sin(phi), 0.0);
    kappa += coupling_rate((p0 - q).norm()) * cplx(std::cos(m * phi), std::sin(m * phi));
  }
  return hybridize(eps_in, eps_out, kappa);
}

int ProductStateSet::index_of(char s1, char s2) const {
  for (int i = 0; i < 4; ++i) {
    if (tags[i].first == s1 && tags[i].second == s2) return i;
  }
  throw std::domain_error("ProductStateSet: tag must be '+' or '-'");
}

ProductStateSet b1_product_states(double spacing, double ratio, bool verify_residual) {
  constexpr int n_d = 6;
  ProductStateSet set;
  set.geometry = build_double_ring(n_d, spacing, ratio);
  const int n = set.geometry.size();
  const PairIndex pidx(n);

  // Hybrid single states with definite momentum. The +-m models share the
  // same mode coefficients (the coupling sum is even in m), which is what
  // makes the antisymmetrized products exact eigenstates.
  auto mode_vector = [&](int m, const Eigen::Vector2cd& coeff) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    for (int k = 0; k < n_d; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / n_d;
      const cplx w = cplx(std::cos(m * phi), std::sin(m * phi)) / std::sqrt(double(n_d));
      v(k) = coeff(0) * w;
      v(n_d + k) = coeff(1) * w;
    }
    return v;
  };

  const TwoModeModel model1 = ring_ring_model(n_d, spacing, ratio, 1);
  const TwoModeModel model2 = ring_ring_model(n_d, spacing, ratio, 2);

  Eigen::MatrixXcd h2;
  if (verify_residual) h2 = double_hamiltonian(set.geometry);

  int slot = 0;
  for (char s1 : {'-', '+'}) {
    for (char s2 : {'-', '+'}) {
      const Eigen::Vector2cd c1 =
          (s1 == '+') ? model1.symmetric_vector() : model1.antisymmetric_vector();
      const Eigen::Vector2cd c2 =
          (s2 == '+') ? model2.symmetric_vector() : model2.antisymmetric_vector();
      const cplx e1 = (s1 == '+') ? model1.symmetric_energy() : model1.antisymmetric_energy();
      const cplx e2 = (s2 == '+') ? model2.symmetric_energy() : model2.antisymmetric_energy();

      const Eigen::VectorXcd p1 = mode_vector(+1, c1);
      const Eigen::VectorXcd q1 = mode_vector(-1, c1);
      const Eigen::VectorXcd p2 = mode_vector(+2, c2);
      const Eigen::VectorXcd q2 = mode_vector(-2, c2);

      // antisymmetrized product tensor; its double-occupancy (diagonal)
      // amplitudes cancel identically for the hexagonal m = 3 combination
      Eigen::MatrixXcd t = 0.5 * I *
          (p1 * p2.transpose() + p2 * p1.transpose() - q1 * q2.transpose() - q2 * q1.transpose());
      double diag_max = 0.0;
      for (int k = 0; k < n; ++k) diag_max = std::max(diag_max, std::abs(t(k, k)));
      if (diag_max > 1e-10) {
        throw std::runtime_error(
            "b1_product_states: double-occupancy amplitudes fail to cancel (broken degeneracy)");
      }

      DoubleExcState st;
      st.amplitudes.resize(pidx.size());
      for (int p = 0; p < pidx.size(); ++p) {
        const auto [k, l] = pidx.pair(p);
        st.amplitudes(p) = std::numbers::sqrt2 * t(k, l);
      }
      st.amplitudes.normalize();
      st.energy = e1 + e2;
      st.momentum = 3;
      st.bilinear_self = st.amplitudes.transpose() * st.amplitudes;
      st.near_defective = false;
      if (verify_residual) {
        st.residual = (h2 * st.amplitudes - st.energy * st.amplitudes).norm();
        if (st.residual > 1e-8) {
          throw std::runtime_error("b1_product_states: residual exceeds 1e-8");
        }
      }
      set.states[slot] = std::move(st);
      set.tags[slot] = {s1, s2};
      set.constituent_sum[slot] = e1 + e2;
      ++slot;
    }
  }
  return set;
}

DecompositionResult decompose_double_state(const DoubleExcState& state,
                                           const std::vector<SingleExcState>& singles,
                                           const EmitterArray& g) {
  const int n = g.size();
  if (static_cast<int>(singles.size()) != n) {
    throw std::domain_error("decompose_double_state: need the complete one-excitation basis");
  }
  const PairIndex pidx(n);
  if (state.amplitudes.size() != pidx.size()) {
    throw std::domain_error("decompose_double_state: state dimension mismatch");
  }

  DecompositionResult res;
  res.momentum.reserve(n);
  Eigen::MatrixXcd basis(n, n);
  for (int i = 0; i < n; ++i) {
    if (!singles[i].momentum) {
      throw std::domain_error("decompose_double_state: single states lack momentum labels");
    }
    res.momentum.push_back(*singles[i].momentum);
    basis.col(i) = singles[i].amplitudes;
  }

  Eigen::FullPivLU<Eigen::MatrixXcd> lu(basis);
  lu.setThreshold(1e-10);
  if (!lu.isInvertible()) {
    throw std::runtime_error("decompose_double_state: defective single basis");
  }

  // symmetric tensor embedding of the pair amplitudes
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(n, n);
  for (int p = 0; p < pidx.size(); ++p) {
    const auto [k, l] = pidx.pair(p);
    t(k, l) = state.amplitudes(p) / std::numbers::sqrt2;
    t(l, k) = t(k, l);
  }

  const Eigen::MatrixXcd inv = lu.inverse();
  res.v = inv * t * inv.transpose();

  // energy recombination: expand, apply the pair Hamiltonian action through
  // the single energies, project out double occupancy, compare with the state
  Eigen::VectorXcd eps(n);
  for (int i = 0; i < n; ++i) eps(i) = singles[i].energy;
  Eigen::MatrixXcd weighted = res.v;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) weighted(i, j) *= eps(i) + eps(j);
  }
  Eigen::MatrixXcd x = basis * weighted * basis.transpose();
  x.diagonal().setZero();
  res.reconstructed_energy = (t.conjugate().cwiseProduct(x)).sum() / t.squaredNorm();
  res.direct_energy = state.energy;

  res.sum_abs2 = res.v.squaredNorm();
  res.energy_hermitian_weighted =
      (res.v.cwiseAbs2().cast<cplx>().cwiseProduct(
           (eps * Eigen::VectorXcd::Ones(n).transpose() +
            Eigen::VectorXcd::Ones(n) * eps.transpose())))
          .sum();

  if (state.momentum && g.n_d >= 2) {
    const int m = *state.momentum;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (fold_momentum(res.momentum[i] + res.momentum[j] - m, g.n_d) != 0) {
          res.selection_leakage = std::max(res.selection_leakage, std::abs(res.v(i, j)));
        }
      }
    }
  }
  return res;
}

}  // namespace qring
