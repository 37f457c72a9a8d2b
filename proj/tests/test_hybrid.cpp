#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <random>

#include "qring/hybrid.hpp"

using namespace qring;
using std::numbers::pi;

namespace {

// the two m-sector eigenvalues of the full one-excitation Hamiltonian
std::pair<cplx, cplx> sector_pair(const EmitterArray& g, int m) {
  const MomentumBasis basis = momentum_basis(Manifold::Single, g);
  const Eigen::MatrixXcd h = single_hamiltonian(g);
  const auto& sec = basis.sector(m);
  REQUIRE(sec.vectors.cols() == 2);
  const Eigen::MatrixXcd block = sec.vectors.adjoint() * h * sec.vectors;
  const EigResult er = eig_dense_complex(block);
  return {er.values(0), er.values(1)};
}

void check_roots_match(const TwoModeModel& model, std::pair<cplx, cplx> ref, double tol) {
  std::vector<cplx> a{model.eps_plus, model.eps_minus};
  std::vector<cplx> b{ref.first, ref.second};
  auto lt = [](cplx x, cplx y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  };
  std::sort(a.begin(), a.end(), lt);
  std::sort(b.begin(), b.end(), lt);
  const double scale = std::max({std::abs(b[0]), std::abs(b[1]), 1.0});
  CHECK(std::abs(a[0] - b[0]) <= tol * scale);
  CHECK(std::abs(a[1] - b[1]) <= tol * scale);
}

}  // namespace

TEST_SUITE("hybrid") {

TEST_CASE("decoupled limit returns the bare energies") {
  const cplx ea(0.3, -0.2), eb(-1.1, -0.6);
  const TwoModeModel m = hybridize(ea, eb, 0.0);
  const bool direct = std::abs(m.eps_plus - ea) < 1e-14 && std::abs(m.eps_minus - eb) < 1e-14;
  const bool swapped = std::abs(m.eps_plus - eb) < 1e-14 && std::abs(m.eps_minus - ea) < 1e-14;
  CHECK((direct || swapped));
}

TEST_CASE("degenerate splitting by a real coupling") {
  const cplx e(0.1, -0.5);
  const double kappa = 0.37;
  const TwoModeModel m = hybridize(e, e, kappa);
  CHECK(std::abs(m.eps_plus - (e + kappa)) < 1e-14);
  CHECK(std::abs(m.eps_minus - (e - kappa)) < 1e-14);
  for (const auto& v : {m.vec_plus, m.vec_minus}) {
    CHECK(std::abs(std::abs(v(0)) - 1.0 / std::numbers::sqrt2) < 1e-12);
    CHECK(std::abs(std::abs(v(1)) - 1.0 / std::numbers::sqrt2) < 1e-12);
  }
  CHECK(m.tag_of_plus_root() == '+');
  CHECK(std::abs(m.antisymmetric_energy() - (e - kappa)) < 1e-14);
}

TEST_CASE("trace and determinant identities on random inputs") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const cplx ea(u(rng), u(rng)), eb(u(rng), u(rng)), k(u(rng), u(rng));
    const TwoModeModel m = hybridize(ea, eb, k);
    const double scale = std::max({std::abs(ea), std::abs(eb), std::abs(k), 1.0});
    CHECK(std::abs(m.eps_plus + m.eps_minus - (ea + eb)) < 1e-12 * scale);
    CHECK(std::abs(m.eps_plus * m.eps_minus - (ea * eb - k * k)) < 1e-12 * scale * scale);
    CHECK(std::abs(m.vec_plus.squaredNorm() - 1.0) < 1e-12);
    CHECK(std::abs(m.vec_minus.squaredNorm() - 1.0) < 1e-12);
  }
}

TEST_CASE("ring-center model equals the full m = 0 sector") {
  for (double a : {0.05, 0.1, 0.16, 0.22, 0.25}) {
    check_roots_match(ring_center_model(6, a), sector_pair(build_ring_plus_center(6, a), 0),
                      1e-10);
  }
  for (int n_d : {3, 4, 5, 8}) {
    check_roots_match(ring_center_model(n_d, 0.12),
                      sector_pair(build_ring_plus_center(n_d, 0.12), 0), 1e-10);
  }
}

TEST_CASE("ring-center model: short-distance collective limits") {
  const TwoModeModel m = ring_center_model(6, 0.01);
  const double g_sym = -2.0 * m.symmetric_energy().imag();
  const double g_anti = -2.0 * m.antisymmetric_energy().imag();
  CHECK(g_sym >= 0.9 * 7.0);
  CHECK(g_sym <= 7.0);
  // the antisymmetric branch is strongly subradiant while the symmetric one
  // carries almost the whole collective decay
  CHECK(g_anti < 0.25);
  CHECK(g_anti < 0.05 * g_sym);
  // sector trace: the hybridized pair carries the center + ring-mode decay
  CHECK(std::abs(g_sym + g_anti + 2.0 * (m.eps_a + m.eps_b).imag()) < 1e-12 * (g_sym + g_anti));
}

TEST_CASE("ring-center model at the subradiance optimum") {
  // position of the lifetime maximum on a fine grid
  double best_a = 0.0, best_enh = 0.0;
  for (int i = 0; i <= 600; ++i) {
    const double a = 0.10 + (0.22 - 0.10) * i / 600.0;
    const double enh = -0.5 / ring_center_model(6, a).antisymmetric_energy().imag();
    if (enh > best_enh) {
      best_enh = enh;
      best_a = a;
    }
  }
  CHECK(best_a > 0.15);
  CHECK(best_a < 0.17);

  // at the maximum the mode amplitudes are exactly out of phase
  const TwoModeModel at_max = ring_center_model(6, best_a);
  const Eigen::Vector2cd va = at_max.antisymmetric_vector();
  CHECK(std::abs(std::abs(std::arg(va(1) / va(0))) - pi) < 1e-2);

  // at a = 0.16 the phase is within a few hundredths of pi and the
  // excitation sits mostly on the central emitter
  const TwoModeModel at_016 = ring_center_model(6, 0.16);
  const Eigen::Vector2cd v16 = at_016.antisymmetric_vector();
  CHECK(std::abs(std::abs(std::arg(v16(1) / v16(0))) - pi) < 0.05);
  CHECK(std::norm(v16(0)) > 0.5);
  const double enh_016 = -0.5 / at_016.antisymmetric_energy().imag();
  CHECK(enh_016 >= 200.0);
  CHECK(enh_016 <= 300.0);
}

TEST_CASE("ring-ring model equals the full m sector") {
  for (int m : brillouin_zone(6)) {
    check_roots_match(ring_ring_model(6, 0.16, 2.2, m),
                      sector_pair(build_double_ring(6, 0.16, 2.2), m), 1e-10);
    check_roots_match(ring_ring_model(6, 0.1, 2.0, m),
                      sector_pair(build_double_ring(6, 0.1, 2.0), m), 1e-10);
  }
}

TEST_CASE("ring-ring model is even in the momentum") {
  for (int m : {1, 2}) {
    const TwoModeModel mp = ring_ring_model(6, 0.13, 2.0, m);
    const TwoModeModel mm = ring_ring_model(6, 0.13, 2.0, -m);
    CHECK(std::abs(mp.kappa - mm.kappa) < 1e-12);
    CHECK(std::abs(mp.eps_plus - mm.eps_plus) < 1e-12);
    CHECK(std::abs(mp.eps_minus - mm.eps_minus) < 1e-12);
  }
}

TEST_CASE("widely separated rings decouple to the perturbative bound") {
  for (int m : brillouin_zone(6)) {
    const TwoModeModel model = ring_ring_model(6, 0.1, 50.0, m);
    const cplx delta = model.eps_a - model.eps_b;
    // leading-order envelope; the deviation equals |kappa|^2/|delta| to O((kappa/delta)^2)
    const double bound = std::norm(model.kappa) / std::abs(delta) * 1.01;
    const double dev_plus =
        std::min(std::abs(model.eps_plus - model.eps_a), std::abs(model.eps_plus - model.eps_b));
    const double dev_minus =
        std::min(std::abs(model.eps_minus - model.eps_a), std::abs(model.eps_minus - model.eps_b));
    CHECK(dev_plus <= bound);
    CHECK(dev_minus <= bound);
  }
}

TEST_CASE("coupled rings at fixed ratio show resonant lifetime enhancement") {
  // the coupled antisymmetric branch beats the better of the two isolated
  // rings by a large factor somewhere along the size sweep, for every m
  for (int m : {0, 1, 2, 3}) {
    double best_ratio = 0.0;
    for (int i = 0; i < 120; ++i) {
      const double a = 0.03 + (0.35 - 0.03) * i / 119.0;
      const double coupled =
          -0.5 / ring_ring_model(6, a, 2.0, m).antisymmetric_energy().imag();
      const double isolated = std::max(-0.5 / ring_mode_energy(6, a, m).imag(),
                                       -0.5 / ring_mode_energy(6, 2.0 * a, m).imag());
      best_ratio = std::max(best_ratio, coupled / isolated);
    }
    CHECK(best_ratio > 10.0);
  }

  // the m = 0 and m = 1 branches have clean interior maxima
  for (int m : {0, 1}) {
    double best = -1.0;
    int best_idx = -1;
    const int npts = 60;
    for (int i = 0; i < npts; ++i) {
      const double a = 0.05 + (0.30 - 0.05) * i / (npts - 1);
      const double enh = -0.5 / ring_ring_model(6, a, 2.0, m).antisymmetric_energy().imag();
      if (enh > best) {
        best = enh;
        best_idx = i;
      }
    }
    CHECK(best_idx > 0);
    CHECK(best_idx < npts - 1);
  }
}

TEST_CASE("product states: exact pair eigenstates with additive decay") {
  const ProductStateSet set = b1_product_states(0.16, 2.2);
  const Eigen::MatrixXcd h2 = double_hamiltonian(set.geometry);
  const auto doubles = solve_double(set.geometry);
  const TwoModeModel m1 = ring_ring_model(6, 0.16, 2.2, 1);
  const TwoModeModel m2 = ring_ring_model(6, 0.16, 2.2, 2);

  for (int i = 0; i < 4; ++i) {
    const auto& st = set.states[i];
    CHECK(st.residual <= 1e-8);
    CHECK(st.momentum == 3);
    // energy equals the sum of the constituent hybrid energies
    const auto [s1, s2] = set.tags[i];
    const cplx e1 = s1 == '+' ? m1.symmetric_energy() : m1.antisymmetric_energy();
    const cplx e2 = s2 == '+' ? m2.symmetric_energy() : m2.antisymmetric_energy();
    CHECK(std::abs(st.energy - (e1 + e2)) <= 1e-10 * std::abs(st.energy));
    // and matches an eigenvalue of the full pair manifold
    double nearest = 1e300;
    for (const auto& d : doubles) nearest = std::min(nearest, std::abs(d.energy - st.energy));
    CHECK(nearest <= 1e-8 * std::abs(st.energy));
    // additive decay rates
    const double gamma_sum = -2.0 * (e1.imag() + e2.imag());
    CHECK(std::abs(st.decay_rate() - gamma_sum) <= 1e-8 * gamma_sum);
  }

  // zero projected double occupancy: verified via the embedding
  const PairIndex pidx(12);
  for (const auto& st : set.states) {
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(12, 12);
    for (int p = 0; p < pidx.size(); ++p) {
      const auto [k, l] = pidx.pair(p);
      t(k, l) = t(l, k) = st.amplitudes(p);
    }
    CHECK(t.diagonal().cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("m = 3 classification of the product states") {
  const ProductStateSet set = b1_product_states(0.16, 2.2);
  const MomentumBasis basis = momentum_basis(Manifold::Double, set.geometry);
  std::vector<DoubleExcState> states(set.states.begin(), set.states.end());
  for (auto& s : states) s.momentum.reset();
  classify(states, set.geometry, basis);
  for (const auto& s : states) CHECK(s.momentum == 3);
}

TEST_CASE("fully antisymmetric product state is dominated by the m = 1 branch") {
  const ProductStateSet set = b1_product_states(0.16, 2.2);
  const double gamma_mm = set.states[set.index_of('-', '-')].decay_rate();
  const double g1 = -2.0 * ring_ring_model(6, 0.16, 2.2, 1).antisymmetric_energy().imag();
  const double g2 = -2.0 * ring_ring_model(6, 0.16, 2.2, 2).antisymmetric_energy().imag();
  CHECK(g2 < 0.2 * g1);
  CHECK(std::abs(gamma_mm - g1) / gamma_mm < 0.1);
  CHECK(1.0 / gamma_mm > 100.0);
}

TEST_CASE("product states need the hexagonal double ring") {
  CHECK_THROWS_AS(b1_product_states(0.16, 0.9), std::domain_error);
}

TEST_CASE("decomposition over single-excitation products") {
  const EmitterArray g = build_double_ring(6, 0.16, 2.2);
  const auto singles = solve_single(g);
  const auto doubles = solve_double(g);
  REQUIRE(singles.size() == 12);
  REQUIRE(doubles.size() == 66);

  int m3 = 0;
  for (const auto& d : doubles) {
    if (d.momentum == 3) ++m3;
    const DecompositionResult res = decompose_double_state(d, singles, g);
    CHECK(res.selection_leakage < 1e-10);
    CHECK(std::abs(res.reconstructed_energy - res.direct_energy) <=
          1e-8 * std::abs(res.direct_energy));
    CHECK(std::abs(res.sum_abs2 - 1.0) < 0.05);
  }
  CHECK(m3 == 10);
}

TEST_CASE("decomposition of the antisymmetric product state: four equal weights") {
  const EmitterArray g = build_double_ring(6, 0.16, 2.2);
  const auto singles = solve_single(g);
  const ProductStateSet set = b1_product_states(0.16, 2.2);
  const auto& st = set.states[set.index_of('-', '-')];
  const DecompositionResult res = decompose_double_state(st, singles, g);

  CHECK(std::abs(res.sum_abs2 - 1.0) < 1e-10);
  int big = 0;
  for (int i = 0; i < res.v.rows(); ++i) {
    for (int j = 0; j < res.v.cols(); ++j) {
      const double av = std::abs(res.v(i, j));
      if (av > 1e-8) {
        CHECK(std::abs(av - 0.5) < 1e-10);
        // only (+-1, +-2) momentum patterns contribute
        const int mi = res.momentum[i], mj = res.momentum[j];
        CHECK(std::abs(mi * mj) == 2);
        ++big;
      }
    }
  }
  CHECK(big == 4);
}

TEST_CASE("decomposition rejects incomplete bases") {
  const EmitterArray g = build_double_ring(6, 0.16, 2.2);
  auto singles = solve_single(g);
  const auto doubles = solve_double(g);
  singles.pop_back();
  CHECK_THROWS_AS(decompose_double_state(doubles[0], singles, g), std::domain_error);
}

}  // TEST_SUITE
