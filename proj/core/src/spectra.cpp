#include "qring/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qring {

namespace {

constexpr double kDefectiveTol = 1e-8;

struct RawState {
  cplx value;
  Eigen::VectorXcd vector;
  std::optional<int> momentum;
  std::optional<char> hybrid_tag;
};

void phase_fix(Eigen::VectorXcd& v) {
  int best = 0;
  double mag = -1.0;
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > mag) {
      mag = std::abs(v(i));
      best = i;
    }
  }
  const cplx z = v(best);
  if (std::abs(z) > 0.0) v *= std::conj(z) / std::abs(z);
}

bool energy_less(const cplx& a, const cplx& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

EigResult eig_dense_complex(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw std::domain_error("eig_dense_complex: square matrix required");
  if (a.rows() > 512) throw std::domain_error("eig_dense_complex: dimension exceeds contract (512)");
  if (!a.allFinite()) throw std::domain_error("eig_dense_complex: non-finite entries");

  const int n = static_cast<int>(a.rows());
  EigResult r;
  if (n == 0) return r;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_dense_complex: QR iteration failed to converge");
  }

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return energy_less(solver.eigenvalues()(i), solver.eigenvalues()(j));
  });

  r.values.resize(n);
  r.vectors.resize(n, n);
  r.bilinear_self.resize(n);
  r.near_defective.resize(n);
  const double amax = a.cwiseAbs().maxCoeff();
  for (int i = 0; i < n; ++i) {
    const int s = order[i];
    r.values(i) = solver.eigenvalues()(s);
    Eigen::VectorXcd v = solver.eigenvectors().col(s);
    v.normalize();
    phase_fix(v);
    const cplx self = v.transpose() * v;  // bilinear, no conjugation
    if (std::abs(self) > kDefectiveTol) {
      r.bilinear_self(i) = self;
      r.near_defective[i] = false;
    } else {
      r.bilinear_self(i) = self;
      r.near_defective[i] = true;
    }
    r.vectors.col(i) = v;
    r.max_residual = std::max(r.max_residual, (a * v - r.values(i) * v).norm());
  }
  if (r.max_residual > 1e-9 * n * std::max(amax, 1e-300)) {
    throw std::runtime_error("eig_dense_complex: residual " + std::to_string(r.max_residual) +
                             " exceeds contract");
  }
  return r;
}

cplx ring_dipole_sum(int n_d, double spacing, int m) {
  const double radius = ring_radius(n_d, spacing);
  cplx sum = 0.0;
  for (int k = 1; k < n_d; ++k) {
    const double chord = 2.0 * radius * std::sin(std::numbers::pi * k / n_d);
    const double arg = 2.0 * std::numbers::pi * m * k / n_d;
    sum += coupling_rate(chord) * cplx(std::cos(arg), std::sin(arg));
  }
  return sum;
}

cplx hexagon_dipole_sum(double spacing, int m) {
  const double a = spacing;
  const double c1 = std::cos(std::numbers::pi * m / 3.0);
  const double c2 = std::cos(2.0 * std::numbers::pi * m / 3.0);
  const double c3 = std::cos(std::numbers::pi * m);
  return 2.0 * (coupling_rate(a) * c1 + coupling_rate(std::sqrt(3.0) * a) * c2 +
                0.5 * coupling_rate(2.0 * a) * c3);
}

cplx ring_mode_energy(int n_d, double spacing, int m) {
  return cplx(0.0, -0.5 * units::gamma0) + ring_dipole_sum(n_d, spacing, m);
}

std::optional<std::string> irrep_name(int n_d, int m) {
  if (n_d != 6) return std::nullopt;
  switch (std::abs(m)) {
    case 0: return "A1";
    case 1: return "E1";
    case 2: return "E2";
    case 3: return "B2";
    default: return std::nullopt;
  }
}

namespace {

// Solve per momentum sector; exact labels, block sizes 1 or 2 for the
// supported oligomers but arbitrary sizes are handled.
std::vector<RawState> sector_solve(const Eigen::MatrixXcd& h, const MomentumBasis& basis,
                                   bool tag_two_dim) {
  std::vector<RawState> out;
  for (const auto& sec : basis.sectors) {
    const int d = static_cast<int>(sec.vectors.cols());
    if (d == 0) continue;
    const Eigen::MatrixXcd block = sec.vectors.adjoint() * h * sec.vectors;
    const EigResult er = eig_dense_complex(block);
    for (int i = 0; i < d; ++i) {
      RawState st;
      st.value = er.values(i);
      st.vector = sec.vectors * er.vectors.col(i);
      st.momentum = sec.m;
      if (tag_two_dim && d == 2) {
        const cplx u0 = er.vectors(0, i), u1 = er.vectors(1, i);
        const double rel = std::arg(u1 / u0);
        st.hybrid_tag = (std::abs(rel) <= std::numbers::pi / 2.0) ? '+' : '-';
      }
      out.push_back(std::move(st));
    }
  }
  return out;
}

std::vector<RawState> full_solve(const Eigen::MatrixXcd& h) {
  const EigResult er = eig_dense_complex(h);
  std::vector<RawState> out;
  for (int i = 0; i < er.values.size(); ++i) {
    out.push_back({er.values(i), er.vectors.col(i), std::nullopt, std::nullopt});
  }
  return out;
}

template <typename State>
std::vector<State> finalize(std::vector<RawState> raw, const Eigen::MatrixXcd& h) {
  std::sort(raw.begin(), raw.end(),
            [](const RawState& a, const RawState& b) { return energy_less(a.value, b.value); });
  std::vector<State> states;
  states.reserve(raw.size());
  for (auto& r : raw) {
    State st;
    st.energy = r.value;
    r.vector.normalize();
    phase_fix(r.vector);
    st.amplitudes = std::move(r.vector);
    st.momentum = r.momentum;
    st.bilinear_self = st.amplitudes.transpose() * st.amplitudes;
    st.near_defective = std::abs(st.bilinear_self) <= kDefectiveTol;
    st.residual = (h * st.amplitudes - st.energy * st.amplitudes).norm();
    if constexpr (std::is_same_v<State, SingleExcState>) {
      st.hybrid_tag = r.hybrid_tag;
    }
    states.push_back(std::move(st));
  }
  return states;
}

bool has_rotation_symmetry(const EmitterArray& g) {
  return g.tag != OligomerTag::Custom && g.n_d >= 2;
}

}  // namespace

std::vector<SingleExcState> solve_single(const EmitterArray& g) {
  const Eigen::MatrixXcd h = single_hamiltonian(g);
  std::vector<RawState> raw;
  if (has_rotation_symmetry(g)) {
    const bool tag = g.tag == OligomerTag::RingPlusCenter || g.tag == OligomerTag::DoubleRing;
    raw = sector_solve(h, momentum_basis(Manifold::Single, g), tag);
  } else {
    raw = full_solve(h);
  }
  auto states = finalize<SingleExcState>(std::move(raw), h);
  for (auto& st : states) {
    if (st.momentum) st.irrep = irrep_name(g.n_d, *st.momentum);
  }
  return states;
}

std::vector<DoubleExcState> solve_double(const EmitterArray& g) {
  if (g.size() < 2) throw std::domain_error("solve_double: need at least 2 emitters");
  const Eigen::MatrixXcd h = double_hamiltonian(g);
  std::vector<RawState> raw;
  if (has_rotation_symmetry(g)) {
    raw = sector_solve(h, momentum_basis(Manifold::Double, g), false);
  } else {
    raw = full_solve(h);
  }
  return finalize<DoubleExcState>(std::move(raw), h);
}

namespace {

// Projection weights of a vector on each sector; returns (best sector, weight).
std::pair<int, double> dominant_sector(const Eigen::VectorXcd& v, const MomentumBasis& basis) {
  int best = 0;
  double best_w = -1.0;
  for (std::size_t s = 0; s < basis.sectors.size(); ++s) {
    const double w = (basis.sectors[s].vectors.adjoint() * v).squaredNorm();
    if (w > best_w) {
      best_w = w;
      best = static_cast<int>(s);
    }
  }
  return {best, best_w};
}

template <typename State>
void classify_impl(std::vector<State>& states, const EmitterArray& g, const MomentumBasis& basis,
                   Manifold manifold) {
  constexpr double kWeightTol = 1e-8;
  const Eigen::MatrixXd rot = rotation_operator(manifold, g);
  const Eigen::MatrixXcd h =
      manifold == Manifold::Single ? single_hamiltonian(g) : double_hamiltonian(g);

  // group indices by (near-)equal energies so degenerate pairs can be
  // re-mixed into rotation eigenvectors
  std::vector<int> order(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return energy_less(states[a].energy, states[b].energy);
  });
  const double scale = h.cwiseAbs().maxCoeff();
  const double deg_tol = 1e-8 * std::max(scale, 1.0);

  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() &&
           std::abs(states[order[j]].energy - states[order[i]].energy) < deg_tol) {
      ++j;
    }
    const int gsize = static_cast<int>(j - i);
    bool needs_remix = false;
    for (std::size_t t = i; t < j; ++t) {
      if (dominant_sector(states[order[t]].amplitudes, basis).second < 1.0 - kWeightTol) {
        needs_remix = true;
      }
    }
    if (needs_remix && gsize > 1) {
      Eigen::MatrixXcd c(states[order[i]].amplitudes.size(), gsize);
      for (int t = 0; t < gsize; ++t) c.col(t) = states[order[i + t]].amplitudes;
      // rotation restricted to the degenerate span, in the states' coordinates
      const Eigen::MatrixXcd gram = c.adjoint() * c;
      const Eigen::MatrixXcd m = gram.ldlt().solve(c.adjoint() * rot * c);
      const EigResult er = eig_dense_complex(m);
      for (int t = 0; t < gsize; ++t) {
        Eigen::VectorXcd v = c * er.vectors.col(t);
        v.normalize();
        phase_fix(v);
        auto& st = states[order[i + t]];
        st.amplitudes = std::move(v);
        st.bilinear_self = st.amplitudes.transpose() * st.amplitudes;
        st.near_defective = std::abs(st.bilinear_self) <= kDefectiveTol;
        st.residual = (h * st.amplitudes - st.energy * st.amplitudes).norm();
      }
    }
    for (std::size_t t = i; t < j; ++t) {
      auto [s, w] = dominant_sector(states[order[t]].amplitudes, basis);
      if (w < 1.0 - kWeightTol) {
        throw std::runtime_error(
            "classify: projection weight split across momentum sectors (broken symmetry)");
      }
      states[order[t]].momentum = basis.sectors[s].m;
    }
    i = j;
  }
}

}  // namespace

void classify(std::vector<SingleExcState>& states, const EmitterArray& g,
              const MomentumBasis& basis) {
  classify_impl(states, g, basis, Manifold::Single);
  for (auto& st : states) {
    if (st.momentum) st.irrep = irrep_name(g.n_d, *st.momentum);
  }
}

void classify(std::vector<DoubleExcState>& states, const EmitterArray& g,
              const MomentumBasis& basis) {
  classify_impl(states, g, basis, Manifold::Double);
}

}  // namespace qring
