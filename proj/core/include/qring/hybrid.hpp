#pragma once

#include <array>
#include <Eigen/Dense>

#include "qring/spectra.hpp"

namespace qring {

/// Two coupled resonances decaying into the same continuum. eps_plus/eps_minus
/// follow the fixed square-root branch (non-negative real part, ties to
/// non-negative imaginary part); the physical symmetric/antisymmetric
/// assignment is made from the relative phase of the mode amplitudes.
struct TwoModeModel {
  cplx eps_a, eps_b, kappa;
  cplx eps_plus, eps_minus;
  cplx eta_plus, eta_minus;
  Eigen::Vector2cd vec_plus, vec_minus;  // normalized (c_a, c_b)

  /// '+': components in phase within pi/2 (symmetric), '-': antisymmetric.
  char tag_of_plus_root() const;
  cplx symmetric_energy() const;
  cplx antisymmetric_energy() const;
  Eigen::Vector2cd symmetric_vector() const;
  Eigen::Vector2cd antisymmetric_vector() const;
};

TwoModeModel hybridize(cplx eps_a, cplx eps_b, cplx kappa);

/// Ring of n_d emitters plus central emitter, m = 0 sector:
/// eps_a = center, eps_b = uniform ring mode, kappa = sqrt(n_d) g(R).
/// Exactly reproduces the two m = 0 eigenvalues of the full array.
TwoModeModel ring_center_model(int n_d, double spacing);

/// Two concentric co-aligned rings, momentum sector m: ring mode energies
/// from the analytic lattice sums, kappa from the inter-ring coupling sum.
/// Exactly reproduces the two m-sector eigenvalues of the full array.
TwoModeModel ring_ring_model(int n_d, double spacing, double ratio, int m);

/// The four m = 3 two-excitation eigenstates of the hexagonal double ring
/// built from antisymmetrized products of the m = +-1 and m = +-2 hybrid
/// single-excitation states. Indexed by the hybrid tags (s1, s2) of the
/// m = 1 and m = 2 constituents, in the order --, -+, +-, ++.
struct ProductStateSet {
  std::array<DoubleExcState, 4> states;
  std::array<std::pair<char, char>, 4> tags;
  std::array<cplx, 4> constituent_sum;  // eps1(s1) + eps2(s2)
  EmitterArray geometry;
  int index_of(char s1, char s2) const;
};

ProductStateSet b1_product_states(double spacing, double ratio, bool verify_residual = true);

/// Expansion of a two-excitation eigenstate over products of one-excitation
/// eigenstates: coefficients v such that the embedded pair amplitude tensor
/// equals sum_ij v_ij psi_i (x) psi_j. reconstructed_energy recombines v with
/// the single energies through the exact biorthogonal bookkeeping;
/// energy_hermitian_weighted is the plain |v|^2-weighted sum, whose deviation
/// (like sum_abs2 - 1) measures non-orthogonality of the single basis.
struct DecompositionResult {
  Eigen::MatrixXcd v;           // N x N, indexed like `singles`
  std::vector<int> momentum;    // momentum label per index
  cplx reconstructed_energy;
  cplx direct_energy;
  cplx energy_hermitian_weighted;
  double sum_abs2 = 0.0;        // sum |v|^2 (1 for an orthogonal expansion)
  double selection_leakage = 0.0;  // max |v| with m1 + m2 != m (mod n_d)
};

DecompositionResult decompose_double_state(const DoubleExcState& state,
                                           const std::vector<SingleExcState>& singles,
                                           const EmitterArray& g);

}  // namespace qring
