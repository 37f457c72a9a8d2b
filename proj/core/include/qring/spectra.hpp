#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "qring/manifolds.hpp"

namespace qring {

/// Eigendecomposition of a dense complex matrix, sorted by (Re, Im).
/// Right eigenvectors are unit-norm; for complex symmetric input the left
/// eigenvectors are transposes of right ones, so only the bilinear
/// self-product v^T v is recorded. |v^T v| <= 1e-8 marks a near-defective
/// (exceptional-point) vector.
struct EigResult {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;        // columns match values
  Eigen::VectorXcd bilinear_self;  // v^T v per column
  std::vector<bool> near_defective;
  double max_residual = 0.0;       // max ||A v - w v||_2 over pairs
};

EigResult eig_dense_complex(const Eigen::MatrixXcd& a);

/// Lattice sum of coupling rates around a ring with momentum phase factors.
cplx ring_dipole_sum(int n_d, double spacing, int m);

/// Closed cosine-grouped form of the six-emitter ring dipole sum.
cplx hexagon_dipole_sum(double spacing, int m);

/// Analytic one-excitation energy of the ring mode with quasi-momentum m.
cplx ring_mode_energy(int n_d, double spacing, int m);

struct SingleExcState {
  cplx energy;                 // detuning - i*gamma/2, in gamma0
  Eigen::VectorXcd amplitudes; // Hermitian-normalized, phase-fixed
  std::optional<int> momentum;
  std::optional<std::string> irrep;     // C6v label for n_d = 6 oligomers
  std::optional<char> hybrid_tag;       // '+' symmetric / '-' antisymmetric
  cplx bilinear_self{0.0, 0.0};
  bool near_defective = false;
  double residual = 0.0;

  double decay_rate() const { return -2.0 * energy.imag(); }
  double detuning() const { return energy.real(); }
};

struct DoubleExcState {
  cplx energy;
  Eigen::VectorXcd amplitudes;  // pair-wedge amplitudes c_{kl}, k < l
  std::optional<int> momentum;
  cplx bilinear_self{0.0, 0.0};
  bool near_defective = false;
  double residual = 0.0;

  double decay_rate() const { return -2.0 * energy.imag(); }
  double detuning() const { return energy.real(); }
};

/// All one-excitation eigenstates. Oligomers with discrete rotation symmetry
/// are solved per momentum sector (labels exact by construction); custom
/// point sets fall back to a full-matrix solve without labels. States are
/// sorted by (Re, Im) of the energy, amplitudes carry the fixed phase
/// convention (largest amplitude real positive).
std::vector<SingleExcState> solve_single(const EmitterArray& g);

/// All two-excitation eigenstates on the pair wedge; same contract.
std::vector<DoubleExcState> solve_double(const EmitterArray& g);

/// Assign momentum labels (and C6v irrep names for n_d = 6) to states solved
/// elsewhere, using projection weights onto the sector bases. Degenerate
/// groups whose members mix sectors are re-diagonalized with the rotation
/// operator so every returned state is a rotation eigenvector. Throws if a
/// state's weight stays split across sectors (broken symmetry).
void classify(std::vector<SingleExcState>& states, const EmitterArray& g,
              const MomentumBasis& basis);
void classify(std::vector<DoubleExcState>& states, const EmitterArray& g,
              const MomentumBasis& basis);

/// C6v irrep name for a one-excitation momentum label on a hexagonal ring.
std::optional<std::string> irrep_name(int n_d, int m);

}  // namespace qring
