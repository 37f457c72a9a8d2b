#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "qring/coupling.hpp"
#include "qring/geometry.hpp"

namespace qring {

enum class Manifold { Single, Double };

/// Bijection between the flat index p in [0, n(n-1)/2) and the ordered
/// emitter pair (k, l) with k < l, lexicographic in (k, l).
class PairIndex {
 public:
  explicit PairIndex(int n);
  int n() const { return n_; }
  int size() const { return static_cast<int>(pairs_.size()); }
  int flat(int k, int l) const;  // accepts either order, k != l
  std::pair<int, int> pair(int p) const { return pairs_[p]; }

 private:
  int n_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<int> flat_;  // n*n lookup
};

/// N x N effective Hamiltonian of the one-excitation manifold, in gamma0:
/// diagonal -i/2, off-diagonal g(|r_k - r_l|). Complex symmetric.
Eigen::MatrixXcd single_hamiltonian(const EmitterArray& g);

/// M x M effective Hamiltonian of the two-excitation manifold on the pair
/// wedge (M = N(N-1)/2): diagonal -i, pairs sharing one emitter couple with
/// g(distance between the two differing emitters), disjoint pairs are
/// uncoupled. Complex symmetric. Requires N >= 2.
Eigen::MatrixXcd double_hamiltonian(const EmitterArray& g);

/// Permutation induced on emitter indices by rotating the array by
/// 2 pi / n_d about z: sigma[k] is the emitter whose position the rotated
/// emitter k lands on. Throws std::domain_error if the position set is not
/// invariant under the rotation.
std::vector<int> rotation_permutation(const EmitterArray& g);

/// Permutation matrix R of the rotation on the requested manifold:
/// single: (Rc)_k = c_{sigma(k)}; double: induced pair action, re-sorted into
/// the k < l wedge with coefficient +1 (symmetric pair amplitudes).
Eigen::MatrixXd rotation_operator(Manifold manifold, const EmitterArray& g);

/// Quasi-momentum values of the first Brillouin zone, listed as
/// 0, 1, -1, 2, -2, ...; for even n_d the boundary value is +n_d/2.
std::vector<int> brillouin_zone(int n_d);

/// Fold an integer momentum into the first Brillouin zone.
int fold_momentum(int m, int n_d);

struct MomentumSector {
  int m = 0;
  Eigen::MatrixXcd vectors;  // dim x sector_dim, orthonormal columns
};

/// Orthonormal quasi-momentum sector bases built from the orbits of the
/// rotation permutation. Each basis vector is an eigenvector of the rotation
/// operator with eigenvalue exp(i m 2 pi / n_d); the Hamiltonian is block
/// diagonal across sectors.
struct MomentumBasis {
  Manifold manifold = Manifold::Single;
  int n_d = 0;
  int dim = 0;
  std::vector<MomentumSector> sectors;  // ordered as brillouin_zone(n_d)

  const MomentumSector& sector(int m) const;
};

MomentumBasis momentum_basis(Manifold manifold, const EmitterArray& g);

/// Number of two-excitation eigenstates with quasi-momentum m supported by
/// n_r concentric rings of n_d emitters each.
int count_double_states(int n_d, int n_r, int m);

}  // namespace qring
