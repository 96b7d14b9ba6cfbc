#pragma once

#include <Eigen/Dense>

#include "statdist/measure.hpp"
#include "statdist/pure_state.hpp"
#include "statdist/rng.hpp"

namespace statdist {

// Density matrix: Hermitian (defect <= 1e-12), unit trace (within 1e-10),
// positive semidefinite (eigenvalues >= -1e-10; small negatives are clamped
// where roots are taken).
class MixedState {
 public:
  explicit MixedState(Eigen::MatrixXcd rho);

  static MixedState from_pure(const PureState& s);

  const Eigen::MatrixXcd& rho() const { return rho_; }
  long dim() const { return rho_.rows(); }

 private:
  Eigen::MatrixXcd rho_;
};

// Full-rank (almost surely) density matrix G G^dag / tr(G G^dag) with G a
// seeded complex Gaussian matrix.
MixedState random_density(int dim, CounterRng& rng);

// Hermitian PSD square root via spectral decomposition, eigenvalues clamped
// at zero. Throws UsageError on non-Hermitian input.
Eigen::MatrixXcd principal_sqrt(const Eigen::MatrixXcd& m);

// W1 W2^dag with W_i the principal square roots of the density matrices.
class TransitionOperator {
 public:
  TransitionOperator(const MixedState& r1, const MixedState& r2);

  const Eigen::MatrixXcd& matrix() const { return matrix_; }

 private:
  Eigen::MatrixXcd matrix_;
};

// arccos tr sqrt(sqrt(r1) r2 sqrt(r1)): the global statistical distance
// between mixed states; reduces to arccos|<psi1|psi2>| on pure inputs.
double bures_angle(const MixedState& r1, const MixedState& r2);

// Bhattacharyya angle of the outcome distributions q_k,i = <phi_i|rho_k|phi_i>.
// Never exceeds bures_angle beyond numerical tolerance.
double mixed_measurement_distance(const MixedState& r1, const MixedState& r2,
                                  const Povm& p);

struct TransitionGap {
  double d_equidiag;  // distance from measuring in the W1 W2^dag equi-diag basis
  double d_bures;
  double gap;  // d_bures - d_equidiag, >= 0 up to tolerance
};

// Measures how far the transition-operator equi-diagonalization measurement
// falls short of the global mixed-state distance. Dims capped at 16.
TransitionGap transition_equidiag_gap(const MixedState& r1,
                                      const MixedState& r2);

}  // namespace statdist
