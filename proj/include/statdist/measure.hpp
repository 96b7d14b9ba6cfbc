#pragma once

#include <Eigen/Dense>
#include <vector>

#include "statdist/pure_state.hpp"
#include "statdist/rng.hpp"

namespace statdist {

// Outcome probabilities: non-negative (entries above -1e-14 are clamped to
// zero) and summing to 1 within 1e-10.
class ProbDist {
 public:
  explicit ProbDist(std::vector<double> probs);

  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

 private:
  std::vector<double> probs_;
};

// Max-entry norm of sum_i |phi_i><phi_i| - I.
double validate_povm(const std::vector<Eigen::VectorXcd>& elements);

// Rank-1 POVM {|phi_i>}, possibly non-normalized elements; construction
// rejects a completeness defect above 1e-10.
class Povm {
 public:
  explicit Povm(std::vector<Eigen::VectorXcd> elements);

  // Orthonormal basis measurement from unitary columns.
  static Povm from_basis(const Eigen::MatrixXcd& unitary);

  std::size_t size() const { return elements_.size(); }
  long dim() const { return elements_.empty() ? 0 : elements_[0].size(); }
  const Eigen::VectorXcd& element(std::size_t i) const { return elements_[i]; }
  const std::vector<Eigen::VectorXcd>& elements() const { return elements_; }

 private:
  std::vector<Eigen::VectorXcd> elements_;
};

// probs_j = |<phi_j|s>|^2.
ProbDist outcome_distribution(const PureState& s, const Povm& p);

// arccos of the clamped Bhattacharyya overlap sum_i sqrt(p_i q_i), radians
// in [0, pi/2].
double bhattacharyya_angle(const ProbDist& p, const ProbDist& q);

// Measurement-dependent distance
// arccos(sum_i |<phi_i|s2><s1|phi_i>|), never above global_distance.
double measurement_distance(const PureState& s1, const PureState& s2,
                            const Povm& p);

// arccos |<s1|s2>|: the angle between the states, and the exact optimum of
// measurement_distance over all rank-1 POVMs.
double global_distance(const PureState& s1, const PureState& s2);

// The dense D x D matrix of |s2><s1|, capped at D <= 64; feeds
// equi_diagonalize.
Eigen::MatrixXcd dyad_matrix(const PureState& s1, const PureState& s2);

// Rank-1 POVM with n_elements in {dim, 2*dim}: rows of the first `dim`
// columns of a Haar unitary, so completeness is exact by construction.
Povm random_povm(int dim, int n_elements, CounterRng& rng);

}  // namespace statdist
