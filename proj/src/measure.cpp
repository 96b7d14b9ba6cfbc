#include "statdist/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "statdist/errors.hpp"

namespace statdist {

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

ProbDist::ProbDist(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw DimensionError("probability distribution needs at least one entry");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (!std::isfinite(probs_[i])) {
      throw UsageError("non-finite probability at index " + std::to_string(i));
    }
    if (probs_[i] < -1e-14) {
      throw UsageError("negative probability " + std::to_string(probs_[i]) +
                       " at index " + std::to_string(i));
    }
    probs_[i] = std::max(probs_[i], 0.0);
    sum += probs_[i];
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw UsageError("probabilities sum to " + std::to_string(sum) +
                     ", off 1 by more than 1e-10");
  }
}

double validate_povm(const std::vector<Eigen::VectorXcd>& elements) {
  if (elements.empty()) {
    throw DimensionError("empty measurement");
  }
  const Eigen::Index dim = elements[0].size();
  if (dim < 1) {
    throw DimensionError("zero-dimensional measurement element");
  }
  for (const auto& e : elements) {
    if (e.size() != dim) {
      throw DimensionError("measurement elements have ragged lengths");
    }
  }
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& e : elements) {
    sum += e * e.adjoint();
  }
  sum -= Eigen::MatrixXcd::Identity(dim, dim);
  return sum.cwiseAbs().maxCoeff();
}

Povm::Povm(std::vector<Eigen::VectorXcd> elements)
    : elements_(std::move(elements)) {
  const double defect = validate_povm(elements_);
  if (defect > 1e-10) {
    throw UsageError("measurement completeness defect " +
                     std::to_string(defect) + " exceeds 1e-10");
  }
}

Povm Povm::from_basis(const Eigen::MatrixXcd& unitary) {
  if (unitary.rows() != unitary.cols()) {
    throw DimensionError("basis matrix must be square");
  }
  std::vector<Eigen::VectorXcd> elements;
  elements.reserve(unitary.cols());
  for (Eigen::Index c = 0; c < unitary.cols(); ++c) {
    elements.push_back(unitary.col(c));
  }
  return Povm(std::move(elements));
}

ProbDist outcome_distribution(const PureState& s, const Povm& p) {
  if (p.dim() != s.dim()) {
    throw DimensionError("measurement dimension " + std::to_string(p.dim()) +
                         " does not match state dimension " +
                         std::to_string(s.dim()));
  }
  std::vector<double> probs(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    probs[i] = std::norm(inner_product(p.element(i), s.amps()));
  }
  return ProbDist(std::move(probs));
}

double bhattacharyya_angle(const ProbDist& p, const ProbDist& q) {
  if (p.size() != q.size()) {
    throw DimensionError("distributions have different outcome counts");
  }
  double overlap = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    overlap += std::sqrt(p[i] * q[i]);
  }
  return std::acos(clamp01(overlap));
}

double measurement_distance(const PureState& s1, const PureState& s2,
                            const Povm& p) {
  if (s1.layout() != s2.layout()) {
    throw DimensionError("states live on different layouts");
  }
  if (p.dim() != s1.dim()) {
    throw DimensionError("measurement dimension does not match the states");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    // |<phi_i|s2><s1|phi_i>| = |<phi_i|s2>| * |<phi_i|s1>|
    const Complex a = inner_product(p.element(i), s2.amps());
    const Complex b = inner_product(p.element(i), s1.amps());
    sum += std::abs(a) * std::abs(b);
  }
  return std::acos(clamp01(sum));
}

double global_distance(const PureState& s1, const PureState& s2) {
  if (s1.layout() != s2.layout()) {
    throw DimensionError("states live on different layouts");
  }
  return std::acos(clamp01(std::abs(inner_product(s1, s2))));
}

Eigen::MatrixXcd dyad_matrix(const PureState& s1, const PureState& s2) {
  if (s1.layout() != s2.layout()) {
    throw DimensionError("states live on different layouts");
  }
  if (s1.dim() > 64) {
    throw UsageError("dense dyad matrices are capped at dimension 64");
  }
  return s2.amps() * s1.amps().adjoint();
}

Povm random_povm(int dim, int n_elements, CounterRng& rng) {
  if (dim < 1) {
    throw DimensionError("measurement dimension must be positive");
  }
  if (n_elements != dim && n_elements != 2 * dim) {
    throw UsageError("element count must be dim or 2*dim");
  }
  // Rows of the first `dim` columns of a Haar unitary form an isometry's
  // rows, so completeness holds exactly by construction.
  const Eigen::MatrixXcd u = random_unitary(n_elements, rng);
  std::vector<Eigen::VectorXcd> elements;
  elements.reserve(n_elements);
  for (int r = 0; r < n_elements; ++r) {
    Eigen::VectorXcd e(dim);
    for (int c = 0; c < dim; ++c) {
      e[c] = std::conj(u(r, c));
    }
    elements.push_back(std::move(e));
  }
  return Povm(std::move(elements));
}

}  // namespace statdist
