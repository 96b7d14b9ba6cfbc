#include "statdist/mixed.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "statdist/equidiag.hpp"
#include "statdist/errors.hpp"

namespace statdist {

namespace {

double hermiticity_defect(const Eigen::MatrixXcd& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

MixedState::MixedState(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
  if (rho_.rows() == 0 || rho_.rows() != rho_.cols()) {
    throw DimensionError("density matrix must be square and non-empty");
  }
  for (Eigen::Index r = 0; r < rho_.rows(); ++r) {
    for (Eigen::Index c = 0; c < rho_.cols(); ++c) {
      if (!std::isfinite(rho_(r, c).real()) ||
          !std::isfinite(rho_(r, c).imag())) {
        throw UsageError("non-finite density matrix entry");
      }
    }
  }
  const double herm = hermiticity_defect(rho_);
  if (herm > 1e-12) {
    throw UsageError("hermiticity defect " + std::to_string(herm) +
                     " exceeds 1e-12");
  }
  const double trace_off = std::abs(rho_.trace() - Complex(1.0, 0.0));
  if (trace_off > 1e-10) {
    throw UsageError("density matrix trace deviates from 1 by " +
                     std::to_string(trace_off));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      rho_, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -1e-10) {
    throw UsageError("density matrix has negative eigenvalue " +
                     std::to_string(min_eig));
  }
}

MixedState MixedState::from_pure(const PureState& s) {
  return MixedState(s.amps() * s.amps().adjoint());
}

MixedState random_density(int dim, CounterRng& rng) {
  if (dim <= 0) {
    throw DimensionError("density dimension must be positive");
  }
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      g(r, c) = rng.next_complex_normal();
    }
  }
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  // Wishart construction: Hermitian PSD by construction, unit trace after
  // the division; symmetrize away the last bits of roundoff.
  rho = ((rho + rho.adjoint()) / 2.0).eval();
  return MixedState(rho);
}

Eigen::MatrixXcd principal_sqrt(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw DimensionError("matrix square root needs a square matrix");
  }
  const double herm = hermiticity_defect(m);
  if (herm > 1e-12) {
    throw UsageError("hermiticity defect " + std::to_string(herm) +
                     " exceeds 1e-12");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      (m + m.adjoint()) / 2.0);
  Eigen::VectorXd roots = solver.eigenvalues();
  // Eigenvalues within solver roundoff of zero must root to exactly zero:
  // sqrt turns a spurious 1e-16 into a 1e-8 contamination of the root.
  const double floor = 1e-14 * std::max(roots.maxCoeff(), 0.0);
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    roots[i] = roots[i] <= floor ? 0.0 : std::sqrt(roots[i]);
  }
  Eigen::MatrixXcd s = solver.eigenvectors() * roots.asDiagonal() *
                       solver.eigenvectors().adjoint();
  return (s + s.adjoint()) / 2.0;
}

TransitionOperator::TransitionOperator(const MixedState& r1,
                                       const MixedState& r2) {
  if (r1.dim() != r2.dim()) {
    throw DimensionError("transition operator needs equal dimensions");
  }
  matrix_ = principal_sqrt(r1.rho()) * principal_sqrt(r2.rho()).adjoint();
}

double bures_angle(const MixedState& r1, const MixedState& r2) {
  if (r1.dim() != r2.dim()) {
    throw DimensionError("density matrices have different dimensions");
  }
  // tr sqrt(sqrt(r1) r2 sqrt(r1)) equals the nuclear norm of
  // sqrt(r1) sqrt(r2); summing singular values of the unsquared product
  // keeps near-zero directions at roundoff scale instead of sqrt(roundoff).
  const Eigen::MatrixXcd product =
      principal_sqrt(r1.rho()) * principal_sqrt(r2.rho());
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(product);
  return std::acos(clamp01(svd.singularValues().sum()));
}

double mixed_measurement_distance(const MixedState& r1, const MixedState& r2,
                                  const Povm& p) {
  if (r1.dim() != r2.dim()) {
    throw DimensionError("density matrices have different dimensions");
  }
  if (p.dim() != r1.dim()) {
    throw DimensionError("measurement dimension " + std::to_string(p.dim()) +
                         " does not match density dimension " +
                         std::to_string(r1.dim()));
  }
  std::vector<double> q1(p.size()), q2(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Eigen::VectorXcd& e = p.element(i);
    q1[i] = std::max((e.adjoint() * r1.rho() * e).value().real(), 0.0);
    q2[i] = std::max((e.adjoint() * r2.rho() * e).value().real(), 0.0);
  }
  return bhattacharyya_angle(ProbDist(q1), ProbDist(q2));
}

TransitionGap transition_equidiag_gap(const MixedState& r1,
                                      const MixedState& r2) {
  if (r1.dim() != r2.dim()) {
    throw DimensionError("density matrices have different dimensions");
  }
  if (r1.dim() > 16) {
    throw UsageError("transition-operator search is capped at dimension 16");
  }
  const TransitionOperator t(r1, r2);
  const EquiDiagResult eq = equi_diagonalize(t.matrix());
  const Povm basis = Povm::from_basis(eq.basis);
  TransitionGap out;
  out.d_equidiag = mixed_measurement_distance(r1, r2, basis);
  out.d_bures = bures_angle(r1, r2);
  out.gap = out.d_bures - out.d_equidiag;
  return out;
}

}  // namespace statdist
