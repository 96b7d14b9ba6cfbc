#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "statdist/errors.hpp"

namespace statdist {

using Complex = std::complex<double>;

struct EquiDiagResult {
  // Columns are the orthonormal basis {|phi_i>}; (basis^dag M basis) has all
  // diagonal entries equal to tau = trace(M)/n within `residual`.
  Eigen::MatrixXcd basis;
  Complex tau;
  double residual;
};

// Unitary basis change making every diagonal entry of M equal to
// trace(M)/n. Deterministic: a fixed input yields a fixed basis.
// Throws DimensionError for non-square input, UsageError for non-finite
// entries or tol <= 0, ConvergenceError (carrying the best residual) if the
// requested tolerance cannot be met.
EquiDiagResult equi_diagonalize(const Eigen::MatrixXcd& m, double tol);

// Default tolerance: 1e-10 relative to max(1, largest |entry|).
EquiDiagResult equi_diagonalize(const Eigen::MatrixXcd& m);

// Unit vector cos(t) e_i + e^{i phi} sin(t) e_j, t in [0, pi/2], phi in [0, 2 pi).
struct PairRotation {
  Eigen::Index i = 0;
  Eigen::Index j = 1;
  double t = 0.0;
  double phi = 0.0;

  Complex alpha() const;  // coefficient of e_i
  Complex beta() const;   // coefficient of e_j

  // The vector embedded in dimension n (zeros off the pair).
  Eigen::VectorXcd embed(Eigen::Index n) const;
};

// Solves u^dag B u = target over unit vectors u in span{e_i, e_j} by a
// 64x64 coarse (t, phi) grid followed by damped Gauss-Newton, with grid
// refinement as fallback. The target must lie in the numerical range of the
// 2x2 principal block (see numerical_range_contains); otherwise an
// InfeasibleTargetError carrying the best residual is thrown.
PairRotation solve_pair_rotation(const Eigen::MatrixXcd& b, Eigen::Index i,
                                 Eigen::Index j, Complex target, double tol);

// Membership in the numerical range of a 2x2 matrix via the elliptical
// range theorem: foci at the eigenvalues, minor semi-axis b with
// (2b)^2 = sum |entries|^2 - |l1|^2 - |l2|^2, plus a 1e-12 slack.
bool numerical_range_contains(const Eigen::Matrix2cd& b2, Complex z);

struct CaratheodoryTriple {
  int i;
  int j;
  int k;
  double alpha;
  double beta;
  double gamma;
};

// For deviations summing to zero (within 1e-12 relative to their scale),
// returns the lexicographically smallest index triple whose convex hull
// contains 0, with convex weights reproducing 0 = a d_i + b d_j + c d_k.
// Collinear triples take the minimum-norm weight solution.
CaratheodoryTriple caratheodory_triple(const std::vector<Complex>& deviations);

}  // namespace statdist
