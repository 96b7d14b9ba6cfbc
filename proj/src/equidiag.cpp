#include "statdist/equidiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "statdist/defaults.hpp"

namespace statdist {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// u(t, phi)^dag B u(t, phi) restricted to the (i, j) block with entries
// a = B_ii, b = B_ij, c = B_ji, d = B_jj.
Complex pair_value(Complex a, Complex b, Complex c, Complex d, double t,
                   double phi) {
  const double ct = std::cos(t);
  const double st = std::sin(t);
  const Complex e(std::cos(phi), std::sin(phi));
  return ct * ct * a + st * st * d + ct * st * (e * b + std::conj(e) * c);
}

}  // namespace

Complex PairRotation::alpha() const { return Complex(std::cos(t), 0.0); }

Complex PairRotation::beta() const {
  const double st = std::sin(t);
  return Complex(std::cos(phi) * st, std::sin(phi) * st);
}

Eigen::VectorXcd PairRotation::embed(Eigen::Index n) const {
  if (i < 0 || i >= n || j < 0 || j >= n) {
    throw DimensionError("pair indices out of range for embedding dimension " +
                         std::to_string(n));
  }
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(n);
  u[i] = alpha();
  u[j] = beta();
  return u;
}

bool numerical_range_contains(const Eigen::Matrix2cd& b2, Complex z) {
  // Elliptical range theorem: the numerical range of a 2x2 matrix is the
  // (possibly degenerate) filled ellipse with foci at the eigenvalues and
  // minor semi-axis b, (2b)^2 = sum |entries|^2 - |l1|^2 - |l2|^2.
  const Complex tr = b2(0, 0) + b2(1, 1);
  const Complex det = b2(0, 0) * b2(1, 1) - b2(0, 1) * b2(1, 0);
  const Complex half = tr / 2.0;
  const Complex disc = std::sqrt(half * half - det);
  const Complex l1 = half + disc;
  const Complex l2 = half - disc;
  const double frob2 = std::norm(b2(0, 0)) + std::norm(b2(0, 1)) +
                       std::norm(b2(1, 0)) + std::norm(b2(1, 1));
  const double four_b2 =
      std::max(0.0, frob2 - std::norm(l1) - std::norm(l2));
  const double b = std::sqrt(four_b2) / 2.0;
  const double focal2 = std::norm(l1 - l2) / 4.0;
  const double major = 2.0 * std::sqrt(b * b + focal2);
  return std::abs(z - l1) + std::abs(z - l2) <= major + 1e-12;
}

PairRotation solve_pair_rotation(const Eigen::MatrixXcd& bmat, Eigen::Index i,
                                 Eigen::Index j, Complex target, double tol) {
  if (bmat.rows() != bmat.cols()) {
    throw DimensionError("pair rotation needs a square matrix");
  }
  const Eigen::Index n = bmat.rows();
  if (i < 0 || i >= n || j < 0 || j >= n) {
    throw DimensionError("pair indices out of range");
  }
  if (i == j) {
    throw UsageError("pair rotation needs two distinct indices");
  }
  if (!(tol > 0.0)) {
    throw UsageError("tolerance must be positive");
  }
  const Complex a = bmat(i, i);
  const Complex b = bmat(i, j);
  const Complex c = bmat(j, i);
  const Complex d = bmat(j, j);
  if (!finite(a) || !finite(b) || !finite(c) || !finite(d) || !finite(target)) {
    throw UsageError("non-finite pair-rotation input");
  }

  const double scale = std::max(
      {1.0, std::abs(a), std::abs(b), std::abs(c), std::abs(d),
       std::abs(target)});
  const double floor_stop = 2.5e-16 * scale;

  const auto resid_at = [&](double t, double phi) {
    return pair_value(a, b, c, d, t, phi) - target;
  };

  // Coarse scan: 64 x 64 over t in [0, pi/2], phi in [0, 2 pi).
  double best_t = 0.0, best_phi = 0.0;
  double best_resid = std::abs(resid_at(0.0, 0.0));
  for (int kt = 0; kt < 64; ++kt) {
    const double t = (kPi / 2.0) * kt / 63.0;
    for (int kp = 0; kp < 64; ++kp) {
      const double phi = (2.0 * kPi) * kp / 64.0;
      const double r = std::abs(resid_at(t, phi));
      if (r < best_resid) {
        best_resid = r;
        best_t = t;
        best_phi = phi;
      }
    }
  }

  // Damped Gauss-Newton polish from the incumbent, with local grid
  // refinement as the fallback whenever a polish round fails to improve.
  double box_t = (kPi / 2.0) / 63.0;
  double box_phi = (2.0 * kPi) / 64.0;
  int stall = 0;
  for (int round = 0; round < 200 && best_resid > floor_stop && stall < 5;
       ++round) {
    bool improved = false;

    double t = best_t, phi = best_phi;
    Complex r = resid_at(t, phi);
    double rn = std::abs(r);
    double lambda = 1e-8;
    for (int step = 0; step < 20; ++step) {
      const double s2 = std::sin(2.0 * t);
      const double c2 = std::cos(2.0 * t);
      const Complex e(std::cos(phi), std::sin(phi));
      const Complex cross = e * b + std::conj(e) * c;
      const Complex dg_dt = s2 * (d - a) + c2 * cross;
      const Complex dg_dphi =
          0.5 * s2 * Complex(0.0, 1.0) * (e * b - std::conj(e) * c);
      // Two real equations in (t, phi); normal equations with damping.
      const double j11 = dg_dt.real(), j12 = dg_dphi.real();
      const double j21 = dg_dt.imag(), j22 = dg_dphi.imag();
      const double a11 = j11 * j11 + j21 * j21 + lambda;
      const double a12 = j11 * j12 + j21 * j22;
      const double a22 = j12 * j12 + j22 * j22 + lambda;
      const double g1 = -(j11 * r.real() + j21 * r.imag());
      const double g2 = -(j12 * r.real() + j22 * r.imag());
      const double det = a11 * a22 - a12 * a12;
      if (!(std::abs(det) > 1e-300)) {
        lambda = std::min(lambda * 100.0, 1e8);
        continue;
      }
      const double dt = (g1 * a22 - g2 * a12) / det;
      const double dphi = (g2 * a11 - g1 * a12) / det;
      const Complex r_next = resid_at(t + dt, phi + dphi);
      const double rn_next = std::abs(r_next);
      if (rn_next < rn) {
        t += dt;
        phi += dphi;
        r = r_next;
        rn = rn_next;
        lambda = std::max(lambda / 10.0, 1e-12);
        if (rn < best_resid) {
          best_resid = rn;
          best_t = t;
          best_phi = phi;
          improved = true;
        }
        if (rn <= floor_stop) break;
      } else {
        lambda = std::min(lambda * 10.0, 1e8);
        if (lambda >= 1e8) break;
      }
    }

    if (!improved) {
      // Shrinking 17 x 17 box around the incumbent.
      for (int kt = -8; kt <= 8; ++kt) {
        for (int kp = -8; kp <= 8; ++kp) {
          const double t2 = best_t + box_t * kt / 8.0;
          const double phi2 = best_phi + box_phi * kp / 8.0;
          const double rg = std::abs(resid_at(t2, phi2));
          if (rg < best_resid) {
            best_resid = rg;
            best_t = t2;
            best_phi = phi2;
            improved = true;
          }
        }
      }
      box_t *= 0.5;
      box_phi *= 0.5;
    }
    stall = improved ? 0 : stall + 1;
  }

  // Canonical parameter ranges. u is defined up to a global phase, so
  // t -> 2 pi - t and t -> pi - t fold into phi shifts of pi.
  double t = std::fmod(best_t, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  double phi = best_phi;
  if (t > kPi) {
    t = 2.0 * kPi - t;
    phi += kPi;
  }
  if (t > kPi / 2.0) {
    t = kPi - t;
    phi += kPi;
  }
  phi = std::fmod(phi, 2.0 * kPi);
  if (phi < 0.0) phi += 2.0 * kPi;
  if (t == 0.0) phi = 0.0;  // e_i: phase-free

  PairRotation rot;
  rot.i = i;
  rot.j = j;
  rot.t = t;
  rot.phi = phi;
  const double final_resid = std::abs(resid_at(t, phi));
  if (final_resid > tol) {
    throw InfeasibleTargetError(
        "pair-rotation target unreachable within tolerance; best residual " +
            std::to_string(final_resid),
        final_resid);
  }
  return rot;
}

namespace {

// Convex weights over a candidate triple via the minimum-norm solution of
// [Re d; Im d; 1 1 1] w = (0, 0, 1); minimum-norm both resolves collinear
// degeneracy deterministically and reproduces the unique solution when the
// triangle is non-degenerate.
struct TripleFit {
  double w[3];
  double resid;
  bool in_range;
};

TripleFit fit_triple(Complex di, Complex dj, Complex dk) {
  Eigen::Matrix3d a;
  a << di.real(), dj.real(), dk.real(),
      di.imag(), dj.imag(), dk.imag(),
      1.0, 1.0, 1.0;
  Eigen::Vector3d rhs(0.0, 0.0, 1.0);
  Eigen::Vector3d w = a.completeOrthogonalDecomposition().solve(rhs);
  TripleFit fit;
  fit.in_range = w.minCoeff() >= -1e-12 && w.maxCoeff() <= 1.0 + 1e-12;
  double sum = 0.0;
  for (int l = 0; l < 3; ++l) {
    fit.w[l] = std::max(w[l], 0.0);
    sum += fit.w[l];
  }
  if (sum > 0.0) {
    for (double& x : fit.w) x /= sum;
  } else {
    fit.w[0] = fit.w[1] = fit.w[2] = 1.0 / 3.0;
    fit.in_range = false;
  }
  fit.resid = std::abs(fit.w[0] * di + fit.w[1] * dj + fit.w[2] * dk);
  return fit;
}

CaratheodoryTriple caratheodory_impl(const std::vector<Complex>& deviations) {
  const int m = static_cast<int>(deviations.size());
  double dev_scale = 0.0;
  for (Complex d : deviations) dev_scale = std::max(dev_scale, std::abs(d));
  const double accept = 1e-12 * std::max(1.0, dev_scale);

  CaratheodoryTriple best{0, 1, 2, 1.0 / 3, 1.0 / 3, 1.0 / 3};
  double best_resid = std::numeric_limits<double>::infinity();
  bool have_in_range = false;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      for (int k = j + 1; k < m; ++k) {
        const TripleFit fit =
            fit_triple(deviations[i], deviations[j], deviations[k]);
        if (!fit.in_range) continue;
        if (fit.resid <= accept) {
          return {i, j, k, fit.w[0], fit.w[1], fit.w[2]};
        }
        if (fit.resid < best_resid) {
          best_resid = fit.resid;
          best = {i, j, k, fit.w[0], fit.w[1], fit.w[2]};
          have_in_range = true;
        }
      }
    }
  }
  if (!have_in_range) {
    // No triple encloses zero even approximately; return the best clamped
    // fit so the caller's residual verification reports the truth.
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        for (int k = j + 1; k < m; ++k) {
          const TripleFit fit =
              fit_triple(deviations[i], deviations[j], deviations[k]);
          if (fit.resid < best_resid) {
            best_resid = fit.resid;
            best = {i, j, k, fit.w[0], fit.w[1], fit.w[2]};
          }
        }
      }
    }
  }
  return best;
}

}  // namespace

CaratheodoryTriple caratheodory_triple(const std::vector<Complex>& deviations) {
  if (deviations.size() < 3) {
    throw UsageError("need at least three deviations");
  }
  Complex sum{0.0, 0.0};
  double dev_scale = 0.0;
  for (Complex d : deviations) {
    if (!finite(d)) throw UsageError("non-finite deviation");
    sum += d;
    dev_scale = std::max(dev_scale, std::abs(d));
  }
  if (std::abs(sum) > 1e-12 * std::max(1.0, dev_scale)) {
    throw UsageError("deviations do not sum to zero");
  }
  return caratheodory_impl(deviations);
}

namespace {

// In-place B <- E^dag B E and U <- U E, where E is the identity outside the
// (i, j) plane and the 2x2 block [[cos t, -sin t], [e^{i phi} sin t,
// e^{i phi} cos t]] inside it (first column = the rotation's unit vector).
void apply_rotation(Eigen::MatrixXcd& bmat, Eigen::MatrixXcd& u,
                    const PairRotation& rot) {
  const double c = std::cos(rot.t);
  const double s = std::sin(rot.t);
  const Complex e(std::cos(rot.phi), std::sin(rot.phi));
  const Eigen::Index i = rot.i, j = rot.j;

  const Eigen::VectorXcd bci = bmat.col(i), bcj = bmat.col(j);
  bmat.col(i) = c * bci + (s * e) * bcj;
  bmat.col(j) = (-s) * bci + (c * e) * bcj;
  const Eigen::RowVectorXcd bri = bmat.row(i), brj = bmat.row(j);
  bmat.row(i) = c * bri + (s * std::conj(e)) * brj;
  bmat.row(j) = (-s) * bri + (c * std::conj(e)) * brj;

  const Eigen::VectorXcd uci = u.col(i), ucj = u.col(j);
  u.col(i) = c * uci + (s * e) * ucj;
  u.col(j) = (-s) * uci + (c * e) * ucj;
}

}  // namespace

EquiDiagResult equi_diagonalize(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols()) {
    throw DimensionError("equi-diagonalization needs a square matrix");
  }
  const Eigen::Index n = m.rows();
  if (n < 1) {
    throw DimensionError("equi-diagonalization needs at least one dimension");
  }
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      if (!finite(m(r, c))) throw UsageError("non-finite matrix entry");
    }
  }
  if (!(tol > 0.0)) {
    throw UsageError("tolerance must be positive");
  }

  const Complex tau = m.trace() / static_cast<double>(n);
  if (n == 1) {
    return {Eigen::MatrixXcd::Identity(1, 1), tau, 0.0};
  }

  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double zeta = 1e-15 * scale;  // freeze threshold on deviations
  const double solve_tol = std::min(1e-11 * scale, tol);

  Eigen::MatrixXcd bmat = m;
  bmat.diagonal().array() -= tau;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
  double best_resid = std::numeric_limits<double>::infinity();

  for (int pass = 0; pass < 2; ++pass) {
    std::vector<Eigen::Index> active;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(bmat(i, i)) > zeta) active.push_back(i);
    }
    long rotations = 0;
    const long rotation_cap = 4 * n + 8;

    while (true) {
      // Freeze every deviation already at the common value.
      active.erase(std::remove_if(active.begin(), active.end(),
                                  [&](Eigen::Index i) {
                                    return std::abs(bmat(i, i)) <= zeta;
                                  }),
                   active.end());
      if (active.size() <= 1 || rotations > rotation_cap) break;

      if (active.size() == 2) {
        // Last pair: move both entries to their midpoint (always inside the
        // block's numerical range); the midpoint is the frozen drift / 2,
        // i.e. already at the common value up to roundoff.
        const Eigen::Index i = active[0], j = active[1];
        const Complex midpoint = (bmat(i, i) + bmat(j, j)) / 2.0;
        const PairRotation rot =
            solve_pair_rotation(bmat, i, j, midpoint, solve_tol);
        apply_rotation(bmat, u, rot);
        ++rotations;
        break;
      }

      // Prefer zeroing one entry of a pair whose 2x2 block can reach zero,
      // scanning pairs through the largest deviation first.
      Eigen::Index target_i = -1, target_j = -1;
      Eigen::Index istar = active[0];
      for (Eigen::Index i : active) {
        if (std::abs(bmat(i, i)) > std::abs(bmat(istar, istar))) istar = i;
      }
      for (Eigen::Index other : active) {
        if (other == istar) continue;
        const Eigen::Index p = std::min(istar, other);
        const Eigen::Index q = std::max(istar, other);
        Eigen::Matrix2cd block;
        block << bmat(p, p), bmat(p, q), bmat(q, p), bmat(q, q);
        if (numerical_range_contains(block, Complex(0.0, 0.0))) {
          target_i = p;
          target_j = q;
          break;
        }
      }
      if (target_i < 0) {
        for (std::size_t ai = 0; ai < active.size() && target_i < 0; ++ai) {
          for (std::size_t aj = ai + 1; aj < active.size(); ++aj) {
            const Eigen::Index p = active[ai], q = active[aj];
            if (p == istar || q == istar) continue;
            Eigen::Matrix2cd block;
            block << bmat(p, p), bmat(p, q), bmat(q, p), bmat(q, q);
            if (numerical_range_contains(block, Complex(0.0, 0.0))) {
              target_i = p;
              target_j = q;
              break;
            }
          }
        }
      }

      if (target_i >= 0) {
        const PairRotation rot = solve_pair_rotation(
            bmat, target_i, target_j, Complex(0.0, 0.0), solve_tol);
        apply_rotation(bmat, u, rot);
        ++rotations;
        active.erase(std::find(active.begin(), active.end(), target_i));
        continue;
      }

      // No pair reaches zero: take a zero-enclosing triple (i, j, k), move
      // entry i onto the segment between entries i and j at the point p with
      // (alpha+beta) p + gamma d_k = 0, then zero entry i against entry k.
      std::vector<Complex> devs;
      devs.reserve(active.size());
      for (Eigen::Index i : active) devs.push_back(bmat(i, i));
      const CaratheodoryTriple trip = caratheodory_impl(devs);
      Eigen::Index ti = active[trip.i];
      Eigen::Index tj = active[trip.j];
      Eigen::Index tk = active[trip.k];
      double wa = trip.alpha, wb = trip.beta, wc = trip.gamma;
      if (wa + wb < 1e-14) {
        // Degenerate split; swap the roles of j and k.
        std::swap(tj, tk);
        std::swap(wb, wc);
      }
      const Complex p_target =
          (wa * bmat(ti, ti) + wb * bmat(tj, tj)) / (wa + wb);
      // Entry ti receives the rotation value, so ti is passed first.
      const PairRotation rot1 =
          solve_pair_rotation(bmat, ti, tj, p_target, solve_tol);
      apply_rotation(bmat, u, rot1);
      ++rotations;
      const PairRotation rot2 =
          solve_pair_rotation(bmat, ti, tk, Complex(0.0, 0.0), solve_tol);
      apply_rotation(bmat, u, rot2);
      ++rotations;
      active.erase(std::find(active.begin(), active.end(), ti));
    }

    // Verify from scratch against the original matrix.
    const Eigen::MatrixXcd t = u.adjoint() * m * u;
    double resid = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      resid = std::max(resid, std::abs(t(i, i) - tau));
    }
    best_resid = std::min(best_resid, resid);
    if (resid <= tol) {
      return {u, tau, resid};
    }
    bmat = t;
    bmat.diagonal().array() -= tau;
  }

  throw ConvergenceError(
      "equi-diagonalization stalled; best residual " +
          std::to_string(best_resid),
      best_resid);
}

EquiDiagResult equi_diagonalize(const Eigen::MatrixXcd& m) {
  const double scale =
      m.size() > 0 ? std::max(1.0, m.cwiseAbs().maxCoeff()) : 1.0;
  return equi_diagonalize(m, kTolEquidiagRel * scale);
}

}  // namespace statdist
