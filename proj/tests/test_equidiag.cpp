#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "statdist/equidiag.hpp"
#include "statdist/rng.hpp"

using statdist::caratheodory_triple;
using statdist::CaratheodoryTriple;
using statdist::Complex;
using statdist::ConvergenceError;
using statdist::CounterRng;
using statdist::DimensionError;
using statdist::equi_diagonalize;
using statdist::EquiDiagResult;
using statdist::InfeasibleTargetError;
using statdist::numerical_range_contains;
using statdist::PairRotation;
using statdist::solve_pair_rotation;
using statdist::UsageError;

namespace {

const double kPi = 3.14159265358979323846;
const double kInvSqrt2 = 0.7071067811865476;
const double kTau2 = 0.35355339059327373;  // 1/(2 sqrt 2)

Eigen::MatrixXcd random_matrix(int n, CounterRng& rng) {
  Eigen::MatrixXcd m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      m(r, c) = rng.next_complex_normal();
    }
  }
  return m;
}

// Independent verification of an equi-diagonalization result.
void check_result(const Eigen::MatrixXcd& m, const EquiDiagResult& res,
                  double tol) {
  const Eigen::Index n = m.rows();
  const Eigen::MatrixXcd t = res.basis.adjoint() * m * res.basis;
  const Complex tau = m.trace() / static_cast<double>(n);
  CHECK(std::abs(res.tau - tau) < 1e-12);
  double resid = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    resid = std::max(resid, std::abs(t(i, i) - tau));
  }
  CHECK(resid <= tol);
  CHECK(res.residual <= tol);
  const Eigen::MatrixXcd defect =
      res.basis.adjoint() * res.basis - Eigen::MatrixXcd::Identity(n, n);
  CHECK(defect.cwiseAbs().maxCoeff() <= 1e-12);
}

}  // namespace

TEST_CASE("diag(1,0) splits symmetrically") {
  Eigen::MatrixXcd m(2, 2);
  m << 1.0, 0.0, 0.0, 0.0;
  const EquiDiagResult res = equi_diagonalize(m, 1e-10);
  CHECK(std::abs(res.tau - Complex(0.5, 0.0)) < 1e-15);
  check_result(m, res, 1e-10);
}

TEST_CASE("already-equal diagonal returns immediately with zero residual") {
  Eigen::MatrixXcd m(2, 2);
  m << 0.0, 1.0, 0.0, 0.0;
  const EquiDiagResult res = equi_diagonalize(m, 1e-10);
  CHECK(res.residual == 0.0);
  CHECK(std::abs(res.tau) == 0.0);
  check_result(m, res, 1e-10);
}

TEST_CASE("the |0> vs (|0>+|1>)/sqrt2 dyad equi-diagonalizes to 1/(2 sqrt 2)") {
  Eigen::MatrixXcd m(2, 2);
  m << kInvSqrt2, 0.0, kInvSqrt2, 0.0;
  const EquiDiagResult res = equi_diagonalize(m, 1e-10);
  CHECK(res.tau.real() == doctest::Approx(kTau2).epsilon(1e-14));
  CHECK(res.tau.imag() == doctest::Approx(0.0));
  const Eigen::MatrixXcd t = res.basis.adjoint() * m * res.basis;
  CHECK(std::abs(t(0, 0) - res.tau) <= 1e-10);
  CHECK(std::abs(t(1, 1) - res.tau) <= 1e-10);
}

TEST_CASE("one-dimensional input is its own equi-diagonalization") {
  Eigen::MatrixXcd m(1, 1);
  m << Complex(0.3, -0.2);
  const EquiDiagResult res = equi_diagonalize(m, 1e-10);
  CHECK(res.residual == 0.0);
  CHECK(res.basis(0, 0) == Complex(1.0, 0.0));
  CHECK(std::abs(res.tau - Complex(0.3, -0.2)) == 0.0);
}

TEST_CASE("input validation") {
  Eigen::MatrixXcd rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(equi_diagonalize(rect, 1e-10), DimensionError);
  Eigen::MatrixXcd m(2, 2);
  m.setZero();
  CHECK_THROWS_AS(equi_diagonalize(m, 0.0), UsageError);
  CHECK_THROWS_AS(equi_diagonalize(m, -1.0), UsageError);
  m(0, 0) = std::nan("");
  CHECK_THROWS_AS(equi_diagonalize(m, 1e-10), UsageError);
}

TEST_CASE("cube-roots-of-unity diagonal forces the triple path") {
  // No pair of {1, w, w^2} has zero on its segment, so the selection must
  // go through a zero-enclosing triple; the matrix is traceless so every
  // diagonal entry must vanish.
  const Complex w(-0.5, 0.8660254037844386);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(0, 0) = Complex(1.0, 0.0);
  m(1, 1) = w;
  m(2, 2) = w * w;
  const EquiDiagResult res = equi_diagonalize(m, 1e-10);
  CHECK(std::abs(res.tau) < 1e-14);
  check_result(m, res, 1e-10);
  const Eigen::MatrixXcd t = res.basis.adjoint() * m * res.basis;
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(t(i, i)) <= 1e-10);
  }
}

TEST_CASE("random matrices across sizes meet the default tolerance") {
  CounterRng rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 15);  // 2..16
    const Eigen::MatrixXcd m = random_matrix(n, rng);
    const double tol = 1e-10 * std::max(1.0, m.cwiseAbs().maxCoeff());
    const EquiDiagResult res = equi_diagonalize(m);
    check_result(m, res, tol);
  }
}

TEST_CASE("traceless inputs get an all-vanishing diagonal") {
  CounterRng rng(777);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + static_cast<int>(rng.next_u64() % 6);
    Eigen::MatrixXcd m = random_matrix(n, rng);
    const Complex shift = m.trace() / static_cast<double>(n);
    m.diagonal().array() -= shift;
    const double tol = 1e-10 * std::max(1.0, m.cwiseAbs().maxCoeff());
    const EquiDiagResult res = equi_diagonalize(m, tol);
    const Eigen::MatrixXcd t = res.basis.adjoint() * m * res.basis;
    for (Eigen::Index i = 0; i < n; ++i) {
      CHECK(std::abs(t(i, i)) <= tol + 1e-14);
    }
  }
}

TEST_CASE("re-running on the transformed matrix converges immediately") {
  CounterRng rng(4242);
  const Eigen::MatrixXcd m = random_matrix(6, rng);
  const EquiDiagResult first = equi_diagonalize(m);
  const Eigen::MatrixXcd t = first.basis.adjoint() * m * first.basis;
  const EquiDiagResult second = equi_diagonalize(t);
  CHECK(second.residual <= 1e-10 * std::max(1.0, t.cwiseAbs().maxCoeff()));
}

TEST_CASE("equi-diagonalization is deterministic") {
  CounterRng rng(5150);
  const Eigen::MatrixXcd m = random_matrix(7, rng);
  const EquiDiagResult a = equi_diagonalize(m);
  const EquiDiagResult b = equi_diagonalize(m);
  CHECK((a.basis.array() == b.basis.array()).all());
  CHECK(a.residual == b.residual);
}

TEST_CASE("rank-one dyad-shaped matrices equi-diagonalize") {
  CounterRng rng(31415);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 7);  // 2..8
    Eigen::VectorXcd x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = rng.next_complex_normal();
      y[i] = rng.next_complex_normal();
    }
    x.normalize();
    y.normalize();
    const Eigen::MatrixXcd m = x * y.adjoint();
    const double tol = 1e-10 * std::max(1.0, m.cwiseAbs().maxCoeff());
    check_result(m, equi_diagonalize(m, tol), tol);
  }
}

TEST_CASE("pair rotation hits the midpoint of diag(1,-1)") {
  Eigen::MatrixXcd b(2, 2);
  b << 1.0, 0.0, 0.0, -1.0;
  const PairRotation rot =
      solve_pair_rotation(b, 0, 1, Complex(0.0, 0.0), 1e-12);
  CHECK(rot.t == doctest::Approx(kPi / 4).epsilon(1e-10));
  const Eigen::VectorXcd u = rot.embed(2);
  CHECK(std::abs((u.adjoint() * b * u)(0)) <= 1e-12);
}

TEST_CASE("pair rotation reaches 0.5 on diag(1,0) at 45 degrees") {
  Eigen::MatrixXcd b(2, 2);
  b << 1.0, 0.0, 0.0, 0.0;
  const PairRotation rot =
      solve_pair_rotation(b, 0, 1, Complex(0.5, 0.0), 1e-12);
  // u^dag B u = cos^2 t, so t = pi/4 regardless of phase.
  CHECK(rot.t == doctest::Approx(kPi / 4).epsilon(1e-10));
  const Eigen::VectorXcd u = rot.embed(2);
  CHECK(std::abs((u.adjoint() * b * u)(0) - Complex(0.5, 0.0)) <= 1e-12);
}

TEST_CASE("pair rotation on the |0> dyad block finds a closed-form root") {
  Eigen::MatrixXcd b(2, 2);
  b << kInvSqrt2, 0.0, kInvSqrt2, 0.0;
  const PairRotation rot =
      solve_pair_rotation(b, 0, 1, Complex(kTau2, 0.0), 1e-12);
  const Eigen::VectorXcd u = rot.embed(2);
  CHECK(std::abs((u.adjoint() * b * u)(0) - Complex(kTau2, 0.0)) <= 1e-12);
  // The only zeros in canonical range: (t, phi) = (3 pi/8, 0) or (pi/8, pi).
  const bool root_a = std::abs(rot.t - 3 * kPi / 8) < 1e-9 &&
                      (rot.phi < 1e-9 || rot.phi > 2 * kPi - 1e-9);
  const bool root_b =
      std::abs(rot.t - kPi / 8) < 1e-9 && std::abs(rot.phi - kPi) < 1e-9;
  CHECK((root_a || root_b));

  // Determinism.
  const PairRotation again =
      solve_pair_rotation(b, 0, 1, Complex(kTau2, 0.0), 1e-12);
  CHECK(again.t == rot.t);
  CHECK(again.phi == rot.phi);
}

TEST_CASE("canonical ranges hold for random feasible targets") {
  CounterRng rng(2718);
  for (int trial = 0; trial < 40; ++trial) {
    Eigen::MatrixXcd b = random_matrix(2, rng);
    // Random convex combination of the diagonal entries is always inside
    // the numerical range.
    const double w = rng.next_double();
    const Complex target = w * b(0, 0) + (1.0 - w) * b(1, 1);
    const PairRotation rot = solve_pair_rotation(b, 0, 1, target, 1e-10);
    CHECK(rot.t >= 0.0);
    CHECK(rot.t <= kPi / 2);
    CHECK(rot.phi >= 0.0);
    CHECK(rot.phi < 2 * kPi);
    const Eigen::VectorXcd u = rot.embed(2);
    CHECK(std::abs(u.norm() - 1.0) < 1e-14);
    CHECK(std::abs((u.adjoint() * b * u)(0) - target) <= 1e-10);
  }
}

TEST_CASE("unreachable targets throw with the residual floor") {
  Eigen::MatrixXcd b(2, 2);
  b << 1.0, 0.0, 0.0, 0.0;  // numerical range = segment [0, 1]
  try {
    solve_pair_rotation(b, 0, 1, Complex(0.5, 0.5), 1e-10);
    FAIL("expected InfeasibleTargetError");
  } catch (const InfeasibleTargetError& e) {
    CHECK(e.best_residual() >= 0.4);
  }
}

TEST_CASE("pair rotation input validation") {
  Eigen::MatrixXcd b(2, 2);
  b.setZero();
  CHECK_THROWS_AS(solve_pair_rotation(b, 0, 0, Complex(0, 0), 1e-10),
                  UsageError);
  CHECK_THROWS_AS(solve_pair_rotation(b, 0, 2, Complex(0, 0), 1e-10),
                  DimensionError);
  CHECK_THROWS_AS(solve_pair_rotation(b, 0, 1, Complex(0, 0), 0.0),
                  UsageError);
}

TEST_CASE("numerical range of a normal matrix is the eigenvalue segment") {
  Eigen::Matrix2cd b;
  b << 1.0, 0.0, 0.0, 0.0;
  CHECK(numerical_range_contains(b, Complex(0.5, 0.0)));
  CHECK(numerical_range_contains(b, Complex(0.0, 0.0)));
  CHECK(numerical_range_contains(b, Complex(1.0, 0.0)));
  CHECK(!numerical_range_contains(b, Complex(0.5, 0.1)));
  CHECK(!numerical_range_contains(b, Complex(1.1, 0.0)));
}

TEST_CASE("numerical range of the nilpotent block is the half-radius disk") {
  Eigen::Matrix2cd b;
  b << 0.0, 1.0, 0.0, 0.0;
  CHECK(numerical_range_contains(b, Complex(0.0, 0.4)));
  CHECK(numerical_range_contains(b, Complex(0.35, -0.35)));
  CHECK(numerical_range_contains(b, Complex(0.0, 0.5)));  // boundary
  CHECK(!numerical_range_contains(b, Complex(0.0, 0.51)));
  CHECK(!numerical_range_contains(b, Complex(0.6, 0.0)));
}

TEST_CASE("numerical range membership matches dense sampling") {
  // Oracle: max over a (t, phi) grid of u^dag B u draws the boundary from
  // inside; points sampled from the grid must be members.
  CounterRng rng(999);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::Matrix2cd b;
    b << rng.next_complex_normal(), rng.next_complex_normal(),
        rng.next_complex_normal(), rng.next_complex_normal();
    for (int kt = 0; kt < 12; ++kt) {
      const double t = (kPi / 2) * kt / 11.0;
      for (int kp = 0; kp < 12; ++kp) {
        const double phi = 2 * kPi * kp / 12.0;
        Eigen::Vector2cd u;
        u << std::cos(t),
            Complex(std::cos(phi), std::sin(phi)) * std::sin(t);
        const Complex z = (u.adjoint() * b * u)(0);
        CHECK(numerical_range_contains(b, z));
      }
    }
  }
}

TEST_CASE("cube roots of unity take equal caratheodory weights") {
  const Complex w(-0.5, 0.8660254037844386);
  const CaratheodoryTriple trip = caratheodory_triple({Complex(1.0, 0.0), w, w * w});
  CHECK(trip.i == 0);
  CHECK(trip.j == 1);
  CHECK(trip.k == 2);
  CHECK(trip.alpha == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(trip.beta == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(trip.gamma == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("collinear deviations take the minimum-norm split") {
  const CaratheodoryTriple trip = caratheodory_triple(
      {Complex(2.0, 0.0), Complex(-1.0, 0.0), Complex(-1.0, 0.0)});
  CHECK(trip.i == 0);
  CHECK(trip.alpha == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(trip.beta == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(trip.gamma == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("random zero-sum sets reproduce zero from the returned weights") {
  CounterRng rng(171717);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 3 + static_cast<int>(rng.next_u64() % 5);
    std::vector<Complex> devs(m);
    Complex sum{0.0, 0.0};
    for (int i = 0; i < m; ++i) {
      devs[i] = rng.next_complex_normal();
      sum += devs[i];
    }
    for (int i = 0; i < m; ++i) devs[i] -= sum / static_cast<double>(m);
    const CaratheodoryTriple trip = caratheodory_triple(devs);
    CHECK(trip.alpha >= 0.0);
    CHECK(trip.beta >= 0.0);
    CHECK(trip.gamma >= 0.0);
    CHECK(trip.alpha + trip.beta + trip.gamma ==
          doctest::Approx(1.0).epsilon(1e-12));
    const Complex combo = trip.alpha * devs[trip.i] +
                          trip.beta * devs[trip.j] +
                          trip.gamma * devs[trip.k];
    CHECK(std::abs(combo) <= 1e-12);
  }
}

TEST_CASE("caratheodory input validation") {
  CHECK_THROWS_AS(caratheodory_triple({Complex(1, 0), Complex(-1, 0)}),
                  UsageError);
  CHECK_THROWS_AS(
      caratheodory_triple({Complex(1, 0), Complex(1, 0), Complex(1, 0)}),
      UsageError);
}
