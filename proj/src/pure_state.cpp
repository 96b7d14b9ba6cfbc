#include "statdist/pure_state.hpp"

#include <cmath>
#include <string>

#include "statdist/errors.hpp"

namespace statdist {

PureState::PureState(PartyLayout layout, Eigen::VectorXcd amps)
    : layout_(std::move(layout)), amps_(std::move(amps)) {
  if (amps_.size() != layout_.total_dim()) {
    throw DimensionError("amplitude count " + std::to_string(amps_.size()) +
                         " does not match layout dimension " +
                         std::to_string(layout_.total_dim()));
  }
  double norm2 = 0.0;
  for (Eigen::Index i = 0; i < amps_.size(); ++i) {
    if (!std::isfinite(amps_[i].real()) || !std::isfinite(amps_[i].imag())) {
      throw UsageError("non-finite amplitude at index " + std::to_string(i));
    }
    norm2 += std::norm(amps_[i]);
  }
  const double norm = std::sqrt(norm2);
  if (std::abs(norm - 1.0) > 1e-10) {
    throw UsageError("state norm " + std::to_string(norm) +
                     " deviates from 1 by more than 1e-10");
  }
  // Correct defects beyond a few ulps; leave smaller ones untouched so that
  // re-ingesting a written state keeps its amplitudes bit for bit.
  if (std::abs(norm - 1.0) > 1e-15) {
    amps_ /= norm;
  }
}

Complex inner_product(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  if (a.size() != b.size()) {
    throw DimensionError("inner product of vectors with sizes " +
                         std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  // Plain ascending-index loop: the summation order is part of the
  // reproducibility contract.
  Complex sum{0.0, 0.0};
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    sum += std::conj(a[i]) * b[i];
  }
  return sum;
}

Complex inner_product(const PureState& a, const PureState& b) {
  if (a.layout() != b.layout()) {
    throw DimensionError("inner product across different layouts");
  }
  return inner_product(a.amps(), b.amps());
}

PureState random_pure_state(const PartyLayout& layout, std::uint64_t seed) {
  CounterRng rng(seed);
  Eigen::VectorXcd amps(layout.total_dim());
  double norm2 = 0.0;
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    amps[i] = rng.next_complex_normal();
    norm2 += std::norm(amps[i]);
  }
  amps /= std::sqrt(norm2);
  return PureState(layout, std::move(amps));
}

Eigen::MatrixXcd random_unitary(int n, CounterRng& rng) {
  if (n < 1) {
    throw DimensionError("unitary dimension must be positive");
  }
  Eigen::MatrixXcd g(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      g(r, c) = rng.next_complex_normal();
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the column phases so the factorization (hence the distribution) is
  // unique: scale by r_ii / |r_ii|^{-1}, mapping R's diagonal to positive
  // reals. This is the standard Haar-measure correction.
  for (int c = 0; c < n; ++c) {
    const Complex d = r(c, c);
    const double mag = std::abs(d);
    if (mag > 0.0) {
      q.col(c) *= d / mag;
    }
  }
  return q;
}

}  // namespace statdist
