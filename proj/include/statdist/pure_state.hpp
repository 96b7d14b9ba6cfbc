#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "statdist/layout.hpp"
#include "statdist/rng.hpp"

namespace statdist {

using Complex = std::complex<double>;

// Normalized amplitude vector over a multipartite layout, row-major
// mixed-radix order. Construction rejects |norm - 1| > 1e-10 and silently
// renormalizes smaller defects. Immutable after construction.
class PureState {
 public:
  PureState(PartyLayout layout, Eigen::VectorXcd amps);

  const PartyLayout& layout() const { return layout_; }
  const Eigen::VectorXcd& amps() const { return amps_; }
  long dim() const { return layout_.total_dim(); }

 private:
  PartyLayout layout_;
  Eigen::VectorXcd amps_;
};

// Sum over conj(a_i) * b_i in ascending index order.
Complex inner_product(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);
Complex inner_product(const PureState& a, const PureState& b);

// Haar-distributed state, bit-reproducible for a fixed (layout, seed).
PureState random_pure_state(const PartyLayout& layout, std::uint64_t seed);

// Haar-distributed unitary: QR of a complex Gaussian matrix with the
// R-diagonal phase fix.
Eigen::MatrixXcd random_unitary(int n, CounterRng& rng);

}  // namespace statdist
