#pragma once

#include <Eigen/Dense>
#include <vector>

#include "statdist/pure_state.hpp"

namespace statdist {

// Rank-1 operator |ket><bra| held as the vector pair; never materialized as
// a dense matrix except through partial_trace_dyad. The sides need not be
// normalized: conditioning on outcomes shrinks them.
struct Dyad {
  Eigen::VectorXcd ket;  // the |psi2> side
  Eigen::VectorXcd bra;  // the |psi1> side
  PartyLayout layout;

  Dyad(Eigen::VectorXcd ket_vec, Eigen::VectorXcd bra_vec, PartyLayout lay);

  // trace(|ket><bra|) = <bra|ket>
  Complex trace() const { return inner_product(bra, ket); }
};

// |psi2><psi1| for a state pair on a common layout.
Dyad dyad_from_pair(const PureState& psi1, const PureState& psi2);

// Reduction onto the `keep` parties: M[r, c] = sum_t ket[(r,t)] conj(bra[(c,t)]),
// t running over the traced parties. keep must be nonempty, strictly
// ascending, in range. trace(M) equals Dyad::trace() for every keep set.
Eigen::MatrixXcd partial_trace_dyad(const Dyad& d, const std::vector<int>& keep);

// Contraction of one party against <outcome| on both sides; the measured
// party is dropped from the layout. Requires at least two parties.
Dyad condition_dyad(const Dyad& d, int party, const Eigen::VectorXcd& outcome);

}  // namespace statdist
