#pragma once

#include <Eigen/Dense>
#include <vector>

#include "statdist/dyad.hpp"
#include "statdist/pure_state.hpp"

namespace statdist {

// One node of the outcome tree. history holds the outcome indices announced
// so far (in measurement order); basis is the acting party's measurement at
// this node (empty once all parties have measured); stage_amplitude is the
// trace, over the not-yet-measured parties, of the dyad conditioned on
// history. Siblings share the same stage amplitude -- that is the protocol's
// central identity.
struct ProtocolNode {
  std::vector<int> history;
  Eigen::MatrixXcd basis;
  Complex stage_amplitude{0.0, 0.0};
  std::vector<ProtocolNode> children;

  int depth() const { return static_cast<int>(history.size()); }
};

struct LeafRecord {
  std::vector<int> outcome;          // measurement-order indices
  Complex amplitude;                 // B_i = <phi_i|s2><s1|phi_i>
  Eigen::VectorXcd product_vector;   // |phi_i>, party-order tensor factors
  double p1;                         // |<phi_i|s1>|^2
  double p2;                         // |<phi_i|s2>|^2
};

struct Transcript {
  PartyLayout layout;
  std::vector<int> order;  // measurement order, a permutation of parties
  Complex overlap;         // <s1|s2>
  ProtocolNode root;
  std::vector<LeafRecord> leaves;  // canonical outcome order, size total_dim
};

// Sequential protocol: each party in `order` equi-diagonalizes its reduced
// conditioned dyad, announces the outcome, and the next party adapts. The
// full tree is enumerated, zero-probability branches included, so the leaf
// count always equals the total dimension. Equi-diagonalization failures
// propagate as ConvergenceError with the node path in the message.
Transcript run_locc(const PureState& s1, const PureState& s2,
                    const std::vector<int>& order);

// Layout-order measurement sequence.
Transcript run_locc(const PureState& s1, const PureState& s2);

// arccos(sum_i |B_i|); equals global_distance(s1, s2) up to protocol
// tolerance.
double locc_distance(const Transcript& t);

struct CascadeReport {
  double sibling_max;    // max pairwise gap between sibling stage amplitudes
  double parent_max;     // max |D_child * child - parent|
  double telescope_max;  // max |D_total * B_i - overlap| over leaves
};

// Pure re-verification of the cascade identities from the stored transcript.
CascadeReport check_stage_cascade(const Transcript& t);

// Max-entry norm of sum_i |phi_i><phi_i| - I over the leaf product vectors.
double leaf_completeness_defect(const Transcript& t);

enum class Identified { kState1, kState2, kEither };

struct DiscriminationRow {
  std::vector<int> outcome;
  double p1;
  double p2;
  Identified verdict;
};

struct DiscriminationTable {
  std::vector<DiscriminationRow> rows;
  double max_min_probability;  // max over leaves of min(p1, p2)
  Transcript transcript;
};

// Perfect single-copy discrimination of an orthogonal pair: every leaf
// identifies one state (or is unreachable under both). Requires
// |<s1|s2>| <= 1e-10; otherwise a UsageError naming the overlap is thrown.
DiscriminationTable discriminate_orthogonal(const PureState& s1,
                                            const PureState& s2,
                                            const std::vector<int>& order);

}  // namespace statdist
