#include "statdist/locc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "statdist/equidiag.hpp"
#include "statdist/errors.hpp"
#include "statdist/measure.hpp"

namespace statdist {

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

std::string path_string(const std::vector<int>& history) {
  std::string s;
  for (std::size_t k = 0; k < history.size(); ++k) {
    if (k > 0) s += '-';
    s += std::to_string(history[k]);
  }
  return s.empty() ? std::string("root") : s;
}

struct TreeBuilder {
  const PureState& s1;
  const PureState& s2;
  const std::vector<int>& order;
  // Basis vector each original party ended up with on the current path.
  std::vector<Eigen::VectorXcd> chosen;
  std::vector<LeafRecord>* leaves;

  ProtocolNode build(const Dyad& d, std::vector<int>& remaining,
                     std::vector<int>& history) {
    ProtocolNode node;
    node.history = history;
    node.stage_amplitude = d.trace();

    const int depth = static_cast<int>(history.size());
    const int acting = order[depth];
    const auto pos = std::find(remaining.begin(), remaining.end(), acting);
    const int local = static_cast<int>(pos - remaining.begin());
    const int d_act = d.layout.dim(local);

    const Eigen::MatrixXcd reduced = partial_trace_dyad(d, {local});
    EquiDiagResult eq;
    try {
      eq = equi_diagonalize(reduced);
    } catch (const ConvergenceError& e) {
      throw ConvergenceError("equi-diagonalization failed at node " +
                                 path_string(history) + ": " + e.what(),
                             e.best_residual());
    }
    node.basis = eq.basis;

    const bool last_party = d.layout.parties() == 1;
    for (int j = 0; j < d_act; ++j) {
      chosen[acting] = eq.basis.col(j);
      history.push_back(j);
      if (last_party) {
        ProtocolNode leaf_node;
        leaf_node.history = history;
        // Scalar contraction of the single remaining party.
        const Complex ket_part = inner_product(eq.basis.col(j), d.ket);
        const Complex bra_part = inner_product(eq.basis.col(j), d.bra);
        leaf_node.stage_amplitude = ket_part * std::conj(bra_part);
        node.children.push_back(std::move(leaf_node));
        emit_leaf(history);
      } else {
        std::vector<int> rest = remaining;
        rest.erase(rest.begin() + local);
        const Dyad child = condition_dyad(d, local, eq.basis.col(j));
        node.children.push_back(build(child, rest, history));
      }
      history.pop_back();
    }
    return node;
  }

  void emit_leaf(const std::vector<int>& history) {
    const PartyLayout& layout = s1.layout();
    const long dim = layout.total_dim();
    Eigen::VectorXcd product(dim);
    for (long f = 0; f < dim; ++f) {
      const std::vector<int> digits = layout.unflatten(f);
      Complex amp{1.0, 0.0};
      for (int p = 0; p < layout.parties(); ++p) {
        amp *= chosen[p][digits[p]];
      }
      product[f] = amp;
    }
    LeafRecord leaf;
    leaf.outcome = history;
    const Complex to_s1 = inner_product(product, s1.amps());
    const Complex to_s2 = inner_product(product, s2.amps());
    leaf.amplitude = to_s2 * std::conj(to_s1);  // <phi|s2><s1|phi>
    leaf.product_vector = std::move(product);
    leaf.p1 = std::norm(to_s1);
    leaf.p2 = std::norm(to_s2);
    leaves->push_back(std::move(leaf));
  }
};

}  // namespace

Transcript run_locc(const PureState& s1, const PureState& s2,
                    const std::vector<int>& order) {
  if (s1.layout() != s2.layout()) {
    throw DimensionError("states live on different layouts");
  }
  const PartyLayout& layout = s1.layout();
  const int parties = layout.parties();
  if (static_cast<int>(order.size()) != parties) {
    throw UsageError("measurement order must name every party exactly once");
  }
  std::vector<bool> seen(parties, false);
  for (int p : order) {
    if (p < 0 || p >= parties || seen[p]) {
      throw UsageError("measurement order is not a permutation of parties");
    }
    seen[p] = true;
  }

  Transcript t{layout, order, inner_product(s1, s2), ProtocolNode{}, {}};
  t.leaves.reserve(layout.total_dim());

  TreeBuilder builder{s1, s2, order,
                      std::vector<Eigen::VectorXcd>(parties), &t.leaves};
  std::vector<int> remaining(parties);
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<int> history;
  t.root = builder.build(dyad_from_pair(s1, s2), remaining, history);
  return t;
}

Transcript run_locc(const PureState& s1, const PureState& s2) {
  std::vector<int> order(s1.layout().parties());
  std::iota(order.begin(), order.end(), 0);
  return run_locc(s1, s2, order);
}

double locc_distance(const Transcript& t) {
  double sum = 0.0;
  for (const LeafRecord& leaf : t.leaves) {
    sum += std::abs(leaf.amplitude);
  }
  return std::acos(clamp01(sum));
}

namespace {

void walk_cascade(const ProtocolNode& node, const Transcript& t,
                  CascadeReport& report) {
  if (node.children.empty()) return;
  const int acting = t.order[node.depth()];
  const double d_act = static_cast<double>(t.layout.dim(acting));
  for (std::size_t a = 0; a < node.children.size(); ++a) {
    const Complex child_amp = node.children[a].stage_amplitude;
    report.parent_max =
        std::max(report.parent_max,
                 std::abs(d_act * child_amp - node.stage_amplitude));
    for (std::size_t b = a + 1; b < node.children.size(); ++b) {
      report.sibling_max =
          std::max(report.sibling_max,
                   std::abs(child_amp - node.children[b].stage_amplitude));
    }
  }
  for (const ProtocolNode& child : node.children) {
    walk_cascade(child, t, report);
  }
}

}  // namespace

CascadeReport check_stage_cascade(const Transcript& t) {
  CascadeReport report{0.0, 0.0, 0.0};
  walk_cascade(t.root, t, report);
  const double d_total = static_cast<double>(t.layout.total_dim());
  for (const LeafRecord& leaf : t.leaves) {
    report.telescope_max =
        std::max(report.telescope_max,
                 std::abs(d_total * leaf.amplitude - t.overlap));
  }
  return report;
}

double leaf_completeness_defect(const Transcript& t) {
  const long dim = t.layout.total_dim();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (const LeafRecord& leaf : t.leaves) {
    sum += leaf.product_vector * leaf.product_vector.adjoint();
  }
  sum -= Eigen::MatrixXcd::Identity(dim, dim);
  return sum.cwiseAbs().maxCoeff();
}

DiscriminationTable discriminate_orthogonal(const PureState& s1,
                                            const PureState& s2,
                                            const std::vector<int>& order) {
  const double overlap = std::abs(inner_product(s1, s2));
  if (overlap > 1e-10) {
    throw UsageError("states are not orthogonal: |<s1|s2>| = " +
                     std::to_string(overlap));
  }
  DiscriminationTable table{{}, 0.0, run_locc(s1, s2, order)};
  table.rows.reserve(table.transcript.leaves.size());
  for (const LeafRecord& leaf : table.transcript.leaves) {
    DiscriminationRow row;
    row.outcome = leaf.outcome;
    row.p1 = leaf.p1;
    row.p2 = leaf.p2;
    if (leaf.p1 <= 1e-18 && leaf.p2 <= 1e-18) {
      row.verdict = Identified::kEither;
    } else if (leaf.p1 >= leaf.p2) {
      row.verdict = Identified::kState1;
    } else {
      row.verdict = Identified::kState2;
    }
    table.max_min_probability =
        std::max(table.max_min_probability, std::min(leaf.p1, leaf.p2));
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace statdist
