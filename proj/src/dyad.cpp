#include "statdist/dyad.hpp"

#include <algorithm>
#include <string>

#include "statdist/errors.hpp"

namespace statdist {

Dyad::Dyad(Eigen::VectorXcd ket_vec, Eigen::VectorXcd bra_vec, PartyLayout lay)
    : ket(std::move(ket_vec)), bra(std::move(bra_vec)), layout(std::move(lay)) {
  if (ket.size() != layout.total_dim() || bra.size() != layout.total_dim()) {
    throw DimensionError("dyad sides do not match the layout dimension");
  }
}

Dyad dyad_from_pair(const PureState& psi1, const PureState& psi2) {
  if (psi1.layout() != psi2.layout()) {
    throw DimensionError("dyad requires a common layout");
  }
  return Dyad(psi2.amps(), psi1.amps(), psi1.layout());
}

namespace {

// Strides of each party in the flattened index (party 0 most significant).
std::vector<long> party_strides(const PartyLayout& layout) {
  std::vector<long> strides(layout.parties());
  long s = 1;
  for (int p = layout.parties() - 1; p >= 0; --p) {
    strides[p] = s;
    s *= layout.dim(p);
  }
  return strides;
}

}  // namespace

Eigen::MatrixXcd partial_trace_dyad(const Dyad& d, const std::vector<int>& keep) {
  const PartyLayout& layout = d.layout;
  if (keep.empty()) {
    throw DimensionError("partial trace must keep at least one party");
  }
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] < 0 || keep[k] >= layout.parties()) {
      throw DimensionError("kept party " + std::to_string(keep[k]) +
                           " out of range");
    }
    if (k > 0 && keep[k] <= keep[k - 1]) {
      throw DimensionError("kept parties must be strictly ascending");
    }
  }

  const std::vector<long> strides = party_strides(layout);
  std::vector<int> traced;
  for (int p = 0; p < layout.parties(); ++p) {
    if (!std::binary_search(keep.begin(), keep.end(), p)) traced.push_back(p);
  }

  long kept_dim = 1;
  for (int p : keep) kept_dim *= layout.dim(p);
  long traced_dim = 1;
  for (int p : traced) traced_dim *= layout.dim(p);

  // Flat offsets of every kept-index and traced-index combination, kept in
  // ascending enumeration order so the contraction is reproducible.
  std::vector<long> kept_offsets(kept_dim, 0);
  for (long r = 0; r < kept_dim; ++r) {
    long rest = r;
    for (int k = static_cast<int>(keep.size()) - 1; k >= 0; --k) {
      const int p = keep[k];
      kept_offsets[r] += (rest % layout.dim(p)) * strides[p];
      rest /= layout.dim(p);
    }
  }
  std::vector<long> traced_offsets(traced_dim, 0);
  for (long t = 0; t < traced_dim; ++t) {
    long rest = t;
    for (int k = static_cast<int>(traced.size()) - 1; k >= 0; --k) {
      const int p = traced[k];
      traced_offsets[t] += (rest % layout.dim(p)) * strides[p];
      rest /= layout.dim(p);
    }
  }

  Eigen::MatrixXcd m(kept_dim, kept_dim);
  for (long r = 0; r < kept_dim; ++r) {
    for (long c = 0; c < kept_dim; ++c) {
      Complex sum{0.0, 0.0};
      for (long t = 0; t < traced_dim; ++t) {
        sum += d.ket[kept_offsets[r] + traced_offsets[t]] *
               std::conj(d.bra[kept_offsets[c] + traced_offsets[t]]);
      }
      m(r, c) = sum;
    }
  }
  return m;
}

Dyad condition_dyad(const Dyad& d, int party, const Eigen::VectorXcd& outcome) {
  const PartyLayout& layout = d.layout;
  if (layout.parties() < 2) {
    throw DimensionError("conditioning requires at least two parties");
  }
  if (outcome.size() != layout.dim(party)) {
    throw DimensionError("outcome vector size " +
                         std::to_string(outcome.size()) +
                         " does not match party dimension " +
                         std::to_string(layout.dim(party)));
  }

  const std::vector<long> strides = party_strides(layout);
  const PartyLayout rest_layout = layout.drop(party);
  const long rest_dim = rest_layout.total_dim();

  // Flat offsets of the remaining parties' joint indices.
  std::vector<long> rest_offsets(rest_dim, 0);
  for (long r = 0; r < rest_dim; ++r) {
    long rest = r;
    for (int p = layout.parties() - 1; p >= 0; --p) {
      if (p == party) continue;
      rest_offsets[r] += (rest % layout.dim(p)) * strides[p];
      rest /= layout.dim(p);
    }
  }

  Eigen::VectorXcd ket = Eigen::VectorXcd::Zero(rest_dim);
  Eigen::VectorXcd bra = Eigen::VectorXcd::Zero(rest_dim);
  for (long r = 0; r < rest_dim; ++r) {
    Complex k{0.0, 0.0};
    Complex b{0.0, 0.0};
    for (int o = 0; o < layout.dim(party); ++o) {
      const long flat = rest_offsets[r] + o * strides[party];
      // <outcome| hits both sides the same way: the bra side is stored as a
      // ket, and <bra|(|outcome> ⊗ I) re-expressed as a ket is
      // (<outcome| ⊗ I)|bra>.
      k += std::conj(outcome[o]) * d.ket[flat];
      b += std::conj(outcome[o]) * d.bra[flat];
    }
    ket[r] = k;
    bra[r] = b;
  }
  return Dyad(std::move(ket), std::move(bra), rest_layout);
}

}  // namespace statdist
