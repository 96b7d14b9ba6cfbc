#pragma once

#include <vector>

#include "statdist/errors.hpp"

namespace statdist {

// Local dimensions of an ordered list of parties. Flattened indices are
// mixed-radix with party 0 as the most significant digit.
class PartyLayout {
 public:
  explicit PartyLayout(std::vector<int> dims);

  int parties() const { return static_cast<int>(dims_.size()); }
  int dim(int party) const;
  const std::vector<int>& dims() const { return dims_; }
  long total_dim() const { return total_; }

  long flatten(const std::vector<int>& digits) const;
  std::vector<int> unflatten(long index) const;

  // Product of the dims of all parties except `party`.
  long codim(int party) const;

  // Layout with one party removed (after a local measurement).
  PartyLayout drop(int party) const;

  bool operator==(const PartyLayout& other) const { return dims_ == other.dims_; }
  bool operator!=(const PartyLayout& other) const { return !(*this == other); }

 private:
  std::vector<int> dims_;
  long total_ = 1;
};

}  // namespace statdist
