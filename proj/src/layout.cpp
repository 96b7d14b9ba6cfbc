#include "statdist/layout.hpp"

#include <limits>
#include <string>

namespace statdist {

PartyLayout::PartyLayout(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) {
    throw DimensionError("layout needs at least one party");
  }
  for (std::size_t p = 0; p < dims_.size(); ++p) {
    if (dims_[p] < 1) {
      throw DimensionError("party " + std::to_string(p) +
                           " has non-positive dimension " +
                           std::to_string(dims_[p]));
    }
    if (total_ > std::numeric_limits<long>::max() / dims_[p]) {
      throw DimensionError("total dimension overflows");
    }
    total_ *= dims_[p];
  }
}

int PartyLayout::dim(int party) const {
  if (party < 0 || party >= parties()) {
    throw DimensionError("party index " + std::to_string(party) +
                         " out of range for " + std::to_string(parties()) +
                         " parties");
  }
  return dims_[party];
}

long PartyLayout::flatten(const std::vector<int>& digits) const {
  if (static_cast<int>(digits.size()) != parties()) {
    throw DimensionError("digit count " + std::to_string(digits.size()) +
                         " does not match " + std::to_string(parties()) +
                         " parties");
  }
  long index = 0;
  for (int p = 0; p < parties(); ++p) {
    if (digits[p] < 0 || digits[p] >= dims_[p]) {
      throw DimensionError("digit " + std::to_string(digits[p]) +
                           " out of range for party " + std::to_string(p));
    }
    index = index * dims_[p] + digits[p];
  }
  return index;
}

std::vector<int> PartyLayout::unflatten(long index) const {
  if (index < 0 || index >= total_) {
    throw DimensionError("flat index " + std::to_string(index) +
                         " out of range for dimension " +
                         std::to_string(total_));
  }
  std::vector<int> digits(dims_.size());
  for (int p = parties() - 1; p >= 0; --p) {
    digits[p] = static_cast<int>(index % dims_[p]);
    index /= dims_[p];
  }
  return digits;
}

long PartyLayout::codim(int party) const { return total_ / dim(party); }

PartyLayout PartyLayout::drop(int party) const {
  dim(party);  // range check
  if (parties() == 1) {
    throw DimensionError("cannot drop the only party");
  }
  std::vector<int> rest;
  rest.reserve(dims_.size() - 1);
  for (int p = 0; p < parties(); ++p) {
    if (p != party) rest.push_back(dims_[p]);
  }
  return PartyLayout(rest);
}

}  // namespace statdist
