#pragma once

#include <complex>
#include <cstdint>
#include <utility>

namespace statdist {

// Counter-mode splitmix64 stream. The k-th output is a fixed avalanche mix
// of seed + k*golden, so a (seed, draw index) pair pins every value the
// library ever generates; normal deviates come from the Marsaglia polar
// transform on consecutive uniforms.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();

  // Uniform on [0, 1), 53-bit resolution.
  double next_double();

  // Two independent N(0, 1) deviates.
  std::pair<double, double> next_normal_pair();

  // Complex Gaussian: real and imaginary parts independent N(0, 1).
  std::complex<double> next_complex_normal();

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace statdist
