#include "statdist/rng.hpp"

#include <cmath>

namespace statdist {

namespace {

// splitmix64 finalizer (Steele, Lea, Flood 2014); full-period avalanche mix
// of the counter so streams with different seeds are uncorrelated.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t CounterRng::next_u64() {
  return mix(seed_ + 0x9e3779b97f4a7c15ULL * counter_++);
}

double CounterRng::next_double() {
  // Top 53 bits scaled into [0, 1).
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::pair<double, double> CounterRng::next_normal_pair() {
  // Marsaglia polar method: accept (u, v) uniform on the open unit disc.
  for (;;) {
    const double u = 2.0 * next_double() - 1.0;
    const double v = 2.0 * next_double() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      const double scale = std::sqrt(-2.0 * std::log(s) / s);
      return {u * scale, v * scale};
    }
  }
}

std::complex<double> CounterRng::next_complex_normal() {
  const auto [re, im] = next_normal_pair();
  return {re, im};
}

}  // namespace statdist
