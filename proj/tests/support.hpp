#pragma once

#include <cmath>
#include <vector>

#include "summing/rng.hpp"
#include "summing/spaces.hpp"

namespace testing {

inline bool rel_close(double a, double b, double tol) {
  return a == b || std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

inline double uniform(summing::SplitMix& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline std::vector<double> positive_weights(summing::SplitMix& rng, std::size_t n, double lo = 0.1, double hi = 3.0) {
  std::vector<double> w(n);
  for (double& v : w) v = uniform(rng, lo, hi);
  return w;
}

inline double random_exponent(summing::SplitMix& rng) {
  static const double choices[] = {1.0, 1.5, 2.0, 3.0, 4.0, summing::kInf};
  return choices[rng() % 6];
}

}  // namespace testing
