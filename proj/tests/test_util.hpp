#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "lgtd/rng.hpp"
#include "lgtd/types.hpp"

namespace test_util {

inline std::vector<double> gaussian_series(std::size_t length, std::uint64_t seed,
                                           double sigma = 1.0, double drift = 0.0) {
  lgtd::Xoshiro256pp rng(seed);
  std::vector<double> y(length);
  for (std::size_t t = 0; t < length; ++t) {
    y[t] = drift * static_cast<double>(t) + sigma * rng.next_gaussian();
  }
  return y;
}

inline bool bit_equal(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

inline bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!bit_equal(a[i], b[i])) return false;
  }
  return true;
}

/// Valid random parameter set; the window stays small relative to typical
/// test series lengths.
inline lgtd::LltParams random_params(lgtd::Xoshiro256pp& rng) {
  lgtd::LltParams params;
  params.window = 2 + static_cast<int>(rng.next_below(5));
  params.max_iterations = 1 + static_cast<int>(rng.next_below(12));
  params.baseline_percentile = 5.0 + 90.0 * rng.next_double();
  params.update_threshold = rng.next_below(2) == 0;
  params.percentile_step =
      params.update_threshold ? 1.0 + 19.0 * rng.next_double() : 10.0 * rng.next_double();
  return params;
}

}  // namespace test_util
