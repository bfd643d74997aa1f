#pragma once

#include <cstdint>
#include <vector>

#include "splitcurve/error.hpp"

namespace splitcurve {

/// Binomial coefficient; zero outside 0 <= k <= n.
constexpr std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline std::int64_t pow2(int e) {
  if (e < 0 || e > 62) throw InputError("pow2: exponent out of range");
  return std::int64_t{1} << e;
}

/// Number of odd theta-characteristics of a smooth genus-g curve, 2^(g-1)(2^g-1).
inline std::int64_t odd_theta_count(int g) {
  if (g < 1) throw InputError("odd_theta_count: genus must be positive");
  return pow2(g - 1) * (pow2(g) - 1);
}

/// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace splitcurve
