#pragma once

// Subsets of small vertex sets as bitmasks, ordered colexicographically
// (which coincides with numeric order of the masks).

#include <bit>
#include <cstdint>
#include <vector>

namespace bsset {

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

// All k-element subsets of {0..n-1}, n <= 31, in colex order.
inline std::vector<std::uint32_t> subsets_of_size(int n, int k) {
  std::vector<std::uint32_t> out;
  if (k < 0 || k > n) return out;
  if (k == 0) return {0u};
  std::uint32_t m = (k == 32) ? ~0u : ((1u << k) - 1u);
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (m < limit) {
    out.push_back(m);
    // Gosper's hack: next larger integer with the same popcount.
    const std::uint32_t c = m & (0u - m);
    const std::uint64_t r = std::uint64_t{m} + c;
    if (r >= limit) break;
    m = static_cast<std::uint32_t>((((r ^ m) >> 2) / c) | r);
  }
  return out;
}

// Position of a subset among subsets of the same size in colex order.
inline std::size_t colex_rank(std::uint32_t mask) {
  std::size_t rank = 0;
  int i = 1;
  while (mask) {
    const int e = std::countr_zero(mask);
    rank += binomial(e, i);
    ++i;
    mask &= mask - 1;
  }
  return rank;
}

inline int popcount(std::uint32_t mask) { return std::popcount(mask); }

// Elements of a subset, increasing.
inline std::vector<int> elements(std::uint32_t mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

}  // namespace bsset
