#ifndef SMC_DETAIL_COMBINATIONS_HPP
#define SMC_DETAIL_COMBINATIONS_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

namespace smc::detail {

// Calls fn(indices) for every r-subset of {0..n-1} in lexicographic order.
// fn returns true to stop; the function then returns true as well.
template <class Fn>
bool for_each_combination(int n, int r, Fn&& fn) {
  if (r < 0 || r > n) return false;
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    if (fn(static_cast<const std::vector<int>&>(idx))) return true;
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Subsets of size 0..max_r, by size then lexicographically.
template <class Fn>
bool for_each_small_subset(int n, int max_r, Fn&& fn) {
  for (int r = 0; r <= max_r && r <= n; ++r)
    if (for_each_combination(n, r, fn)) return true;
  return false;
}

// Restricted growth strings of length n: every set partition exactly once.
template <class Fn>
void for_each_set_partition(int n, Fn&& fn) {
  std::vector<int> a(n, 0);
  if (n == 0) {
    fn(static_cast<const std::vector<int>&>(a), 0);
    return;
  }
  while (true) {
    int blocks = 0;
    for (int x : a) blocks = std::max(blocks, x + 1);
    fn(static_cast<const std::vector<int>&>(a), blocks);
    // position i can grow when a[i] <= max(a[0..i-1])
    int i = n - 1;
    while (i > 0) {
      int prefix_max = 0;
      for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, a[j]);
      if (a[i] <= prefix_max) break;
      --i;
    }
    if (i == 0) return;
    ++a[i];
    for (int j = i + 1; j < n; ++j) a[j] = 0;
  }
}

inline int popcount64(std::uint64_t x) { return __builtin_popcountll(x); }

}  // namespace smc::detail

#endif
