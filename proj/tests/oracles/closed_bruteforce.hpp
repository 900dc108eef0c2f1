#pragma once
// Exhaustive filter over every subset of the upper-triangular pairs.

#include <set>
#include <utility>
#include <vector>

namespace oracle {

using PairList = std::set<std::pair<int, int>>;

inline bool transitive(const PairList& p) {
  for (auto [i, j] : p)
    for (auto [j2, k] : p)
      if (j == j2 && !p.count({i, k})) return false;
  return true;
}

inline std::vector<PairList> brute_force_closed(int n) {
  std::vector<std::pair<int, int>> all;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) all.emplace_back(i, j);
  std::vector<PairList> out;
  for (unsigned long mask = 0; mask < (1ul << all.size()); ++mask) {
    PairList p;
    for (std::size_t b = 0; b < all.size(); ++b)
      if (mask & (1ul << b)) p.insert(all[b]);
    if (transitive(p)) out.push_back(p);
  }
  return out;
}

}  // namespace oracle
