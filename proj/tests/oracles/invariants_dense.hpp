#pragma once
// Invariant dimensions for type A pair sets by dense elimination on exponent
// vectors. Shares nothing with the library's polynomial or sparse code.

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "oracles/dense.hpp"

namespace oracle {

using Exponents = std::vector<int>;  // length n*n, entry (i-1)*n + (j-1)

inline void all_exponents(int vars, int d, std::size_t pos, Exponents& cur, std::vector<Exponents>& out) {
  if (pos + 1 == static_cast<std::size_t>(vars)) {
    cur[pos] = d;
    out.push_back(cur);
    cur[pos] = 0;
    return;
  }
  for (int e = d; e >= 0; --e) {
    cur[pos] = e;
    all_exponents(vars, d - e, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

// dim of degree-d polynomials in x_ij killed by every D_ab = Σ_i x_ia ∂/∂x_ib.
inline int dense_invariant_dimension(int n, const std::set<std::pair<int, int>>& pairs, int d) {
  std::vector<Exponents> monos;
  Exponents cur(static_cast<std::size_t>(n * n), 0);
  all_exponents(n * n, d, 0, cur, monos);
  std::map<std::pair<std::size_t, Exponents>, std::size_t> row;
  std::vector<std::vector<std::pair<std::size_t, int>>> cols(monos.size());
  std::size_t g = 0;
  for (auto [a, b] : pairs) {
    for (std::size_t c = 0; c < monos.size(); ++c)
      for (int i = 1; i <= n; ++i) {
        const std::size_t from = static_cast<std::size_t>((i - 1) * n + (b - 1));
        const std::size_t to = static_cast<std::size_t>((i - 1) * n + (a - 1));
        const int e = monos[c][from];
        if (e == 0) continue;
        Exponents img = monos[c];
        --img[from];
        ++img[to];
        auto [it, ins] = row.try_emplace({g, img}, row.size());
        cols[c].emplace_back(it->second, e);
      }
    ++g;
  }
  if (row.empty()) return static_cast<int>(monos.size());
  DenseRows m(row.size(), std::vector<Rational>(monos.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (auto [r, v] : cols[c]) m[r][c] += v;
  return static_cast<int>(monos.size()) - dense_rank(m);
}

}  // namespace oracle
