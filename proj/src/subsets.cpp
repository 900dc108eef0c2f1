#include "usinv/subsets.hpp"

#include <algorithm>
#include <stdexcept>

namespace usinv::subsets {

void check_pairs(int n, const PairSet& pairs) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  for (auto [i, j] : pairs) {
    if (i < 1 || i > n || j < 1 || j > n)
      throw std::out_of_range("pair (" + std::to_string(i) + "," + std::to_string(j) + ") outside 1.." + std::to_string(n));
    if (i == j) throw std::invalid_argument("pair (" + std::to_string(i) + "," + std::to_string(i) + ") is diagonal");
  }
}

bool is_closed(int n, const PairSet& pairs) {
  check_pairs(n, pairs);
  for (auto [i, j] : pairs)
    for (auto it = pairs.lower_bound({j, 0}); it != pairs.end() && it->first == j; ++it)
      if (it->second != i && !pairs.count({i, it->second})) return false;
  return true;
}

PairSet closure(int n, const PairSet& pairs) {
  check_pairs(n, pairs);
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<std::vector<bool>> r(nn + 1, std::vector<bool>(nn + 1, false));
  for (auto [i, j] : pairs) r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
  for (std::size_t k = 1; k <= nn; ++k)
    for (std::size_t i = 1; i <= nn; ++i)
      if (r[i][k])
        for (std::size_t j = 1; j <= nn; ++j)
          if (r[k][j]) r[i][j] = true;
  PairSet out;
  for (std::size_t i = 1; i <= nn; ++i)
    for (std::size_t j = 1; j <= nn; ++j)
      if (r[i][j]) {
        if (i == j) throw std::invalid_argument("pairs contain a cycle, so they do not fit any flag order");
        out.emplace(static_cast<int>(i), static_cast<int>(j));
      }
  return out;
}

ClosedSubset transitive_closure(int n, const PairSet& pairs) {
  ClosedSubset s;
  s.family = Family::A;
  s.rank = n - 1;
  s.n = n;
  s.generator_pairs = pairs;
  s.pairs = closure(n, pairs);
  return s;
}

ClosedSubset closed_subset_a(int n, const PairSet& pairs) {
  check_pairs(n, pairs);
  for (auto [i, j] : pairs)
    if (i > j) throw std::invalid_argument("pair (" + std::to_string(i) + "," + std::to_string(j) + ") is not a positive root");
  if (!is_closed(n, pairs)) throw std::invalid_argument("pairs are not transitively closed");
  return transitive_closure(n, pairs);
}

PairSet entry_pattern(const std::vector<exact::QMatrix>& generators) {
  PairSet out;
  for (const auto& g : generators)
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j)
        if (i != j && !exact::is_zero(g(i, j))) out.emplace(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
  return out;
}

bool roots_closed(Family f, int rank, const std::vector<Root>& roots) {
  auto rs = rootsys::positive_roots(f, rank);
  for (const auto& a : roots)
    for (const auto& b : roots) {
      Root sum = a;
      for (std::size_t k = 0; k < sum.coefficients.size(); ++k) sum.coefficients[k] += b.coefficients[k];
      if (rs.contains(sum) && std::find(roots.begin(), roots.end(), sum) == roots.end()) return false;
    }
  return true;
}

ClosedSubset from_roots(Family f, int rank, const std::vector<Root>& roots) {
  auto rs = rootsys::positive_roots(f, rank);
  std::vector<Root> uniq;
  for (const auto& r : roots) {
    if (!rs.is_positive(r)) throw std::invalid_argument("root " + rootsys::root_name(r) + " is not a positive root of " + rootsys::family_name(f) + std::to_string(rank));
    if (std::find(uniq.begin(), uniq.end(), r) == uniq.end()) uniq.push_back(r);
  }
  if (!roots_closed(f, rank, uniq)) throw std::invalid_argument("root subset is not closed");
  std::sort(uniq.begin(), uniq.end(), std::greater<>());
  std::vector<exact::QMatrix> gens;
  for (const auto& r : uniq) gens.push_back(rootsys::root_subgroup_matrix(f, rank, r));
  ClosedSubset s = from_generators(rs.n, gens);
  s.family = f;
  s.rank = rank;
  s.source_roots = std::move(uniq);
  return s;
}

ClosedSubset from_generators(int n, const std::vector<exact::QMatrix>& generators) {
  for (const auto& g : generators)
    if (g.rows() != static_cast<std::size_t>(n) || g.cols() != static_cast<std::size_t>(n))
      throw std::invalid_argument("generator has the wrong size");
  ClosedSubset s;
  s.family = Family::Matrix;
  s.n = n;
  s.generator_pairs = entry_pattern(generators);
  s.pairs = closure(n, s.generator_pairs);
  return s;
}

namespace {

ColumnFamily sets_from_pairs(int n, const PairSet& pairs) {
  std::vector<std::vector<int>> sets(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) sets[static_cast<std::size_t>(j - 1)].push_back(j);
  for (auto [i, j] : pairs) sets[static_cast<std::size_t>(j - 1)].push_back(i);
  for (auto& s : sets) std::sort(s.begin(), s.end());
  return ColumnFamily(std::move(sets));
}

}  // namespace

ColumnFamily column_sets(const ClosedSubset& s) { return sets_from_pairs(s.n, s.pairs); }

ColumnFamily column_sets(const ClosedSubset& s, Family f, int rank) {
  if (f != s.family) throw std::invalid_argument("family does not match the subset");
  if (f != Family::Matrix && rootsys::ambient_dimension(f, rank) != s.n)
    throw std::invalid_argument("rank does not match the subset's ambient dimension");
  return column_sets(s);
}

ColumnFamily generator_column_sets(const ClosedSubset& s) { return sets_from_pairs(s.n, s.generator_pairs); }

bool is_hereditary(const ColumnFamily& c) {
  for (int cc = 1; cc <= c.n(); ++cc) {
    const auto& sc = c[cc];
    if (!std::binary_search(sc.begin(), sc.end(), cc)) return false;
    for (int b : sc)
      for (int a : c[b])
        if (!std::binary_search(sc.begin(), sc.end(), a)) return false;
  }
  return true;
}

namespace {

// below[j] = S_j \ {j} as a bitmask over 1..j-1 (bit i-1).
void extend(int n, int j, std::vector<unsigned>& below, std::vector<ClosedSubset>& out) {
  if (j > n) {
    PairSet p;
    for (int t = 2; t <= n; ++t)
      for (int i = 1; i < t; ++i)
        if (below[static_cast<std::size_t>(t)] & (1u << (i - 1))) p.emplace(i, t);
    out.push_back(transitive_closure(n, p));
    return;
  }
  for (unsigned mask = 0; mask < (1u << (j - 1)); ++mask) {
    bool down_closed = true;
    for (int i = 1; i < j && down_closed; ++i)
      if ((mask & (1u << (i - 1))) && (below[static_cast<std::size_t>(i)] & ~mask)) down_closed = false;
    if (!down_closed) continue;
    below[static_cast<std::size_t>(j)] = mask;
    extend(n, j + 1, below, out);
  }
}

}  // namespace

std::vector<ClosedSubset> enumerate_closed(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (n > 6) throw std::invalid_argument("enumerate_closed: n must be at most 6");
  std::vector<ClosedSubset> out;
  std::vector<unsigned> below(static_cast<std::size_t>(n) + 1, 0);
  extend(n, 1, below, out);
  std::sort(out.begin(), out.end(), [](const ClosedSubset& a, const ClosedSubset& b) {
    if (a.pairs.size() != b.pairs.size()) return a.pairs.size() < b.pairs.size();
    return a.pairs < b.pairs;
  });
  return out;
}

bool strongly_separated(const std::vector<std::vector<int>>& sets) {
  for (std::size_t a = 0; a < sets.size(); ++a)
    for (std::size_t b = a + 1; b < sets.size(); ++b) {
      std::vector<int> x = sets[a], y = sets[b];
      std::sort(x.begin(), x.end());
      std::sort(y.begin(), y.end());
      std::vector<int> xd, yd;
      std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(xd));
      std::set_difference(y.begin(), y.end(), x.begin(), x.end(), std::back_inserter(yd));
      if (xd.empty() || yd.empty()) continue;
      if (xd.back() < yd.front() || yd.back() < xd.front()) continue;
      return false;
    }
  return true;
}

}  // namespace usinv::subsets
