#pragma once

#include <set>
#include <utility>
#include <vector>

#include "usinv/exact/matrix.hpp"
#include "usinv/rootsys.hpp"

namespace usinv::subsets {

using rootsys::Family;
using rootsys::Root;

/// (i, j), 1-based: a matrix position above the diagonal in the flag order.
using Pair = std::pair<int, int>;
using PairSet = std::set<Pair>;

struct ClosedSubset {
  Family family = Family::A;
  int rank = 0;
  int n = 0;
  PairSet pairs;                  // transitively closed
  std::vector<Root> source_roots; // B, C, D only
  PairSet generator_pairs;        // entry pattern before closing

  friend bool operator==(const ClosedSubset& a, const ClosedSubset& b) {
    return a.family == b.family && a.n == b.n && a.pairs == b.pairs && a.source_roots == b.source_roots;
  }
};

/// S_1..S_n, each sorted ascending and containing its own index.
class ColumnFamily {
 public:
  ColumnFamily() = default;
  explicit ColumnFamily(std::vector<std::vector<int>> sets) : sets_(std::move(sets)) {}
  int n() const { return static_cast<int>(sets_.size()); }
  /// 1-based.
  const std::vector<int>& operator[](int j) const { return sets_.at(static_cast<std::size_t>(j - 1)); }
  const std::vector<std::vector<int>>& sets() const { return sets_; }
  friend bool operator==(const ColumnFamily&, const ColumnFamily&) = default;

 private:
  std::vector<std::vector<int>> sets_;
};

/// Throws std::out_of_range for indices outside 1..n and
/// std::invalid_argument for diagonal pairs.
void check_pairs(int n, const PairSet& pairs);

bool is_closed(int n, const PairSet& pairs);
PairSet closure(int n, const PairSet& pairs);

/// Type A subset on n points from an arbitrary pair set, closed on the way.
ClosedSubset transitive_closure(int n, const PairSet& pairs);
/// Type A subset from pairs that must already be closed and satisfy i < j.
ClosedSubset closed_subset_a(int n, const PairSet& pairs);

/// Off-diagonal positions where some generator has a nonzero entry.
PairSet entry_pattern(const std::vector<exact::QMatrix>& generators);

/// α, β ∈ S and α + β a root imply α + β ∈ S.
bool roots_closed(Family f, int rank, const std::vector<Root>& roots);

/// B, C, D (and A given as roots): positive roots, checked closed; pairs are
/// the transitive closure of the generators' entry pattern.
ClosedSubset from_roots(Family f, int rank, const std::vector<Root>& roots);

/// Generic matrix presentation: pairs from the generators' entry pattern.
ClosedSubset from_generators(int n, const std::vector<exact::QMatrix>& generators);

/// S_j = {j} ∪ {i : (i, j) ∈ pairs}.
ColumnFamily column_sets(const ClosedSubset& s);
/// Same, after checking that the family and rank are consistent with s.n.
ColumnFamily column_sets(const ClosedSubset& s, Family f, int rank);
/// Column sets of the unclosed entry pattern.
ColumnFamily generator_column_sets(const ClosedSubset& s);

/// a ∈ S_b and b ∈ S_c imply a ∈ S_c.
bool is_hereditary(const ColumnFamily& c);

/// Every closed subset of {(i,j) : i<j} on n ≤ 6 points, by cardinality and
/// then lexicographically on the sorted pair list.
std::vector<ClosedSubset> enumerate_closed(int n);

/// Every pair of sets has differences that are separated: all of one
/// difference lies below all of the other.
bool strongly_separated(const std::vector<std::vector<int>>& sets);

}  // namespace usinv::subsets
