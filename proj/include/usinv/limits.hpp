#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "usinv/exact/matrix.hpp"
#include "usinv/exact/poly.hpp"
#include "usinv/exact/wedge.hpp"
#include "usinv/points.hpp"
#include "usinv/rootsys.hpp"
#include "usinv/subsets.hpp"

namespace usinv::limits {

using exact::MultiVector;
using exact::Poly;
using exact::QMatrix;
using exact::Rational;
using exact::Tuple;
using rootsys::Family;

/// λ(t) = diag(t^{w_1}, …, t^{w_n}). Type A needs Σ w_i = 0; B, C, D need
/// w_{l+i} = -w_i, and B also w_n = 0. Matrix data only checks the length.
void check_cocharacter(Family f, int rank, const std::vector<int>& w);

/// Every admissible cocharacter with |w_i| ≤ radius, lexicographic.
std::vector<std::vector<int>> cocharacter_grid(Family f, int rank, int radius);

struct LedgerEntry {
  std::size_t summand = 0;
  std::string label;
  Tuple tuple;
  int exponent = 0;  // lowest power of t with a nonzero coefficient
  Rational leading;
};

struct LimitOutcome {
  bool converges = false;
  MultiVector<Rational> value;  // the t^0 part; zero summands kept
  std::vector<LedgerEntry> ledger;
};

/// Expands u′·λ(t)·u·p as a Laurent polynomial in t. A summand with alpha > 0
/// gains alpha·Σ_k P_k in its exponent, P_k = Σ_{i≤k} w_{σ(i)}; the conjugators
/// must then fix the σ-flag pointwise, i.e. be σ-upper unitriangular.
LimitOutcome cochar_limit(const MultiVector<Rational>& p, const std::vector<int>& sigma, const std::vector<int>& w,
                          const std::optional<QMatrix>& u = std::nullopt,
                          const std::optional<QMatrix>& u_after = std::nullopt);
/// As above, after checking the family constraint on w.
LimitOutcome cochar_limit(const points::WeightedPoint& p, Family f, int rank, const std::vector<int>& w,
                          const std::optional<QMatrix>& u = std::nullopt,
                          const std::optional<QMatrix>& u_after = std::nullopt);

struct ExponentReport {
  bool hypotheses_met = false;
  std::vector<int> partial_sums;  // P_1..P_n
  int exponent = 0;               // E = Σ_i P_i
  bool positive = false;          // E > 0
  bool plus = false;              // 2E + w_j > 0 for all j
  bool minus = false;             // 2E - w_j > 0 for all j
  bool holds() const { return !hypotheses_met || (positive && plus && minus); }
};

/// Hypotheses: every P_i ≥ 0 and some w_s > 0.
ExponentReport exponent_lemma_check(const std::vector<int>& w, const std::vector<int>& sigma);

struct ExponentSweep {
  long cases = 0;
  long hypotheses_met = 0;
  std::vector<std::vector<int>> counterexamples;
};

/// σ = id, 1 ≤ n ≤ n_max, w ∈ [-radius, radius]^n.
ExponentSweep exponent_lemma_sweep(int n_max, int radius);

struct WedgeCoefficientReport {
  int s = 0;
  int t = 0;
  std::vector<int> column_set;
  Tuple target;       // sorted basis tuple of e_s ∧ ∧_{i∈S_t∖{t}} e_i
  int sign = 0;       // sorting sign of (S_t∖{t}, s)
  Poly coefficient;   // in the expansion of (∧_{i∈S_t} e_i)·b
  Poly expected;      // sign · b_st · Π_{i∈S_t∖{t}} b_ii
  bool magnitude_matches = false;
  bool verified = false;
};

/// Symbolic upper triangular b with b_ij = 0 for i ∈ S_j∖{j}; the variable of
/// b_ij is invars::var_id(n, i, j). Requires s < t and s ∉ S_t.
WedgeCoefficientReport wedge_coefficient_check(const subsets::ColumnFamily& c, int s, int t);

struct ScreenWitness {
  std::vector<int> cocharacter;
  int stabilizer_dimension = 0;
  int excess = 0;
  MultiVector<Rational> limit;
};

struct ScreenReport {
  int radius = 0;
  int uS_dimension = 0;
  int point_stabilizer_dimension = 0;
  long cocharacters = 0;
  long converged = 0;
  std::map<int, long> excess_histogram;      // stabilizer excess over dim 𝔲_S
  std::vector<ScreenWitness> witnesses;      // excess exactly 1
  std::vector<std::vector<int>> semicontinuity_violations;
  bool passed() const { return witnesses.empty() && semicontinuity_violations.empty(); }
};

/// Screens every cocharacter of the grid: for each finite limit q of the point
/// records dim stab(q) - dim 𝔲_S. Limits with excess exactly 1 are witnesses of
/// a codimension-one boundary orbit. Classical families only.
ScreenReport grosshans_screen(const subsets::ClosedSubset& s, const points::PointOptions& opt, int radius,
                              int jobs = 1);

}  // namespace usinv::limits
