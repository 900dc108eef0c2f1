#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "usinv/exact/matrix.hpp"
#include "usinv/exact/poly.hpp"
#include "usinv/subsets.hpp"

namespace usinv::invars {

using exact::Poly;
using exact::QMatrix;
using exact::Rational;

/// Thrown when a graded piece would exceed the monomial cap.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Monomial cap: USINV_CAP if set to a positive integer, else 250000.
std::size_t monomial_cap();

/// Variable id of x_ij (1-based i, j) in the n×n coordinate ring.
inline int var_id(int n, int i, int j) { return (i - 1) * n + (j - 1); }
/// "x12" style names; "x1_12" once n ≥ 10.
exact::VarNamer coordinate_names(int n);

/// det^J_I: rows J, columns I, both ascending.
struct Minor {
  std::vector<int> columns;
  std::vector<int> rows;
  friend bool operator==(const Minor&, const Minor&) = default;
};

Poly minor_poly(int n, const Minor& m);

/// D_A f = Σ_ij (XA)_ij ∂f/∂x_ij, the infinitesimal right translation by A.
Poly derivation(const QMatrix& a, const Poly& f);
/// D_ab = Σ_i x_ia ∂/∂x_ib, i.e. derivation(E_ab).
Poly derivation(int n, int a, int b, const Poly& f);

/// Generators of 𝔲_S used for invariance: E_ij for type A pairs, g_α for the
/// source roots of B, C, D.
std::vector<QMatrix> subset_generators(const subsets::ClosedSubset& s);

/// S_j ⊆ I whenever j ∈ I.
bool is_invariant_minor(const std::vector<int>& columns, const subsets::ColumnFamily& c);

/// Flag sets {σ(1..m)}, m = 1..n, then S_j for j in index_set, deduplicated.
std::vector<std::vector<int>> principal_column_sets(const subsets::ColumnFamily& c, const std::vector<int>& sigma,
                                                    const std::vector<int>& index_set);
/// All minors on the principal column sets, every row subset of matching size.
std::vector<Minor> principal_minors(const subsets::ColumnFamily& c, const std::vector<int>& sigma,
                                    const std::vector<int>& index_set);

/// All degree-d monomials in `vars` variables, ascending graded-lex.
std::vector<exact::Monomial> monomials(int vars, int d);

struct InvariantSpace {
  int degree = 0;
  std::vector<Poly> basis;
  int dimension() const { return static_cast<int>(basis.size()); }
};

/// Homogeneous degree-d polynomials in the x_ij killed by every generator.
InvariantSpace invariant_space(int n, const std::vector<QMatrix>& generators, int d);
InvariantSpace invariant_space(const subsets::ClosedSubset& s, int d);

struct DegreeReport {
  int degree = 0;
  int invariant_dimension = 0;
  int covered = 0;
  int cofactor_power = 0;  // largest det power needed in this degree
  std::vector<Poly> uncovered;
};

struct GenerationReport {
  bool covered = false;
  int slack_requested = 0;
  int slack_used = 0;  // largest det power needed; slack_bound when something stayed uncovered
  int slack_bound = 0;
  std::vector<std::vector<int>> column_sets;
  std::vector<DegreeReport> degrees;
};

/// For every invariant basis element f of degree e ≤ d, looks for k ≤ slack
/// with f·det^k a combination of products of principal invariant minors of
/// degree e + k·n. Since det is one of those minors this is membership of f in
/// the algebra they generate modulo (det − 1). Retries with slack + 1 up to
/// `slack_bound` before giving up; a miss is inconclusive, never a refutation.
/// Type A only.
GenerationReport generation_check(const subsets::ClosedSubset& s, int d, int slack, int slack_bound);

}  // namespace usinv::invars
