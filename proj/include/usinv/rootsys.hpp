#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "usinv/exact/matrix.hpp"

namespace usinv::rootsys {

using exact::QMatrix;
using exact::Rational;

enum class Family { A, B, C, D, Matrix };

Family parse_family(std::string_view name);
std::string family_name(Family f);

/// Ambient matrix size: A_l -> l+1, B_l -> 2l+1, C_l and D_l -> 2l.
int ambient_dimension(Family f, int rank);
/// Inverse of ambient_dimension; throws when n does not fit the family.
int rank_from_dimension(Family f, int n);

/// Integer combination of the torus functionals. Type A stores n coefficients
/// over L_1..L_n; B, C, D store l coefficients over L_1..L_l (the functionals
/// on the remaining diagonal slots are determined by these).
struct Root {
  std::vector<int> coefficients;
  friend auto operator<=>(const Root&, const Root&) = default;
  Root operator-() const;
};

/// Parses "L1-L2", "L1+L2", "2L1", "L1", "-L2" and the like.
Root parse_root(std::string_view text, Family f, int rank);
std::string root_name(const Root& r);

struct RootSystem {
  Family family;
  int rank;
  int n;
  std::vector<Root> positive_roots;
  bool contains(const Root& r) const;  // positive or negative
  bool is_positive(const Root& r) const;
};

/// All positive roots, sorted lexicographically descending on coefficients.
RootSystem positive_roots(Family f, int rank);

/// Height scaled so that it is an integer for every family (type C uses twice
/// the usual value). Orders roots inside the unipotent product.
int scaled_height(Family f, int rank, const Root& r);

/// The nilpotent generator g_α in the standard basis of the family. Negative
/// roots give the transpose of the corresponding positive generator.
QMatrix root_subgroup_matrix(Family f, int rank, const Root& r);

/// Gram matrix J with Q(v,w) = vᵀJw: symmetric with J(i,l+i)=J(l+i,i)=1 for B
/// and D (plus J(n,n)=1 for B), skew with J(i,l+i)=1=-J(l+i,i) for C.
std::optional<QMatrix> bilinear_form(Family f, int rank);

/// Q(Av,w)+Q(v,Aw) = 0, i.e. AᵀJ + JA = 0.
bool preserves_form_infinitesimally(const QMatrix& a, const QMatrix& j);
/// Q(gv,gw) = Q(v,w), i.e. gᵀJg = J.
bool preserves_form(const QMatrix& g, const QMatrix& j);

/// σ with the upper Borel of the family preserving the flag e_σ(1), e_σ(1)∧e_σ(2), ….
std::vector<int> flag_permutation(Family f, int rank);

struct MatrixLieData {
  int n = 0;
  std::vector<QMatrix> basis;
  std::vector<QMatrix> torus_basis;
  std::optional<QMatrix> form;
  std::vector<int> sigma;
};

/// Checks the documented invariants; throws std::invalid_argument with the
/// first violation found.
void validate(const MatrixLieData& d);

/// sl_n, so_n or sp_n: positive root vectors, then negative ones, then the
/// torus. For type A the order is E_ij (i≠j, row-major) then E_ii - E_i+1,i+1.
MatrixLieData classical_algebra(Family f, int rank);
/// Torus plus positive root vectors.
MatrixLieData borel_subalgebra(Family f, int rank);

struct GeneratingSubsets {
  std::vector<std::vector<int>> minimal;  // sorted, each ascending
  std::vector<int> canonical;             // lexicographically least of `minimal`
};

/// Column subsets B such that the entries in columns B determine an element of
/// span(basis), minimal under inclusion.
GeneratingSubsets find_generating_subsets(const MatrixLieData& d);

/// Whether the entries in `columns` determine elements of span(basis).
bool is_generating(const MatrixLieData& d, const std::vector<int>& columns);

}  // namespace usinv::rootsys
