#pragma once

#include <utility>
#include <vector>

#include "usinv/exact/matrix.hpp"
#include "usinv/exact/wedge.hpp"
#include "usinv/points.hpp"
#include "usinv/rootsys.hpp"
#include "usinv/subsets.hpp"

namespace usinv::stab {

using exact::QMatrix;
using exact::Rational;

struct StabilizerReport {
  int dimension = 0;
  std::vector<QMatrix> basis;
  std::vector<QMatrix> nilpotent_basis;  // stabilizer ∩ strictly σ-upper matrices
  int uS_dimension = 0;
  bool equals_uS = false;
  bool nilpotent_part_equals_uS = false;
  bool verified = false;  // every basis element re-checked against the point
};

/// {A ∈ span(algebra.basis) : A·p = 0}. Summands with alpha > 0 stand for
/// x ⊗ ẽ^{⊗alpha}; for nonzero x they force A to preserve the σ-flag and
/// contribute A·x + alpha·c(A)·x = 0 with c(A) = Σ_i (n-i+1)·A_{σ(i)σ(i)}.
StabilizerReport lie_stabilizer(const exact::MultiVector<Rational>& p, const std::vector<int>& sigma,
                                const rootsys::MatrixLieData& algebra);
StabilizerReport lie_stabilizer(const points::WeightedPoint& p, const rootsys::MatrixLieData& algebra);

/// A·p for one algebra element, with the implicit flag factor included as
/// above; zero exactly when A stabilizes p. Extra flag components of A are
/// reported through `flag_defect`.
exact::MultiVector<Rational> act(const QMatrix& a, const exact::MultiVector<Rational>& p, const std::vector<int>& sigma,
                                 bool* flag_defect = nullptr);

/// 𝔲_S = span(algebra) ∩ span{E_ij : (i,j) ∈ S^t}.
std::vector<QMatrix> u_s_basis(const subsets::ClosedSubset& s, const rootsys::MatrixLieData& algebra);

/// (full equality, nilpotent-part equality) against 𝔲_S; also stored in `report`.
std::pair<bool, bool> compare_uS(StabilizerReport& report, const subsets::ClosedSubset& s,
                                 const rootsys::MatrixLieData& algebra);

/// span(a) == span(b) for matrix lists.
bool same_span(const std::vector<QMatrix>& a, const std::vector<QMatrix>& b);
int span_dimension(const std::vector<QMatrix>& a);

/// c(A) = Σ_k tr(A restricted to the k-th flag space).
Rational flag_trace(const QMatrix& a, const std::vector<int>& sigma);

}  // namespace usinv::stab
