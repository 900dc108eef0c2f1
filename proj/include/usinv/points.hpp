#pragma once

#include <optional>
#include <string>
#include <vector>

#include "usinv/exact/matrix.hpp"
#include "usinv/exact/poly.hpp"
#include "usinv/exact/wedge.hpp"
#include "usinv/rootsys.hpp"
#include "usinv/subsets.hpp"

namespace usinv::points {

using exact::Poly;
using exact::QMatrix;
using exact::Rational;
using rootsys::Family;
using subsets::ClosedSubset;
using subsets::Pair;
using PolyMatrix = exact::Matrix<Poly>;

/// Generic element of U_S: a product of one-parameter root subgroups.
/// Parameter k is polynomial variable k and is named names[k].
struct UnipotentPattern {
  Family family = Family::A;
  int rank = 0;
  int n = 0;
  std::vector<rootsys::Root> roots;  // product order; empty for Matrix data
  std::vector<QMatrix> generators;   // product order
  std::vector<Pair> positions;       // entry (i,j) of the matrix equal to parameter k
  std::vector<std::string> names;
  PolyMatrix matrix;

  std::string var_name(int var) const;
};

/// a, b, …, z, then t26, t27, ….
std::string parameter_name(int k);

/// Product of exp(t g_β) over β ∈ S ordered by height, ties broken by the
/// designated position, followed by a triangular change of parameters that
/// makes each designated entry equal to its parameter.
UnipotentPattern build_us(const ClosedSubset& s);
/// Matrix family: generators in the given order.
UnipotentPattern build_us_from_generators(int n, const std::vector<QMatrix>& generators);

/// Entries u_{i,i+l} vanish once every parameter whose designated position is
/// not of the form (i, i) or (i, i+l) is set to zero. B and D only.
bool so_parameter_property(const UnipotentPattern& u);

/// Determinant by cofactor expansion with memoized column subsets.
Poly poly_determinant(const PolyMatrix& m);
PolyMatrix to_poly_matrix(const QMatrix& m);

enum class AlphaPolicy { None, Minimal, Explicit };

/// α is indexed like `index_set`; the recurrence runs over the members of
/// index_set in σ-order: the member at flag position i must exceed
/// 2i·(previous member's α) + 2. The first member only needs α ≥ 1.
bool alpha_valid(const std::vector<int>& alpha, const std::vector<int>& sigma, const std::vector<int>& index_set);
std::vector<int> minimal_alpha(const std::vector<int>& sigma, const std::vector<int>& index_set);
/// σ = id, full index set.
std::vector<int> minimal_alpha(int n);
bool alpha_valid(const std::vector<int>& alpha, int n);

/// p_S, or p_{S,α} = ⊕_j p_{S_j} ⊗ ẽ^{α_j} ⊕ r when α is present. The flag
/// tensor ẽ is implicit: a summand with alpha > 0 carries it alpha times.
struct WeightedPoint {
  int n = 0;
  std::vector<int> sigma;
  std::vector<int> index_set;
  std::vector<int> alpha;  // empty when unweighted
  bool index_set_is_convention = false;
  exact::MultiVector<Rational> vector;

  bool weighted() const { return !alpha.empty(); }
  /// Position of the first flag summand f_1 in `vector`, if attached.
  std::size_t flag_offset() const { return index_set.size(); }
};

/// Default index sets: A -> 1..n; B, C, D -> l+1..n.
std::vector<int> default_index_set(Family f, int rank);

struct PointOptions {
  std::optional<std::vector<int>> index_set;
  AlphaPolicy policy = AlphaPolicy::None;
  std::vector<int> explicit_alpha;
};

WeightedPoint build_point(const ClosedSubset& s, const PointOptions& opt = {});
/// Matrix family: σ and the default index set come from `data`.
WeightedPoint build_point(const ClosedSubset& s, const rootsys::MatrixLieData& data, const PointOptions& opt = {});

/// Pure flag wedges f_k = e_σ(1)∧…∧e_σ(k), k = 1..n, as summands "f_k".
exact::MultiVector<Rational> flag_part(const std::vector<int>& sigma);

}  // namespace usinv::points
