#include "usinv/stab.hpp"

#include <map>
#include <stdexcept>

#include "usinv/exact/sparse.hpp"

namespace usinv::stab {

namespace {

std::vector<int> flag_positions(const std::vector<int>& sigma) {
  std::vector<int> pos(sigma.size() + 1, 0);
  for (std::size_t k = 0; k < sigma.size(); ++k) pos.at(static_cast<std::size_t>(sigma[k])) = static_cast<int>(k) + 1;
  return pos;
}

bool has_weighted_content(const exact::MultiVector<Rational>& p) {
  for (const auto& s : p.summands())
    if (s.alpha > 0 && !s.coeffs.empty()) return true;
  return false;
}

exact::SparseVector flatten(const QMatrix& m) {
  exact::SparseVector v;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!exact::is_zero(m(r, c))) v.emplace(static_cast<int>(r * m.cols() + c), m(r, c));
  return v;
}

QMatrix combine(const std::vector<QMatrix>& basis, const std::vector<Rational>& coeffs) {
  QMatrix out(basis.front().rows(), basis.front().cols());
  for (std::size_t b = 0; b < basis.size(); ++b)
    if (!exact::is_zero(coeffs[b])) out = out + basis[b].scaled(coeffs[b]);
  return out;
}

// Kernel of the linear map c ↦ (linear conditions on Σ c_b B_b).
template <class RowsOf>
std::vector<QMatrix> solve(const std::vector<QMatrix>& basis, RowsOf&& rows_of) {
  std::map<std::vector<int>, int> row_index;
  std::vector<std::vector<std::pair<int, Rational>>> cols(basis.size());
  for (std::size_t b = 0; b < basis.size(); ++b)
    for (auto& [key, value] : rows_of(basis[b])) {
      auto [it, inserted] = row_index.try_emplace(key, static_cast<int>(row_index.size()));
      cols[b].emplace_back(it->second, value);
    }
  exact::SparseMatrix m(static_cast<int>(row_index.size()), static_cast<int>(basis.size()));
  for (std::size_t b = 0; b < basis.size(); ++b)
    for (const auto& [r, v] : cols[b]) m.add(r, static_cast<int>(b), v);
  std::vector<QMatrix> out;
  for (const auto& v : exact::nullspace(m)) out.push_back(combine(basis, v));
  return out;
}

// Sparse linear conditions for A·p = 0: keys are (summand, tuple...) for the
// wedge part and (-1, r, c) for forbidden σ-lower entries.
std::vector<std::pair<std::vector<int>, Rational>> stabilizer_rows(const QMatrix& a, const exact::MultiVector<Rational>& p,
                                                                   const std::vector<int>& sigma) {
  std::vector<std::pair<std::vector<int>, Rational>> rows;
  auto img = act(a, p, sigma);
  for (std::size_t s = 0; s < img.size(); ++s)
    for (const auto& [t, c] : img.summands()[s].coeffs) {
      std::vector<int> key{static_cast<int>(s)};
      key.insert(key.end(), t.begin(), t.end());
      rows.emplace_back(std::move(key), c);
    }
  if (has_weighted_content(p)) {
    auto pos = flag_positions(sigma);
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c)
        if (pos[r + 1] > pos[c + 1] && !exact::is_zero(a(r, c)))
          rows.push_back({{-1, static_cast<int>(r), static_cast<int>(c)}, a(r, c)});
  }
  return rows;
}

}  // namespace

Rational flag_trace(const QMatrix& a, const std::vector<int>& sigma) {
  const int n = static_cast<int>(sigma.size());
  Rational c = 0;
  for (int i = 1; i <= n; ++i) {
    const std::size_t j = static_cast<std::size_t>(sigma[static_cast<std::size_t>(i - 1)] - 1);
    c += a(j, j) * (n - i + 1);
  }
  return c;
}

exact::MultiVector<Rational> act(const QMatrix& a, const exact::MultiVector<Rational>& p, const std::vector<int>& sigma,
                                 bool* flag_defect) {
  if (static_cast<int>(sigma.size()) != p.n()) throw std::invalid_argument("stabilizer: sigma has the wrong length");
  auto out = exact::wedge_apply_derivation(a, p);
  if (flag_defect) *flag_defect = false;
  if (!has_weighted_content(p)) return out;
  const Rational c = flag_trace(a, sigma);
  for (std::size_t s = 0; s < p.size(); ++s) {
    const auto& src = p.summands()[s];
    if (src.alpha == 0) continue;
    for (const auto& [t, x] : src.coeffs) out.summands()[s].add(t, x * c * src.alpha);
  }
  if (flag_defect) {
    auto pos = flag_positions(sigma);
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t col = 0; col < a.cols(); ++col)
        if (pos[r + 1] > pos[col + 1] && !exact::is_zero(a(r, col))) *flag_defect = true;
  }
  return out;
}

int span_dimension(const std::vector<QMatrix>& a) {
  exact::EchelonBasis e;
  for (const auto& m : a) e.insert(flatten(m));
  return static_cast<int>(e.rank());
}

bool same_span(const std::vector<QMatrix>& a, const std::vector<QMatrix>& b) {
  exact::EchelonBasis e;
  for (const auto& m : a) e.insert(flatten(m));
  const std::size_t ra = e.rank();
  for (const auto& m : b)
    if (!e.contains(flatten(m))) return false;
  return static_cast<std::size_t>(span_dimension(b)) == ra;
}

StabilizerReport lie_stabilizer(const exact::MultiVector<Rational>& p, const std::vector<int>& sigma,
                                const rootsys::MatrixLieData& algebra) {
  if (p.n() != algebra.n) throw std::invalid_argument("stabilizer: point and algebra sizes differ");
  if (p.is_zero_vector()) throw std::invalid_argument("stabilizer: point is zero");
  if (algebra.basis.empty()) throw std::invalid_argument("stabilizer: empty algebra");
  StabilizerReport rep;
  auto rows = [&](const QMatrix& a) { return stabilizer_rows(a, p, sigma); };
  rep.basis = solve(algebra.basis, rows);
  rep.dimension = static_cast<int>(rep.basis.size());
  auto pos = flag_positions(sigma);
  rep.nilpotent_basis = solve(algebra.basis, [&](const QMatrix& a) {
    auto r = stabilizer_rows(a, p, sigma);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (pos[i + 1] >= pos[j + 1] && !exact::is_zero(a(i, j)))
          r.push_back({{-2, static_cast<int>(i), static_cast<int>(j)}, a(i, j)});
    return r;
  });
  rep.verified = true;
  for (const auto& b : rep.basis) {
    bool defect = false;
    if (!act(b, p, sigma, &defect).is_zero_vector() || defect) rep.verified = false;
  }
  return rep;
}

StabilizerReport lie_stabilizer(const points::WeightedPoint& p, const rootsys::MatrixLieData& algebra) {
  return lie_stabilizer(p.vector, p.sigma, algebra);
}

std::vector<QMatrix> u_s_basis(const subsets::ClosedSubset& s, const rootsys::MatrixLieData& algebra) {
  if (s.n != algebra.n) throw std::invalid_argument("u_s_basis: subset and algebra sizes differ");
  return solve(algebra.basis, [&](const QMatrix& a) {
    std::vector<std::pair<std::vector<int>, Rational>> r;
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if (exact::is_zero(a(i, j))) continue;
        if (s.pairs.count({static_cast<int>(i) + 1, static_cast<int>(j) + 1})) continue;
        r.push_back({{static_cast<int>(i), static_cast<int>(j)}, a(i, j)});
      }
    return r;
  });
}

std::pair<bool, bool> compare_uS(StabilizerReport& report, const subsets::ClosedSubset& s,
                                 const rootsys::MatrixLieData& algebra) {
  auto u = u_s_basis(s, algebra);
  report.uS_dimension = static_cast<int>(u.size());
  report.equals_uS = same_span(report.basis, u);
  report.nilpotent_part_equals_uS = same_span(report.nilpotent_basis, u);
  return {report.equals_uS, report.nilpotent_part_equals_uS};
}

}  // namespace usinv::stab
