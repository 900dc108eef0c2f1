#include "usinv/invars.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "usinv/exact/sparse.hpp"
#include "usinv/points.hpp"
#include "usinv/rootsys.hpp"

namespace usinv::invars {

namespace {

using exact::Monomial;

// Number of degree-d monomials in v variables, saturating at `limit + 1`.
std::size_t count_monomials(int v, int d, std::size_t limit) {
  // C(v + d - 1, d), built incrementally so it stays exact while small.
  long double c = 1;
  for (int k = 1; k <= d; ++k) {
    c = c * (v - 1 + k) / k;
    if (c > static_cast<long double>(limit)) return limit + 1;
  }
  return static_cast<std::size_t>(c + 0.5L);
}

void enumerate(int vars, int d, int from, Monomial cur, std::vector<Monomial>& out) {
  if (d == 0) {
    out.push_back(cur);
    return;
  }
  for (int v = from; v < vars; ++v) enumerate(vars, d - 1, v, cur * Monomial::variable(v), out);
}

// Row content followed by column content.
using Multidegree = std::vector<int>;

Multidegree multidegree(const Monomial& m, int n) {
  Multidegree k(static_cast<std::size_t>(2 * n), 0);
  for (auto [v, e] : m.factors()) {
    k[static_cast<std::size_t>(v / n)] += e;
    k[static_cast<std::size_t>(n + v % n)] += e;
  }
  return k;
}

Multidegree multidegree(const Minor& m, int n) {
  Multidegree k(static_cast<std::size_t>(2 * n), 0);
  for (int r : m.rows) ++k[static_cast<std::size_t>(r - 1)];
  for (int c : m.columns) ++k[static_cast<std::size_t>(n + c - 1)];
  return k;
}

std::map<Multidegree, Poly> split(const Poly& f, int n) {
  std::map<Multidegree, Poly> out;
  for (const auto& [m, c] : f.terms()) out[multidegree(m, n)] += Poly::term(m, c);
  return out;
}

std::vector<std::vector<int>> subsets_of_size(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<bool> pick(static_cast<std::size_t>(n), false);
  std::fill(pick.begin(), pick.begin() + k, true);
  do {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (pick[static_cast<std::size_t>(i)]) s.push_back(i + 1);
    out.push_back(std::move(s));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

// Span of all products of the given minors with one fixed multidegree.
class ProductSpace {
 public:
  ProductSpace(int n, const std::vector<Minor>& minors, const std::vector<Poly>& polys, const Multidegree& target,
               std::size_t cap) {
    std::vector<Multidegree> degs;
    for (const auto& m : minors) degs.push_back(multidegree(m, n));
    Multidegree rest = target;
    std::size_t products = 0;
    std::function<void(std::size_t, const Poly&)> go = [&](std::size_t from, const Poly& acc) {
      if (std::all_of(rest.begin(), rest.end(), [](int x) { return x == 0; })) {
        if (++products > cap) throw CapExceeded("generation check: too many minor products");
        basis_.insert(vec(acc));
        return;
      }
      for (std::size_t m = from; m < degs.size(); ++m) {
        bool fits = true;
        for (std::size_t t = 0; t < rest.size(); ++t)
          if (degs[m][t] > rest[t]) fits = false;
        if (!fits) continue;
        for (std::size_t t = 0; t < rest.size(); ++t) rest[t] -= degs[m][t];
        go(m, acc * polys[m]);
        for (std::size_t t = 0; t < rest.size(); ++t) rest[t] += degs[m][t];
      }
    };
    go(0, Poly(1));
  }

  bool contains(const Poly& f) {
    for (const auto& [m, c] : f.terms())
      if (!index_.count(m)) return false;
    return basis_.contains(vec(f));
  }

 private:
  exact::SparseVector vec(const Poly& p) {
    exact::SparseVector v;
    for (const auto& [m, c] : p.terms()) {
      auto [it, ins] = index_.try_emplace(m, static_cast<int>(index_.size()));
      v.emplace(it->second, c);
    }
    return v;
  }
  std::map<Monomial, int> index_;
  exact::EchelonBasis basis_;
};

}  // namespace

std::size_t monomial_cap() {
  if (const char* env = std::getenv("USINV_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 250000;
}

exact::VarNamer coordinate_names(int n) {
  return [n](int v) {
    const int i = v / n + 1, j = v % n + 1;
    if (n >= 10) return "x" + std::to_string(i) + "_" + std::to_string(j);
    return "x" + std::to_string(i) + std::to_string(j);
  };
}

Poly minor_poly(int n, const Minor& m) {
  if (m.rows.size() != m.columns.size() || m.rows.empty())
    throw std::invalid_argument("minor: rows and columns must be nonempty and of equal size");
  for (const auto* v : {&m.rows, &m.columns}) {
    if (!std::is_sorted(v->begin(), v->end()) || std::adjacent_find(v->begin(), v->end()) != v->end())
      throw std::invalid_argument("minor: indices must be strictly increasing");
    if (v->front() < 1 || v->back() > n) throw std::out_of_range("minor: index out of range");
  }
  const std::size_t k = m.rows.size();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  Poly out;
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        if (perm[a] > perm[b]) ++inversions;
    Monomial mono;
    for (std::size_t r = 0; r < k; ++r) mono = mono * Monomial::variable(var_id(n, m.rows[r], m.columns[perm[r]]));
    out += Poly::term(mono, inversions % 2 ? -1 : 1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Poly derivation(const QMatrix& a, const Poly& f) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != a.rows()) throw std::invalid_argument("derivation: matrix must be square");
  std::vector<bool> seen(static_cast<std::size_t>(n * n), false);
  for (const auto& [m, c] : f.terms())
    for (auto [v, e] : m.factors()) {
      if (v >= n * n) throw std::invalid_argument("derivation: polynomial uses a variable outside x_ij");
      seen[static_cast<std::size_t>(v)] = true;
    }
  Poly out;
  for (int v = 0; v < n * n; ++v) {
    if (!seen[static_cast<std::size_t>(v)]) continue;
    const int i = v / n + 1, j = v % n + 1;
    Poly xa;  // (XA)_ij
    for (int k = 1; k <= n; ++k) {
      const Rational& akj = a(static_cast<std::size_t>(k - 1), static_cast<std::size_t>(j - 1));
      if (!exact::is_zero(akj)) xa += Poly::variable(var_id(n, i, k)) * akj;
    }
    if (xa.is_zero()) continue;
    out += xa * f.derivative(v);
  }
  return out;
}

Poly derivation(int n, int a, int b, const Poly& f) { return derivation(exact::unit_matrix(n, a, b), f); }

std::vector<QMatrix> subset_generators(const subsets::ClosedSubset& s) {
  std::vector<QMatrix> out;
  switch (s.family) {
    case rootsys::Family::A:
      for (auto [i, j] : s.pairs) out.push_back(exact::unit_matrix(s.n, i, j));
      break;
    case rootsys::Family::B:
    case rootsys::Family::C:
    case rootsys::Family::D:
      for (const auto& r : s.source_roots) out.push_back(rootsys::root_subgroup_matrix(s.family, s.rank, r));
      break;
    default:
      throw std::invalid_argument("invariants: matrix-family subsets need explicit generators");
  }
  return out;
}

bool is_invariant_minor(const std::vector<int>& columns, const subsets::ColumnFamily& c) {
  for (int j : columns) {
    if (j < 1 || j > c.n()) throw std::out_of_range("minor column out of range");
    for (int i : c[j])
      if (!std::binary_search(columns.begin(), columns.end(), i)) return false;
  }
  return true;
}

std::vector<std::vector<int>> principal_column_sets(const subsets::ColumnFamily& c, const std::vector<int>& sigma,
                                                    const std::vector<int>& index_set) {
  if (static_cast<int>(sigma.size()) != c.n()) throw std::invalid_argument("principal minors: sigma has the wrong length");
  std::vector<std::vector<int>> out;
  auto push = [&](std::vector<int> s) {
    std::sort(s.begin(), s.end());
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
  };
  std::vector<int> flag;
  for (int s : sigma) {
    flag.push_back(s);
    push(flag);
  }
  for (int j : index_set) push(c[j]);
  return out;
}

std::vector<Minor> principal_minors(const subsets::ColumnFamily& c, const std::vector<int>& sigma,
                                    const std::vector<int>& index_set) {
  std::vector<Minor> out;
  for (const auto& cols : principal_column_sets(c, sigma, index_set))
    for (auto& rows : subsets_of_size(c.n(), static_cast<int>(cols.size()))) out.push_back({cols, std::move(rows)});
  return out;
}

std::vector<Monomial> monomials(int vars, int d) {
  if (vars < 1 || d < 0) throw std::invalid_argument("monomials: need vars >= 1 and d >= 0");
  const std::size_t cap = monomial_cap();
  if (count_monomials(vars, d, cap) > cap)
    throw CapExceeded("degree " + std::to_string(d) + " in " + std::to_string(vars) +
                      " variables exceeds the monomial cap of " + std::to_string(cap));
  std::vector<Monomial> out;
  enumerate(vars, d, 0, Monomial(), out);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Column j contributes weight[j] to the grading; every generator must shift
// the weight of a monomial by a single amount for the grading to be valid.
using ColumnWeights = std::vector<std::vector<int>>;

bool grading_valid(const std::vector<QMatrix>& generators, const ColumnWeights& weight) {
  for (const auto& g : generators) {
    std::optional<std::vector<int>> shift;
    for (std::size_t k = 0; k < g.rows(); ++k)
      for (std::size_t j = 0; j < g.cols(); ++j) {
        if (exact::is_zero(g(k, j))) continue;
        std::vector<int> d(weight[k].size());
        for (std::size_t t = 0; t < d.size(); ++t) d[t] = weight[k][t] - weight[j][t];
        if (shift && *shift != d) return false;
        shift = d;
      }
  }
  return true;
}

ColumnWeights identity_weights(int n) {
  ColumnWeights w(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = 1;
  return w;
}

// Torus characters of the standard basis for B, C, D: e_i -> L_i, e_{l+i} -> -L_i.
ColumnWeights classical_weights(rootsys::Family f, int rank) {
  const int n = rootsys::ambient_dimension(f, rank);
  ColumnWeights w(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(rank), 0));
  for (int i = 0; i < rank; ++i) {
    w[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    w[static_cast<std::size_t>(rank + i)][static_cast<std::size_t>(i)] = -1;
  }
  return w;
}

// Row content followed by the column weight.
std::vector<int> block_key(const Monomial& m, int n, const ColumnWeights& weight) {
  const std::size_t wd = weight.empty() ? 0 : weight.front().size();
  std::vector<int> key(static_cast<std::size_t>(n) + wd, 0);
  for (auto [v, e] : m.factors()) {
    key[static_cast<std::size_t>(v / n)] += e;
    const auto& cw = weight[static_cast<std::size_t>(v % n)];
    for (std::size_t t = 0; t < wd; ++t) key[static_cast<std::size_t>(n) + t] += e * cw[t];
  }
  return key;
}

InvariantSpace graded_invariants(int n, const std::vector<QMatrix>& generators, int d, ColumnWeights weight) {
  if (!grading_valid(generators, weight))
    weight.assign(static_cast<std::size_t>(n), {});
  std::map<std::vector<int>, std::vector<Monomial>> blocks;
  for (auto& m : monomials(n * n, d)) blocks[block_key(m, n, weight)].push_back(std::move(m));

  InvariantSpace out;
  out.degree = d;
  for (const auto& [key, monos] : blocks) {
    std::map<std::pair<std::size_t, Monomial>, int> row_index;
    std::vector<std::vector<std::pair<int, Rational>>> cols(monos.size());
    for (std::size_t c = 0; c < monos.size(); ++c) {
      const Poly m = Poly::term(monos[c], 1);
      for (std::size_t g = 0; g < generators.size(); ++g) {
        const Poly image = derivation(generators[g], m);
        for (const auto& [img, v] : image.terms()) {
          auto [it, ins] = row_index.try_emplace({g, img}, static_cast<int>(row_index.size()));
          cols[c].emplace_back(it->second, v);
        }
      }
    }
    exact::SparseMatrix mat(static_cast<int>(row_index.size()), static_cast<int>(monos.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (const auto& [r, v] : cols[c]) mat.add(r, static_cast<int>(c), v);
    for (const auto& v : exact::nullspace(mat)) {
      Poly f;
      for (std::size_t c = 0; c < v.size(); ++c)
        if (!exact::is_zero(v[c])) f += Poly::term(monos[c], v[c]);
      out.basis.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace

InvariantSpace invariant_space(int n, const std::vector<QMatrix>& generators, int d) {
  if (n < 1) throw std::invalid_argument("invariant_space: n must be positive");
  for (const auto& g : generators)
    if (static_cast<int>(g.rows()) != n || static_cast<int>(g.cols()) != n)
      throw std::invalid_argument("invariant_space: generator has the wrong size");
  return graded_invariants(n, generators, d, identity_weights(n));
}

InvariantSpace invariant_space(const subsets::ClosedSubset& s, int d) {
  const auto gens = subset_generators(s);
  if (s.family == rootsys::Family::A) return invariant_space(s.n, gens, d);
  return graded_invariants(s.n, gens, d, classical_weights(s.family, s.rank));
}

GenerationReport generation_check(const subsets::ClosedSubset& s, int d, int slack, int slack_bound) {
  if (s.family != rootsys::Family::A) throw std::invalid_argument("generation check is only available for SL_n");
  if (d < 1) throw std::invalid_argument("generation check: degree must be at least 1");
  if (slack < 0 || slack_bound < slack) throw std::invalid_argument("generation check: need 0 <= slack <= slack bound");
  const int n = s.n;
  const auto sigma = rootsys::flag_permutation(s.family, s.rank);
  const auto cf = subsets::column_sets(s);
  GenerationReport rep;
  rep.slack_requested = slack;
  rep.slack_bound = slack_bound;
  rep.column_sets = principal_column_sets(cf, sigma, points::default_index_set(s.family, s.rank));
  std::vector<Minor> minors;
  for (const auto& cols : rep.column_sets)
    for (auto& rows : subsets_of_size(n, static_cast<int>(cols.size()))) minors.push_back({cols, std::move(rows)});
  std::vector<Poly> polys;
  for (const auto& m : minors) polys.push_back(minor_poly(n, m));
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 1);
  const Poly determinant = minor_poly(n, {all, all});

  std::map<Multidegree, ProductSpace> spaces;
  const std::size_t cap = monomial_cap();
  auto in_span = [&](const Poly& f) {
    for (const auto& [key, part] : split(f, n)) {
      auto it = spaces.find(key);
      if (it == spaces.end()) it = spaces.emplace(key, ProductSpace(n, minors, polys, key, cap)).first;
      if (!it->second.contains(part)) return false;
    }
    return true;
  };

  int used = 0;
  rep.covered = true;
  for (int e = 1; e <= d; ++e) {
    DegreeReport dr;
    dr.degree = e;
    const auto inv = invariant_space(s, e);
    dr.invariant_dimension = inv.dimension();
    for (const auto& f : inv.basis) {
      bool hit = false;
      Poly g = f;
      for (int k = 0; k <= slack_bound && !hit; ++k) {
        if (in_span(g)) {
          used = std::max(used, k);
          hit = true;
          dr.cofactor_power = std::max(dr.cofactor_power, k);
        } else {
          g = g * determinant;
        }
      }
      if (hit) {
        ++dr.covered;
      } else {
        dr.uncovered.push_back(f);
        used = slack_bound;
      }
    }
    if (!dr.uncovered.empty()) rep.covered = false;
    rep.degrees.push_back(std::move(dr));
  }
  rep.slack_used = used;
  return rep;
}

}  // namespace usinv::invars
