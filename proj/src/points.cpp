#include "usinv/points.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace usinv::points {

std::string parameter_name(int k) {
  if (k >= 0 && k < 26) return std::string(1, static_cast<char>('a' + k));
  return "t" + std::to_string(k);
}

std::string UnipotentPattern::var_name(int var) const {
  return var >= 0 && static_cast<std::size_t>(var) < names.size() ? names[static_cast<std::size_t>(var)] : parameter_name(var);
}

PolyMatrix to_poly_matrix(const QMatrix& m) {
  PolyMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Poly(m(i, j));
  return out;
}

namespace {

struct Generator {
  rootsys::Root root;
  QMatrix g;
  Pair pos;
  Rational lead;
  int height = 0;
};

// First row-major entry equal to +1 when `prefer_unit`, else first nonzero.
std::pair<Pair, Rational> designated(const QMatrix& g, bool prefer_unit) {
  std::optional<std::pair<Pair, Rational>> first;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (exact::is_zero(g(i, j))) continue;
      Pair p{static_cast<int>(i) + 1, static_cast<int>(j) + 1};
      if (!prefer_unit || g(i, j) == 1) return {p, g(i, j)};
      if (!first) first = std::make_pair(p, g(i, j));
    }
  if (!first) throw std::invalid_argument("zero generator");
  return *first;
}

PolyMatrix exp_times_parameter(const QMatrix& g, int var) {
  return exact::nilpotent_exp(to_poly_matrix(g).scaled(Poly::variable(var)));
}

UnipotentPattern assemble(int n, std::vector<Generator> gens) {
  UnipotentPattern u;
  u.n = n;
  const std::size_t nn = static_cast<std::size_t>(n);
  u.matrix = PolyMatrix::identity(nn);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    u.roots.push_back(gens[k].root);
    u.generators.push_back(gens[k].g);
    u.positions.push_back(gens[k].pos);
    u.names.push_back(parameter_name(static_cast<int>(k)));
    u.matrix = u.matrix * exp_times_parameter(gens[k].g, static_cast<int>(k));
  }
  auto entry = [&](const Pair& p) -> Poly& {
    return u.matrix(static_cast<std::size_t>(p.first - 1), static_cast<std::size_t>(p.second - 1));
  };
  // Change of parameters t_k -> t_k - (U[pos_k] - c_k t_k)/c_k, in product
  // order; each correction only involves earlier parameters.
  for (std::size_t pass = 0; pass <= gens.size(); ++pass) {
    bool changed = false;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const int var = static_cast<int>(k);
      Poly target = Poly::variable(var) * gens[k].lead;
      Poly excess = entry(gens[k].pos) - target;
      if (excess.is_zero()) continue;
      if (!excess.derivative(var).is_zero()) throw std::logic_error("build_us: designated entry is not triangular in its parameter");
      Poly replacement = Poly::variable(var) - excess * (Rational(1) / gens[k].lead);
      for (std::size_t i = 0; i < nn; ++i)
        for (std::size_t j = 0; j < nn; ++j) u.matrix(i, j) = u.matrix(i, j).substitute(var, replacement);
      changed = true;
    }
    if (!changed) break;
  }
  for (std::size_t k = 0; k < gens.size(); ++k)
    if (!(entry(gens[k].pos) == Poly::variable(static_cast<int>(k)) * gens[k].lead))
      throw std::logic_error("build_us: reparametrization did not converge");
  return u;
}

}  // namespace

UnipotentPattern build_us(const ClosedSubset& s) {
  if (s.family == Family::Matrix) throw std::invalid_argument("build_us: Matrix family needs explicit generators");
  std::vector<rootsys::Root> roots = s.source_roots;
  if (s.family == Family::A) {
    if (!subsets::is_closed(s.n, s.pairs)) throw std::invalid_argument("build_us: subset is not closed");
    roots.clear();
    for (auto [i, j] : s.pairs) {
      rootsys::Root r;
      r.coefficients.assign(static_cast<std::size_t>(s.n), 0);
      r.coefficients[static_cast<std::size_t>(i - 1)] = 1;
      r.coefficients[static_cast<std::size_t>(j - 1)] = -1;
      roots.push_back(std::move(r));
    }
  } else if (!subsets::roots_closed(s.family, s.rank, roots)) {
    throw std::invalid_argument("build_us: subset is not closed");
  }
  std::vector<Generator> gens;
  for (const auto& r : roots) {
    Generator g;
    g.root = r;
    g.g = rootsys::root_subgroup_matrix(s.family, s.rank, r);
    std::tie(g.pos, g.lead) = designated(g.g, true);
    g.height = rootsys::scaled_height(s.family, s.rank, r);
    gens.push_back(std::move(g));
  }
  std::stable_sort(gens.begin(), gens.end(), [](const Generator& a, const Generator& b) {
    return std::tie(a.height, a.pos) < std::tie(b.height, b.pos);
  });
  UnipotentPattern u = assemble(s.n, std::move(gens));
  u.family = s.family;
  u.rank = s.rank;
  return u;
}

UnipotentPattern build_us_from_generators(int n, const std::vector<QMatrix>& generators) {
  std::vector<Generator> gens;
  for (const auto& m : generators) {
    if (m.rows() != static_cast<std::size_t>(n) || m.cols() != static_cast<std::size_t>(n))
      throw std::invalid_argument("build_us: generator has the wrong size");
    Generator g;
    g.g = m;
    std::tie(g.pos, g.lead) = designated(m, false);
    gens.push_back(std::move(g));
  }
  UnipotentPattern u = assemble(n, std::move(gens));
  u.family = Family::Matrix;
  u.roots.clear();
  return u;
}

bool so_parameter_property(const UnipotentPattern& u) {
  if (u.family != Family::B && u.family != Family::D)
    throw std::invalid_argument("so_parameter_property applies to types B and D only");
  const int l = u.rank;
  std::vector<Poly> entries;
  for (int i = 1; i <= l; ++i) entries.push_back(u.matrix(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(i + l - 1)));
  for (std::size_t k = 0; k < u.positions.size(); ++k) {
    auto [i, j] = u.positions[k];
    if (j == i || (i <= l && j == i + l)) continue;
    for (auto& e : entries) e = e.substitute(static_cast<int>(k), Poly());
  }
  return std::all_of(entries.begin(), entries.end(), [](const Poly& p) { return p.is_zero(); });
}

Poly poly_determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n > 20) throw std::invalid_argument("determinant: matrix too large for cofactor expansion");
  // minors[mask] = det of rows n-|mask|..n-1 against the columns in mask.
  std::map<unsigned, Poly> minors;
  minors[0] = Poly(1);
  for (std::size_t size = 1; size <= n; ++size) {
    const std::size_t row = n - size;
    std::map<unsigned, Poly> next;
    for (const auto& [mask, sub] : minors) {
      if (sub.is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (mask & (1u << c)) continue;
        const Poly& x = m(row, c);
        if (x.is_zero()) continue;
        // Sign: number of columns in mask smaller than c.
        int below = __builtin_popcount(mask & ((1u << c) - 1));
        Poly term = x * sub;
        if (below % 2) term = -term;
        next[mask | (1u << c)] += term;
      }
    }
    minors = std::move(next);
  }
  auto it = minors.find((1u << n) - 1);
  return it == minors.end() ? Poly() : it->second;
}

std::vector<int> default_index_set(Family f, int rank) {
  const int n = rootsys::ambient_dimension(f, rank);
  std::vector<int> out;
  const int first = f == Family::A ? 1 : rank + 1;
  for (int j = first; j <= n; ++j) out.push_back(j);
  return out;
}

namespace {

std::vector<int> flag_positions(const std::vector<int>& sigma) {
  std::vector<int> pos(sigma.size() + 1, 0);
  for (std::size_t k = 0; k < sigma.size(); ++k) pos.at(static_cast<std::size_t>(sigma[k])) = static_cast<int>(k) + 1;
  return pos;
}

// Members of index_set in σ-order, each with its flag position and its slot in index_set.
std::vector<std::pair<int, std::size_t>> sigma_walk(const std::vector<int>& sigma, const std::vector<int>& index_set) {
  auto pos = flag_positions(sigma);
  std::vector<std::pair<int, std::size_t>> out;
  for (std::size_t k = 0; k < index_set.size(); ++k) {
    int j = index_set[k];
    if (j < 1 || static_cast<std::size_t>(j) > sigma.size()) throw std::invalid_argument("index set entry out of range");
    out.emplace_back(pos[static_cast<std::size_t>(j)], k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void check_index_set(int n, const std::vector<int>& b) {
  if (b.empty()) throw std::invalid_argument("index set must be nonempty");
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (b[k] < 1 || b[k] > n) throw std::invalid_argument("index set entry " + std::to_string(b[k]) + " outside 1.." + std::to_string(n));
    if (k > 0 && b[k] <= b[k - 1]) throw std::invalid_argument("index set must be strictly increasing");
  }
}

}  // namespace

bool alpha_valid(const std::vector<int>& alpha, const std::vector<int>& sigma, const std::vector<int>& index_set) {
  if (alpha.size() != index_set.size()) return false;
  for (int a : alpha)
    if (a < 1) return false;
  long long prev = -1;
  for (auto [i, k] : sigma_walk(sigma, index_set)) {
    long long a = alpha[k];
    if (prev >= 0 && a <= 2LL * i * prev + 2) return false;
    prev = a;
  }
  return true;
}

std::vector<int> minimal_alpha(const std::vector<int>& sigma, const std::vector<int>& index_set) {
  std::vector<int> alpha(index_set.size(), 0);
  long long prev = -1;
  for (auto [i, k] : sigma_walk(sigma, index_set)) {
    long long a = prev < 0 ? 1 : 2LL * i * prev + 3;
    if (a > 1'000'000'000) throw std::overflow_error("minimal_alpha: values exceed the supported range");
    alpha[k] = static_cast<int>(a);
    prev = a;
  }
  return alpha;
}

std::vector<int> minimal_alpha(int n) {
  std::vector<int> id(static_cast<std::size_t>(n));
  std::iota(id.begin(), id.end(), 1);
  return minimal_alpha(id, id);
}

bool alpha_valid(const std::vector<int>& alpha, int n) {
  std::vector<int> id(static_cast<std::size_t>(n));
  std::iota(id.begin(), id.end(), 1);
  return alpha_valid(alpha, id, id);
}

exact::MultiVector<Rational> flag_part(const std::vector<int>& sigma) {
  exact::MultiVector<Rational> v(static_cast<int>(sigma.size()));
  exact::Tuple t;
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    t.push_back(sigma[k]);
    v.push_pure(t, "f_" + std::to_string(k + 1));
  }
  return v;
}

namespace {

WeightedPoint assemble_point(const ClosedSubset& s, std::vector<int> sigma, std::vector<int> index_set, const PointOptions& opt) {
  WeightedPoint p;
  p.n = s.n;
  p.sigma = std::move(sigma);
  p.index_set = std::move(index_set);
  switch (opt.policy) {
    case AlphaPolicy::None: break;
    case AlphaPolicy::Minimal: p.alpha = minimal_alpha(p.sigma, p.index_set); break;
    case AlphaPolicy::Explicit:
      if (!alpha_valid(opt.explicit_alpha, p.sigma, p.index_set))
        throw std::invalid_argument("alpha violates the growth conditions for this index set");
      p.alpha = opt.explicit_alpha;
      break;
  }
  auto cols = subsets::column_sets(s);
  p.vector = exact::MultiVector<Rational>(s.n);
  for (std::size_t k = 0; k < p.index_set.size(); ++k) {
    int j = p.index_set[k];
    p.vector.push_pure(cols[j], "S_" + std::to_string(j), p.weighted() ? p.alpha[k] : 0);
  }
  if (p.weighted()) {
    auto flags = flag_part(p.sigma);
    for (auto& f : flags.summands()) p.vector.push(f);
  }
  return p;
}

}  // namespace

WeightedPoint build_point(const ClosedSubset& s, const PointOptions& opt) {
  if (s.family == Family::Matrix) throw std::invalid_argument("build_point: Matrix family needs MatrixLieData");
  std::vector<int> b = opt.index_set ? *opt.index_set : default_index_set(s.family, s.rank);
  check_index_set(s.n, b);
  if (opt.index_set && !rootsys::is_generating(rootsys::borel_subalgebra(s.family, s.rank), b))
    throw std::invalid_argument("index set is not generating for the upper Borel subalgebra");
  return assemble_point(s, rootsys::flag_permutation(s.family, s.rank), std::move(b), opt);
}

WeightedPoint build_point(const ClosedSubset& s, const rootsys::MatrixLieData& data, const PointOptions& opt) {
  if (data.n != s.n) throw std::invalid_argument("build_point: data and subset sizes differ");
  std::vector<int> b;
  bool convention = false;
  if (opt.index_set) {
    b = *opt.index_set;
    check_index_set(s.n, b);
    if (!rootsys::is_generating(data, b)) throw std::invalid_argument("index set is not generating for the supplied algebra");
  } else {
    b = rootsys::find_generating_subsets(data).canonical;
    convention = true;
  }
  WeightedPoint p = assemble_point(s, data.sigma, std::move(b), opt);
  p.index_set_is_convention = convention;
  return p;
}

}  // namespace usinv::points
