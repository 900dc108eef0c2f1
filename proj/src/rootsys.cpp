#include "usinv/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "usinv/exact/sparse.hpp"

namespace usinv::rootsys {

using exact::unit_matrix;

Family parse_family(std::string_view name) {
  if (name == "A") return Family::A;
  if (name == "B") return Family::B;
  if (name == "C") return Family::C;
  if (name == "D") return Family::D;
  if (name == "Matrix" || name == "matrix") return Family::Matrix;
  throw std::invalid_argument("unknown family '" + std::string(name) + "' (expected A, B, C, D or Matrix)");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::Matrix: return "Matrix";
  }
  return "?";
}

namespace {

void check_rank(Family f, int rank) {
  if (f == Family::Matrix) throw std::invalid_argument("the Matrix family has no root system; supply MatrixLieData");
  if (rank < 1) throw std::invalid_argument("rank must be at least 1");
  if (f == Family::D && rank < 2) throw std::invalid_argument("type D needs rank at least 2");
}

std::size_t ix(int one_based) { return static_cast<std::size_t>(one_based - 1); }

}  // namespace

int ambient_dimension(Family f, int rank) {
  check_rank(f, rank);
  switch (f) {
    case Family::A: return rank + 1;
    case Family::B: return 2 * rank + 1;
    default: return 2 * rank;
  }
}

int rank_from_dimension(Family f, int n) {
  int rank = 0;
  switch (f) {
    case Family::A: rank = n - 1; break;
    case Family::B:
      if (n % 2 == 0) throw std::invalid_argument("type B needs odd n");
      rank = (n - 1) / 2;
      break;
    case Family::C:
    case Family::D:
      if (n % 2 != 0) throw std::invalid_argument("types C and D need even n");
      rank = n / 2;
      break;
    case Family::Matrix: throw std::invalid_argument("the Matrix family has no rank");
  }
  check_rank(f, rank);
  return rank;
}

Root Root::operator-() const {
  Root r = *this;
  for (auto& c : r.coefficients) c = -c;
  return r;
}

Root parse_root(std::string_view text, Family f, int rank) {
  const int len = f == Family::A ? ambient_dimension(f, rank) : rank;
  Root r;
  r.coefficients.assign(static_cast<std::size_t>(len), 0);
  std::size_t p = 0;
  auto fail = [&]() { throw std::invalid_argument("cannot parse root '" + std::string(text) + "'"); };
  if (text.empty()) fail();
  while (p < text.size()) {
    int sign = 1;
    if (text[p] == '+' || text[p] == '-') {
      sign = text[p] == '-' ? -1 : 1;
      ++p;
    } else if (p != 0) {
      fail();
    }
    int mult = 1;
    std::size_t q = p;
    while (q < text.size() && std::isdigit(static_cast<unsigned char>(text[q]))) ++q;
    if (q > p) mult = std::stoi(std::string(text.substr(p, q - p)));
    p = q;
    if (p >= text.size() || (text[p] != 'L' && text[p] != 'l')) fail();
    ++p;
    q = p;
    while (q < text.size() && std::isdigit(static_cast<unsigned char>(text[q]))) ++q;
    if (q == p) fail();
    int idx = std::stoi(std::string(text.substr(p, q - p)));
    p = q;
    if (idx < 1 || idx > len) throw std::invalid_argument("root '" + std::string(text) + "' uses L" + std::to_string(idx) + " outside 1.." + std::to_string(len));
    r.coefficients[ix(idx)] += sign * mult;
  }
  return r;
}

std::string root_name(const Root& r) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < r.coefficients.size(); ++i) {
    int c = r.coefficients[i];
    if (c == 0) continue;
    if (c < 0) os << "-";
    else if (!first) os << "+";
    if (std::abs(c) != 1) os << std::abs(c);
    os << "L" << i + 1;
    first = false;
  }
  return first ? "0" : os.str();
}

bool RootSystem::is_positive(const Root& r) const {
  return std::find(positive_roots.begin(), positive_roots.end(), r) != positive_roots.end();
}

bool RootSystem::contains(const Root& r) const { return is_positive(r) || is_positive(-r); }

RootSystem positive_roots(Family f, int rank) {
  RootSystem rs{f, rank, ambient_dimension(f, rank), {}};
  auto make = [&](std::initializer_list<std::pair<int, int>> entries) {
    Root r;
    r.coefficients.assign(static_cast<std::size_t>(f == Family::A ? rs.n : rank), 0);
    for (auto [i, c] : entries) r.coefficients[ix(i)] += c;
    rs.positive_roots.push_back(std::move(r));
  };
  if (f == Family::A) {
    for (int i = 1; i <= rs.n; ++i)
      for (int j = i + 1; j <= rs.n; ++j) make({{i, 1}, {j, -1}});
  } else {
    for (int i = 1; i <= rank; ++i)
      for (int j = i + 1; j <= rank; ++j) {
        make({{i, 1}, {j, -1}});
        make({{i, 1}, {j, 1}});
      }
    if (f == Family::B)
      for (int i = 1; i <= rank; ++i) make({{i, 1}});
    if (f == Family::C)
      for (int i = 1; i <= rank; ++i) make({{i, 2}});
  }
  std::sort(rs.positive_roots.begin(), rs.positive_roots.end(), std::greater<>());
  return rs;
}

int scaled_height(Family f, int rank, const Root& r) {
  const int n = ambient_dimension(f, rank);
  int h = 0;
  for (std::size_t k = 0; k < r.coefficients.size(); ++k) {
    const int i = static_cast<int>(k) + 1;
    int weight = 0;
    switch (f) {
      case Family::A: weight = n - i; break;
      case Family::B: weight = rank - i + 1; break;
      case Family::C: weight = 2 * rank - 2 * i + 1; break;
      case Family::D: weight = rank - i; break;
      case Family::Matrix: break;
    }
    h += r.coefficients[k] * weight;
  }
  return h;
}

QMatrix root_subgroup_matrix(Family f, int rank, const Root& r) {
  RootSystem rs = positive_roots(f, rank);
  if (!rs.contains(r)) throw std::invalid_argument("root " + root_name(r) + " is not in " + family_name(f) + std::to_string(rank));
  const bool positive = rs.is_positive(r);
  const Root pos = positive ? r : -r;
  const int n = rs.n;
  const int l = rank;
  const std::size_t nn = static_cast<std::size_t>(n);
  QMatrix g(nn, nn);
  std::vector<int> support;
  for (std::size_t k = 0; k < pos.coefficients.size(); ++k)
    if (pos.coefficients[k] != 0) support.push_back(static_cast<int>(k) + 1);

  if (f == Family::A) {
    g = unit_matrix(nn, support[0], support[1]);
  } else if (support.size() == 2) {
    const int i = support[0], j = support[1];
    if (pos.coefficients[ix(j)] < 0) {
      g = unit_matrix(nn, i, j) - unit_matrix(nn, l + j, l + i);
    } else if (f == Family::C) {
      g = unit_matrix(nn, i, l + j) + unit_matrix(nn, j, l + i);
    } else {
      g = unit_matrix(nn, j, l + i) - unit_matrix(nn, i, l + j);
    }
  } else {
    const int i = support[0];
    if (f == Family::C)
      g = unit_matrix(nn, i, l + i);
    else
      g = unit_matrix(nn, i, n) - unit_matrix(nn, n, l + i);
  }
  return positive ? g : g.transpose();
}

std::optional<QMatrix> bilinear_form(Family f, int rank) {
  if (f == Family::A || f == Family::Matrix) return std::nullopt;
  const int n = ambient_dimension(f, rank);
  const std::size_t nn = static_cast<std::size_t>(n);
  QMatrix j(nn, nn);
  for (int i = 1; i <= rank; ++i) {
    j(ix(i), ix(rank + i)) = 1;
    j(ix(rank + i), ix(i)) = f == Family::C ? -1 : 1;
  }
  if (f == Family::B) j(ix(n), ix(n)) = 1;
  return j;
}

bool preserves_form_infinitesimally(const QMatrix& a, const QMatrix& j) {
  return (a.transpose() * j + j * a).is_zero_matrix();
}

bool preserves_form(const QMatrix& g, const QMatrix& j) { return g.transpose() * j * g == j; }

std::vector<int> flag_permutation(Family f, int rank) {
  const int n = ambient_dimension(f, rank);
  std::vector<int> sigma;
  if (f == Family::A) {
    sigma.resize(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 1);
    return sigma;
  }
  for (int i = 1; i <= rank; ++i) sigma.push_back(i);
  if (f == Family::B) sigma.push_back(n);
  for (int i = 2 * rank; i > rank; --i) sigma.push_back(i);
  return sigma;
}

namespace {

exact::SparseVector flatten(const QMatrix& m, const std::vector<int>* columns = nullptr) {
  exact::SparseVector v;
  const std::size_t n = m.cols();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < n; ++c) {
      if (columns && std::find(columns->begin(), columns->end(), static_cast<int>(c) + 1) == columns->end()) continue;
      if (!exact::is_zero(m(r, c))) v.emplace(static_cast<int>(r * n + c), m(r, c));
    }
  return v;
}

std::size_t span_rank(const std::vector<QMatrix>& mats, const std::vector<int>* columns) {
  exact::EchelonBasis e;
  for (const auto& m : mats) e.insert(flatten(m, columns));
  return e.rank();
}

}  // namespace

void validate(const MatrixLieData& d) {
  if (d.n < 1) throw std::invalid_argument("MatrixLieData: n must be positive");
  const std::size_t nn = static_cast<std::size_t>(d.n);
  auto check_shape = [&](const QMatrix& m, const char* what) {
    if (m.rows() != nn || m.cols() != nn) throw std::invalid_argument(std::string("MatrixLieData: ") + what + " has wrong size");
  };
  for (const auto& m : d.basis) {
    check_shape(m, "basis element");
    if (!exact::is_zero(exact::trace(m))) throw std::invalid_argument("MatrixLieData: basis element is not traceless");
  }
  if (span_rank(d.basis, nullptr) != d.basis.size()) throw std::invalid_argument("MatrixLieData: basis is linearly dependent");
  for (const auto& t : d.torus_basis) {
    check_shape(t, "torus element");
    for (std::size_t r = 0; r < nn; ++r)
      for (std::size_t c = 0; c < nn; ++c)
        if (r != c && !exact::is_zero(t(r, c))) throw std::invalid_argument("MatrixLieData: torus element is not diagonal");
    std::vector<QMatrix> extended = d.basis;
    extended.push_back(t);
    if (span_rank(extended, nullptr) != d.basis.size()) throw std::invalid_argument("MatrixLieData: torus element outside span(basis)");
  }
  if (d.form) {
    check_shape(*d.form, "form");
    for (const auto& m : d.basis)
      if (!preserves_form_infinitesimally(m, *d.form)) throw std::invalid_argument("MatrixLieData: basis element does not preserve the form");
  }
  std::vector<int> sorted = d.sigma;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> ids(nn);
  std::iota(ids.begin(), ids.end(), 1);
  if (sorted != ids) throw std::invalid_argument("MatrixLieData: sigma is not a permutation of 1..n");
}

MatrixLieData classical_algebra(Family f, int rank) {
  MatrixLieData d;
  d.n = ambient_dimension(f, rank);
  const std::size_t nn = static_cast<std::size_t>(d.n);
  d.sigma = flag_permutation(f, rank);
  d.form = bilinear_form(f, rank);
  if (f == Family::A) {
    for (int i = 1; i <= d.n; ++i)
      for (int j = 1; j <= d.n; ++j)
        if (i != j) d.basis.push_back(unit_matrix(nn, i, j));
    for (int i = 1; i < d.n; ++i) d.torus_basis.push_back(unit_matrix(nn, i, i) - unit_matrix(nn, i + 1, i + 1));
  } else {
    RootSystem rs = positive_roots(f, rank);
    for (const auto& r : rs.positive_roots) d.basis.push_back(root_subgroup_matrix(f, rank, r));
    for (const auto& r : rs.positive_roots) d.basis.push_back(root_subgroup_matrix(f, rank, -r));
    for (int i = 1; i <= rank; ++i) d.torus_basis.push_back(unit_matrix(nn, i, i) - unit_matrix(nn, rank + i, rank + i));
  }
  d.basis.insert(d.basis.end(), d.torus_basis.begin(), d.torus_basis.end());
  return d;
}

MatrixLieData borel_subalgebra(Family f, int rank) {
  MatrixLieData full = classical_algebra(f, rank);
  MatrixLieData d;
  d.n = full.n;
  d.sigma = full.sigma;
  d.form = full.form;
  d.torus_basis = full.torus_basis;
  if (f == Family::A) {
    for (int i = 1; i <= d.n; ++i)
      for (int j = i + 1; j <= d.n; ++j) d.basis.push_back(unit_matrix(static_cast<std::size_t>(d.n), i, j));
  } else {
    for (const auto& r : positive_roots(f, rank).positive_roots) d.basis.push_back(root_subgroup_matrix(f, rank, r));
  }
  d.basis.insert(d.basis.end(), d.torus_basis.begin(), d.torus_basis.end());
  return d;
}

bool is_generating(const MatrixLieData& d, const std::vector<int>& columns) {
  return span_rank(d.basis, &columns) == span_rank(d.basis, nullptr);
}

GeneratingSubsets find_generating_subsets(const MatrixLieData& d) {
  if (d.n > 16) throw std::invalid_argument("find_generating_subsets: n too large for exhaustive search");
  GeneratingSubsets out;
  const unsigned full = 1u << d.n;
  std::vector<bool> generating(full, false);
  auto cols_of = [&](unsigned mask) {
    std::vector<int> c;
    for (int i = 0; i < d.n; ++i)
      if (mask & (1u << i)) c.push_back(i + 1);
    return c;
  };
  for (unsigned mask = 0; mask < full; ++mask) generating[mask] = is_generating(d, cols_of(mask));
  for (unsigned mask = 0; mask < full; ++mask) {
    if (!generating[mask]) continue;
    bool minimal = true;
    for (int i = 0; i < d.n && minimal; ++i)
      if ((mask & (1u << i)) && generating[mask & ~(1u << i)]) minimal = false;
    if (minimal) out.minimal.push_back(cols_of(mask));
  }
  std::sort(out.minimal.begin(), out.minimal.end());
  if (!out.minimal.empty()) out.canonical = out.minimal.front();
  return out;
}

}  // namespace usinv::rootsys
