#include "usinv/limits.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "usinv/invars.hpp"
#include "usinv/stab.hpp"

namespace usinv::limits {

namespace {

using Slices = std::map<int, MultiVector<Rational>>;  // t-exponent -> coefficients

void require_flag_unitriangular(const QMatrix& u, const std::vector<int>& sigma) {
  const std::size_t n = sigma.size();
  if (u.rows() != n || u.cols() != n) throw std::invalid_argument("limit: conjugator has the wrong size");
  std::vector<std::size_t> pos(n + 1);
  for (std::size_t k = 0; k < n; ++k) pos[static_cast<std::size_t>(sigma[k])] = k;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational want = i == j ? 1 : 0;
      if (pos[i + 1] >= pos[j + 1] && u(i, j) != want)
        throw std::invalid_argument("limit: conjugators of a weighted point must be sigma-upper unitriangular");
    }
}

bool has_weighted_summand(const MultiVector<Rational>& p) {
  return std::any_of(p.summands().begin(), p.summands().end(), [](const auto& s) { return s.alpha > 0; });
}

void check_square(const QMatrix& m, int n) {
  if (static_cast<int>(m.rows()) != n || static_cast<int>(m.cols()) != n)
    throw std::invalid_argument("limit: conjugator has the wrong size");
}

}  // namespace

void check_cocharacter(Family f, int rank, const std::vector<int>& w) {
  const int n = rootsys::ambient_dimension(f, rank);
  if (f != Family::Matrix && static_cast<int>(w.size()) != n)
    throw std::invalid_argument("cocharacter must have " + std::to_string(n) + " weights");
  switch (f) {
    case Family::A:
      if (std::accumulate(w.begin(), w.end(), 0L) != 0) throw std::invalid_argument("cocharacter: weights must sum to 0");
      break;
    case Family::B:
    case Family::C:
    case Family::D:
      for (int i = 0; i < rank; ++i)
        if (w[static_cast<std::size_t>(rank + i)] != -w[static_cast<std::size_t>(i)])
          throw std::invalid_argument("cocharacter: need w_{l+i} = -w_i");
      if (f == Family::B && w.back() != 0) throw std::invalid_argument("cocharacter: need w_n = 0 in type B");
      break;
    case Family::Matrix:
      break;
  }
}

std::vector<std::vector<int>> cocharacter_grid(Family f, int rank, int radius) {
  if (radius < 0) throw std::invalid_argument("grid radius must be non-negative");
  if (f == Family::Matrix) throw std::invalid_argument("cocharacter grid needs a classical family");
  const int n = rootsys::ambient_dimension(f, rank);
  const int free = f == Family::A ? n - 1 : rank;
  std::vector<std::vector<int>> out;
  std::vector<int> head(static_cast<std::size_t>(free), -radius);
  while (true) {
    std::vector<int> w(static_cast<std::size_t>(n), 0);
    bool ok = true;
    if (f == Family::A) {
      std::copy(head.begin(), head.end(), w.begin());
      const int last = -std::accumulate(head.begin(), head.end(), 0);
      ok = std::abs(last) <= radius;
      w.back() = last;
    } else {
      for (int i = 0; i < rank; ++i) {
        w[static_cast<std::size_t>(i)] = head[static_cast<std::size_t>(i)];
        w[static_cast<std::size_t>(rank + i)] = -head[static_cast<std::size_t>(i)];
      }
    }
    if (ok) out.push_back(std::move(w));
    int k = free - 1;
    while (k >= 0 && head[static_cast<std::size_t>(k)] == radius) head[static_cast<std::size_t>(k--)] = -radius;
    if (k < 0) break;
    ++head[static_cast<std::size_t>(k)];
  }
  return out;
}

LimitOutcome cochar_limit(const MultiVector<Rational>& p, const std::vector<int>& sigma, const std::vector<int>& w,
                          const std::optional<QMatrix>& u, const std::optional<QMatrix>& u_after) {
  const int n = p.n();
  if (static_cast<int>(w.size()) != n || static_cast<int>(sigma.size()) != n)
    throw std::invalid_argument("limit: cocharacter and sigma must have length n");
  const bool weighted = has_weighted_summand(p);
  for (const auto* m : {&u, &u_after})
    if (*m) {
      check_square(**m, n);
      if (weighted) require_flag_unitriangular(**m, sigma);
    }
  const MultiVector<Rational> start = u ? exact::wedge_apply_group(*u, p) : p;

  int flag_exponent = 0;
  for (int k = 0, partial = 0; k < n; ++k) {
    partial += w[static_cast<std::size_t>(sigma[static_cast<std::size_t>(k)] - 1)];
    flag_exponent += partial;
  }

  Slices slices;
  for (std::size_t s = 0; s < start.size(); ++s) {
    const auto& src = start.summands()[s];
    for (const auto& [t, c] : src.coeffs) {
      int e = src.alpha * flag_exponent;
      for (int i : t) e += w[static_cast<std::size_t>(i - 1)];
      auto it = slices.find(e);
      if (it == slices.end()) it = slices.emplace(e, start.empty_like()).first;
      it->second.summands()[s].add(t, c);
    }
  }
  if (u_after)
    for (auto& [e, v] : slices) v = exact::wedge_apply_group(*u_after, v);

  LimitOutcome out;
  out.value = start.empty_like();
  out.converges = true;
  std::map<std::pair<std::size_t, Tuple>, LedgerEntry> lowest;
  for (const auto& [e, v] : slices)  // ascending exponent
    for (std::size_t s = 0; s < v.size(); ++s)
      for (const auto& [t, c] : v.summands()[s].coeffs) {
        auto [it, inserted] = lowest.try_emplace({s, t}, LedgerEntry{s, v.summands()[s].label, t, e, c});
        (void)it;
        if (inserted && e < 0) out.converges = false;
        if (e == 0) out.value.summands()[s].add(t, c);
      }
  for (auto& [key, entry] : lowest) out.ledger.push_back(std::move(entry));
  return out;
}

LimitOutcome cochar_limit(const points::WeightedPoint& p, Family f, int rank, const std::vector<int>& w,
                          const std::optional<QMatrix>& u, const std::optional<QMatrix>& u_after) {
  check_cocharacter(f, rank, w);
  return cochar_limit(p.vector, p.sigma, w, u, u_after);
}

ExponentReport exponent_lemma_check(const std::vector<int>& w, const std::vector<int>& sigma) {
  if (w.size() != sigma.size()) throw std::invalid_argument("exponent check: w and sigma differ in length");
  std::vector<int> seen(w.size(), 0);
  for (int s : sigma) {
    if (s < 1 || s > static_cast<int>(w.size()) || seen[static_cast<std::size_t>(s - 1)]++)
      throw std::invalid_argument("exponent check: sigma is not a permutation");
  }
  ExponentReport r;
  int partial = 0;
  bool nonneg = true;
  for (int s : sigma) {
    partial += w[static_cast<std::size_t>(s - 1)];
    r.partial_sums.push_back(partial);
    r.exponent += partial;
    if (partial < 0) nonneg = false;
  }
  r.hypotheses_met = nonneg && std::any_of(w.begin(), w.end(), [](int x) { return x > 0; });
  r.positive = r.exponent > 0;
  r.plus = std::all_of(w.begin(), w.end(), [&](int x) { return 2 * r.exponent + x > 0; });
  r.minus = std::all_of(w.begin(), w.end(), [&](int x) { return 2 * r.exponent - x > 0; });
  return r;
}

ExponentSweep exponent_lemma_sweep(int n_max, int radius) {
  if (n_max < 1 || radius < 0) throw std::invalid_argument("exponent sweep: need n_max >= 1 and radius >= 0");
  ExponentSweep sweep;
  for (int n = 1; n <= n_max; ++n) {
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 1);
    std::vector<int> w(static_cast<std::size_t>(n), -radius);
    while (true) {
      ++sweep.cases;
      auto r = exponent_lemma_check(w, sigma);
      if (r.hypotheses_met) ++sweep.hypotheses_met;
      if (!r.holds()) sweep.counterexamples.push_back(w);
      int k = n - 1;
      while (k >= 0 && w[static_cast<std::size_t>(k)] == radius) w[static_cast<std::size_t>(k--)] = -radius;
      if (k < 0) break;
      ++w[static_cast<std::size_t>(k)];
    }
  }
  return sweep;
}

WedgeCoefficientReport wedge_coefficient_check(const subsets::ColumnFamily& c, int s, int t) {
  const int n = c.n();
  if (t < 1 || t > n || s < 1 || s >= t) throw std::invalid_argument("wedge check: need 1 <= s < t <= n");
  const auto& st = c[t];
  if (std::binary_search(st.begin(), st.end(), s)) throw std::invalid_argument("wedge check: s must lie outside S_t");
  auto b_var = [n](int i, int j) { return Poly::variable(invars::var_id(n, i, j)); };

  exact::Matrix<Poly> b(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i <= j; ++i) {
      const auto& sj = c[j];
      if (i != j && std::binary_search(sj.begin(), sj.end(), i)) continue;
      b(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = b_var(i, j);
    }

  WedgeCoefficientReport r;
  r.s = s;
  r.t = t;
  r.column_set = st;
  MultiVector<Poly> v(n);
  v.push_pure(st, "S_t");
  const auto image = exact::wedge_apply_group(b, v);

  Tuple target;
  Poly product = b_var(s, t);
  for (int i : st)
    if (i != t) {
      target.push_back(i);
      product *= b_var(i, i);
    }
  target.push_back(s);
  r.sign = exact::sort_with_sign(target);
  r.target = target;
  const auto& coeffs = image.summands().front().coeffs;
  auto it = coeffs.find(target);
  if (it != coeffs.end()) r.coefficient = it->second;
  r.expected = product * Rational(r.sign);
  r.verified = r.coefficient == r.expected;
  r.magnitude_matches = r.verified || r.coefficient == -r.expected;
  return r;
}

ScreenReport grosshans_screen(const subsets::ClosedSubset& s, const points::PointOptions& opt, int radius, int jobs) {
  if (s.family == Family::Matrix) throw std::invalid_argument("screen needs a classical family");
  const auto algebra = rootsys::classical_algebra(s.family, s.rank);
  const auto point = points::build_point(s, opt);
  const auto grid = cocharacter_grid(s.family, s.rank, radius);
  const int full = static_cast<int>(algebra.basis.size());

  ScreenReport rep;
  rep.radius = radius;
  rep.cocharacters = static_cast<long>(grid.size());
  rep.uS_dimension = static_cast<int>(stab::u_s_basis(s, algebra).size());
  rep.point_stabilizer_dimension = stab::lie_stabilizer(point, algebra).dimension;

  struct Cell {
    bool converged = false;
    int dimension = 0;
    MultiVector<Rational> limit;
  };
  std::vector<Cell> cells(grid.size());
  auto work = [&](std::size_t from, std::size_t step) {
    for (std::size_t k = from; k < grid.size(); k += step) {
      auto lim = cochar_limit(point, s.family, s.rank, grid[k]);
      Cell& c = cells[k];
      c.converged = lim.converges;
      if (!c.converged) continue;
      c.dimension = lim.value.is_zero_vector() ? full : stab::lie_stabilizer(lim.value, point.sigma, algebra).dimension;
      c.limit = std::move(lim.value);
    }
  };
  const std::size_t threads = static_cast<std::size_t>(std::max(1, jobs));
  std::vector<std::future<void>> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.push_back(std::async(std::launch::async, work, t, threads));
  work(0, threads);
  for (auto& f : pool) f.get();

  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Cell& c = cells[k];
    if (!c.converged) continue;
    ++rep.converged;
    const int excess = c.dimension - rep.uS_dimension;
    ++rep.excess_histogram[excess];
    if (excess == 1) rep.witnesses.push_back({grid[k], c.dimension, excess, c.limit});
    if (c.dimension < rep.point_stabilizer_dimension) rep.semicontinuity_violations.push_back(grid[k]);
  }
  return rep;
}

}  // namespace usinv::limits
