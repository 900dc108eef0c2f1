#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles/dense.hpp"
#include "usinv/invars.hpp"
#include "usinv/limits.hpp"

using namespace usinv::limits;
using usinv::exact::Summand;
using usinv::exact::unit_matrix;
using usinv::points::AlphaPolicy;
using usinv::points::build_point;
using usinv::subsets::closed_subset_a;
using usinv::subsets::column_sets;

namespace {

const usinv::points::PointOptions kMinimal{std::nullopt, AlphaPolicy::Minimal, {}};

usinv::subsets::ClosedSubset boundary_example() {
  return closed_subset_a(4, {{1, 2}, {1, 3}, {1, 4}, {2, 4}, {3, 4}});
}

const LedgerEntry* find_entry(const LimitOutcome& o, const std::string& label, const Tuple& t) {
  for (const auto& e : o.ledger)
    if (e.label == label && e.tuple == t) return &e;
  return nullptr;
}

// Lowest t-exponents of u'·λ(t)·u·p computed with λ shifted by t^shift so that
// every entry is a polynomial in one variable t (variable 0).
std::map<std::pair<std::size_t, Tuple>, int> shifted_oracle(const MultiVector<Rational>& p, const std::vector<int>& w,
                                                            const QMatrix& u, const QMatrix& u2, int shift) {
  const std::size_t n = w.size();
  usinv::exact::Matrix<Poly> lam(n, n);
  for (std::size_t i = 0; i < n; ++i)
    lam(i, i) = Poly::term(usinv::exact::Monomial::variable(0, w[i] + shift), 1);
  auto pu = usinv::points::to_poly_matrix(u), pu2 = usinv::points::to_poly_matrix(u2);
  auto g = pu2 * lam * pu;
  auto img = usinv::exact::wedge_apply_group(g, usinv::exact::to_poly(p));
  std::map<std::pair<std::size_t, Tuple>, int> out;
  for (std::size_t s = 0; s < img.size(); ++s)
    for (const auto& [t, c] : img.summands()[s].coeffs)
      out[{s, t}] = c.terms().begin()->first.degree() - img.summands()[s].k * shift;
  return out;
}

QMatrix random_unitriangular(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-2, 2);
  QMatrix u = QMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) u(i, j) = d(rng);
  return u;
}

}  // namespace

TEST_CASE("cocharacter constraints and grids") {
  CHECK_NOTHROW(check_cocharacter(Family::A, 3, {1, -1, -1, 1}));
  CHECK_THROWS_AS(check_cocharacter(Family::A, 3, {1, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(check_cocharacter(Family::A, 3, {1, -1}), std::invalid_argument);
  CHECK_NOTHROW(check_cocharacter(Family::C, 2, {2, 1, -2, -1}));
  CHECK_THROWS_AS(check_cocharacter(Family::D, 2, {2, 1, -2, 1}), std::invalid_argument);
  CHECK_NOTHROW(check_cocharacter(Family::B, 2, {2, 1, -2, -1, 0}));
  CHECK_THROWS_AS(check_cocharacter(Family::B, 2, {2, 1, -2, -1, 1}), std::invalid_argument);
  CHECK(cocharacter_grid(Family::A, 1, 3).size() == 7);
  CHECK(cocharacter_grid(Family::B, 2, 3).size() == 49);
  auto a3 = cocharacter_grid(Family::A, 2, 1);
  CHECK(a3.size() == 7);  // (a, b, -a-b) with |a+b| <= 1
  CHECK(std::is_sorted(a3.begin(), a3.end()));
  for (const auto& w : cocharacter_grid(Family::A, 3, 2)) CHECK_NOTHROW(check_cocharacter(Family::A, 3, w));
}

TEST_CASE("boundary example: unweighted limit along (1,-1,-1,1)") {
  auto p = build_point(boundary_example());
  auto lim = cochar_limit(p, Family::A, 3, {1, -1, -1, 1});
  CHECK(lim.converges);
  MultiVector<Rational> expect(4);
  Summand<Rational> zero;
  zero.k = 1;
  zero.label = "S_1";
  expect.push(zero);
  expect.push_pure({1, 2}, "S_2");
  expect.push_pure({1, 3}, "S_3");
  expect.push_pure({1, 2, 3, 4}, "S_4");
  CHECK(lim.value == expect);
  auto e1 = find_entry(lim, "S_1", {1});
  REQUIRE(e1);
  CHECK(e1->exponent == 1);
}

TEST_CASE("boundary example: the weighted point diverges through its flag summand") {
  auto p = build_point(boundary_example(), kMinimal);
  CHECK(p.alpha == std::vector<int>{1, 7, 45, 363});
  auto lim = cochar_limit(p, Family::A, 3, {1, -1, -1, 1});
  CHECK_FALSE(lim.converges);
  auto f3 = find_entry(lim, "f_3", {1, 2, 3});
  REQUIRE(f3);
  CHECK(f3->exponent == -1);
  int negative = 0;
  for (const auto& e : lim.ledger)
    if (e.exponent < 0) ++negative;
  CHECK(negative == 1);
}

TEST_CASE("zero cocharacter is the identity") {
  for (const auto& s : usinv::subsets::enumerate_closed(3)) {
    auto p = build_point(s, kMinimal);
    auto lim = cochar_limit(p, Family::A, 2, {0, 0, 0});
    CHECK(lim.converges);
    CHECK(lim.value == p.vector);
  }
}

TEST_CASE("exponents are additive over wedge factors") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> wd(-4, 4);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 5;
    std::vector<int> w(n);
    for (auto& x : w) x = wd(rng);
    MultiVector<Rational> p(n);
    for (int i = 1; i <= n; ++i) p.push_pure({i}, "e" + std::to_string(i));
    Tuple t;
    for (int i = 1; i <= n; ++i)
      if (rng() % 2) t.push_back(i);
    if (t.empty()) continue;
    p.push_pure(t, "prod");
    auto lim = cochar_limit(p, {1, 2, 3, 4, 5}, w);
    int sum = 0;
    for (int i : t) sum += find_entry(lim, "e" + std::to_string(i), {i})->exponent;
    CHECK(find_entry(lim, "prod", t)->exponent == sum);
  }
}

TEST_CASE("Laurent expansion with conjugators agrees with the shifted polynomial curve") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> wd(-3, 3), cd(-2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial % 2;
    std::vector<int> w(static_cast<std::size_t>(n));
    for (auto& x : w) x = wd(rng);
    MultiVector<Rational> p(n);
    for (int k = 1; k <= n; ++k) {
      Summand<Rational> s;
      s.k = k;
      s.label = "v" + std::to_string(k);
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != k) continue;
        Tuple t;
        for (int i = 0; i < n; ++i)
          if (mask & (1u << i)) t.push_back(i + 1);
        s.add(t, cd(rng));
      }
      p.push(s);
    }
    auto u = random_unitriangular(rng, static_cast<std::size_t>(n));
    auto u2 = random_unitriangular(rng, static_cast<std::size_t>(n)).transpose();
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 1);
    auto lim = cochar_limit(p, sigma, w, u, u2);
    auto oracle_exp = shifted_oracle(p, w, u, u2, 3);
    CHECK(lim.ledger.size() == oracle_exp.size());
    bool converges = true;
    for (const auto& e : lim.ledger) {
      auto it = oracle_exp.find({e.summand, e.tuple});
      REQUIRE(it != oracle_exp.end());
      CHECK(it->second == e.exponent);
      if (e.exponent < 0) converges = false;
    }
    CHECK(lim.converges == converges);
  }
}

TEST_CASE("conjugating by an element of U_S does not move p_S") {
  auto s = closed_subset_a(4, {{1, 3}, {2, 4}});
  auto p = build_point(s, kMinimal);
  QMatrix u = QMatrix::identity(4) + unit_matrix(4, 1, 3).scaled(5) + unit_matrix(4, 2, 4).scaled(-2);
  std::vector<int> w{2, 1, -1, -2};
  auto a = cochar_limit(p, Family::A, 3, w);
  auto b = cochar_limit(p, Family::A, 3, w, u);
  CHECK(a.converges == b.converges);
  CHECK(a.value == b.value);
  QMatrix lower = QMatrix::identity(4) + unit_matrix(4, 3, 1);
  CHECK_THROWS_AS(cochar_limit(p, Family::A, 3, w, lower), std::invalid_argument);
  CHECK_THROWS_AS(cochar_limit(p, Family::A, 3, {1, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("exponent inequalities") {
  auto r = exponent_lemma_check({1, -1}, {1, 2});
  CHECK(r.hypotheses_met);
  CHECK(r.partial_sums == std::vector<int>{1, 0});
  CHECK(r.exponent == 1);
  CHECK(r.positive);
  CHECK(r.plus);
  CHECK(r.minus);
  auto z = exponent_lemma_check({0, 0, 0}, {1, 2, 3});
  CHECK_FALSE(z.hypotheses_met);
  CHECK(z.holds());
  CHECK_FALSE(exponent_lemma_check({-1, 2}, {1, 2}).hypotheses_met);
  CHECK(exponent_lemma_check({-1, 2}, {2, 1}).hypotheses_met);
  CHECK_THROWS_AS(exponent_lemma_check({1, -1}, {1, 1}), std::invalid_argument);
}

TEST_CASE("exponent sum equals the weighted diagonal exponent, and the sweep has no counterexample") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> wd(-4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 5;
    std::vector<int> w(static_cast<std::size_t>(n)), sigma(static_cast<std::size_t>(n));
    for (auto& x : w) x = wd(rng);
    std::iota(sigma.begin(), sigma.end(), 1);
    std::shuffle(sigma.begin(), sigma.end(), rng);
    int bracket = 0;
    for (int i = 1; i <= n; ++i) bracket += (n - i + 1) * w[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i - 1)] - 1)];
    CHECK(exponent_lemma_check(w, sigma).exponent == bracket);
  }
  auto sweep = exponent_lemma_sweep(5, 4);
  long total = 0;
  for (int n = 1; n <= 5; ++n) total += static_cast<long>(std::pow(9, n));
  CHECK(sweep.cases == total);
  CHECK(sweep.hypotheses_met > 0);
  CHECK(sweep.counterexamples.empty());
}

TEST_CASE("wedge coefficient: worked examples") {
  auto c = column_sets(closed_subset_a(4, {{1, 3}, {2, 4}}));
  auto r = wedge_coefficient_check(c, 1, 4);
  const int n = 4;
  auto b = [&](int i, int j) { return Poly::variable(usinv::invars::var_id(n, i, j)); };
  CHECK(r.target == Tuple{1, 2});
  CHECK(r.sign == -1);
  CHECK(r.coefficient == -(b(1, 4) * b(2, 2)));
  CHECK(r.verified);
  auto single = wedge_coefficient_check(c, 1, 2);
  CHECK(single.sign == 1);
  CHECK(single.coefficient == b(1, 2));
  CHECK(single.verified);
  CHECK_THROWS_AS(wedge_coefficient_check(c, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(wedge_coefficient_check(c, 3, 2), std::invalid_argument);
}

TEST_CASE("wedge coefficient: every closed subset of SL_4 and 20 random ones of SL_5") {
  auto check_all = [](const usinv::subsets::ClosedSubset& s) {
    auto c = column_sets(s);
    const int n = s.n;
    for (int t = 1; t <= n; ++t)
      for (int sv = 1; sv < t; ++sv) {
        if (std::binary_search(c[t].begin(), c[t].end(), sv)) continue;
        auto r = wedge_coefficient_check(c, sv, t);
        CHECK(r.verified);
        // Cauchy-Binet: the coefficient is the minor of b on rows `target`, columns S_t.
        usinv::exact::Matrix<Poly> sub(r.target.size(), c[t].size());
        for (std::size_t i = 0; i < r.target.size(); ++i)
          for (std::size_t j = 0; j < c[t].size(); ++j) {
            const int row = r.target[i], col = c[t][j];
            const auto& sc = c[col];
            const bool zero = row > col || (row != col && std::binary_search(sc.begin(), sc.end(), row));
            if (!zero) sub(i, j) = Poly::variable(usinv::invars::var_id(n, row, col));
          }
        CHECK(usinv::points::poly_determinant(sub) == r.coefficient);
      }
  };
  for (const auto& s : usinv::subsets::enumerate_closed(4)) check_all(s);
  auto all5 = usinv::subsets::enumerate_closed(5);
  std::mt19937 rng(2024);
  std::uniform_int_distribution<std::size_t> pick(0, all5.size() - 1);
  for (int k = 0; k < 20; ++k) check_all(all5[pick(rng)]);
}

TEST_CASE("screen: unweighted boundary example has the excess-one witness at radius 1") {
  auto rep = grosshans_screen(boundary_example(), {}, 1);
  CHECK(rep.uS_dimension == 5);
  bool found = false;
  for (const auto& w : rep.witnesses)
    if (w.cocharacter == std::vector<int>{1, -1, -1, 1}) found = true;
  CHECK(found);
  CHECK_FALSE(rep.passed());
  CHECK(rep.semicontinuity_violations.empty());
}

TEST_CASE("screen: weighted points have no excess-one limits at radius 3") {
  auto rep = grosshans_screen(boundary_example(), kMinimal, 3, 4);
  CHECK(rep.witnesses.empty());
  CHECK(rep.semicontinuity_violations.empty());
  CHECK(rep.point_stabilizer_dimension == 5);
  CHECK(rep.converged >= 1);
  auto serial = grosshans_screen(boundary_example(), kMinimal, 3, 1);
  CHECK(serial.excess_histogram == rep.excess_histogram);

  auto empty = grosshans_screen(closed_subset_a(2, {}), kMinimal, 3);
  CHECK(empty.witnesses.empty());
  CHECK(empty.passed());
}

TEST_CASE("screen: rank-2 classical examples keep semicontinuity") {
  auto s = usinv::subsets::from_roots(Family::C, 2,
                                      {usinv::rootsys::parse_root("L1-L2", Family::C, 2),
                                       usinv::rootsys::parse_root("L1+L2", Family::C, 2),
                                       usinv::rootsys::parse_root("2L1", Family::C, 2)});
  auto rep = grosshans_screen(s, kMinimal, 2);
  CHECK(rep.cocharacters == 25);
  CHECK(rep.semicontinuity_violations.empty());
}
