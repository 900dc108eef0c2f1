#include <random>

#include "doctest.h"
#include "usinv/points.hpp"

using namespace usinv::points;
using usinv::exact::MultiVector;
using usinv::exact::Tuple;
using usinv::rootsys::parse_root;
using usinv::subsets::closed_subset_a;
using usinv::subsets::from_roots;

namespace {

std::vector<usinv::rootsys::Root> roots(Family f, int l, std::initializer_list<const char*> names) {
  std::vector<usinv::rootsys::Root> out;
  for (auto n : names) out.push_back(parse_root(n, f, l));
  return out;
}

Poly var(const UnipotentPattern& u, const std::string& name) {
  for (std::size_t k = 0; k < u.names.size(); ++k)
    if (u.names[k] == name) return Poly::variable(static_cast<int>(k));
  FAIL("no parameter " << name);
  return Poly();
}

PolyMatrix expected(std::size_t n, std::initializer_list<std::tuple<int, int, Poly>> entries) {
  PolyMatrix m = PolyMatrix::identity(n);
  for (const auto& [i, j, p] : entries) m(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = p;
  return m;
}

template <class F>
void for_each_closed_root_subset(Family f, int l, F&& fn) {
  auto pos = usinv::rootsys::positive_roots(f, l).positive_roots;
  for (unsigned mask = 0; mask < (1u << pos.size()); ++mask) {
    std::vector<usinv::rootsys::Root> sub;
    for (std::size_t b = 0; b < pos.size(); ++b)
      if (mask & (1u << b)) sub.push_back(pos[b]);
    if (usinv::subsets::roots_closed(f, l, sub)) fn(sub);
  }
}

// Structural checks shared by every family.
void check_pattern(const ClosedSubset& s, const UnipotentPattern& u) {
  CHECK(poly_determinant(u.matrix) == Poly(1));
  auto cols = usinv::subsets::column_sets(s);
  for (int i = 1; i <= s.n; ++i)
    for (int j = 1; j <= s.n; ++j) {
      const Poly& e = u.matrix(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
      bool allowed = std::binary_search(cols[j].begin(), cols[j].end(), i);
      if (!allowed) CHECK(e.is_zero());
      if (allowed && i != j) CHECK_FALSE(e.is_zero());
    }
  if (auto j = usinv::rootsys::bilinear_form(s.family, s.rank)) {
    PolyMatrix jp = to_poly_matrix(*j);
    CHECK(u.matrix.transpose() * jp * u.matrix == jp);
  }
  // U fixes p_S (and the flag wedges) under the group action.
  auto p = build_point(s, {std::nullopt, AlphaPolicy::Minimal, {}});
  auto pp = usinv::exact::to_poly(p.vector);
  CHECK(usinv::exact::wedge_apply_group(u.matrix, pp) == pp);
}

}  // namespace

TEST_CASE("regular subgroup pattern has a at (1,3) and b at (2,4)") {
  auto s = closed_subset_a(4, {{1, 3}, {2, 4}});
  auto u = build_us(s);
  REQUIRE(u.names.size() == 2);
  CHECK(u.matrix == expected(4, {{1, 3, Poly::variable(0)}, {2, 4, Poly::variable(1)}}));
  CHECK(u.names[0] == "a");
  check_pattern(s, u);
}

TEST_CASE("SO4 example matrix is reproduced entry by entry") {
  auto s = from_roots(Family::D, 2, roots(Family::D, 2, {"L1-L2", "L1+L2"}));
  auto u = build_us(s);
  Poly a = var(u, "a"), b = var(u, "b");
  CHECK(u.matrix == expected(4, {{1, 2, a}, {1, 3, a * b}, {1, 4, -b}, {2, 3, b}, {4, 3, -a}}));
  check_pattern(s, u);
  CHECK(so_parameter_property(u));
}

TEST_CASE("Sp4 example matrix is reproduced entry by entry") {
  auto s = from_roots(Family::C, 2, roots(Family::C, 2, {"L1-L2", "L1+L2", "2L1"}));
  auto u = build_us(s);
  Poly a = var(u, "a"), b = var(u, "b"), c = var(u, "c");
  CHECK(u.matrix == expected(4, {{1, 2, a}, {1, 3, c}, {1, 4, b}, {2, 3, b}, {4, 3, -a}}));
  check_pattern(s, u);
  CHECK_THROWS_AS(so_parameter_property(u), std::invalid_argument);
}

TEST_CASE("every closed subset in SL_n, n <= 4, gives a valid pattern") {
  for (int n = 2; n <= 4; ++n)
    for (const auto& s : usinv::subsets::enumerate_closed(n)) check_pattern(s, build_us(s));
}

TEST_CASE("every closed root subset of B2, C2, D2, B3, C3, D3 gives a valid pattern") {
  int count = 0;
  for (Family f : {Family::B, Family::C, Family::D})
    for (int l = 2; l <= 3; ++l)
      for_each_closed_root_subset(f, l, [&](const std::vector<usinv::rootsys::Root>& sub) {
        auto s = from_roots(f, l, sub);
        auto u = build_us(s);
        check_pattern(s, u);
        if (f != Family::C) CHECK(so_parameter_property(u));
        ++count;
      });
  CHECK(count > 20);
}

TEST_CASE("parameter property is vacuous for the empty subset") {
  auto s = from_roots(Family::D, 2, {});
  CHECK(so_parameter_property(build_us(s)));
}

TEST_CASE("random pattern from generic generators") {
  std::vector<QMatrix> gens{usinv::exact::unit_matrix(3, 1, 2), usinv::exact::unit_matrix(3, 2, 3).scaled(Rational(2))};
  auto u = build_us_from_generators(3, gens);
  CHECK(u.matrix(0, 1) == Poly::variable(0));
  CHECK(u.matrix(1, 2) == Poly::variable(1) * Rational(2));
  CHECK(poly_determinant(u.matrix) == Poly(1));
}

TEST_CASE("cofactor determinant agrees with the rational determinant") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> d(-3, 3);
  for (std::size_t n = 1; n <= 5; ++n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
    CHECK(poly_determinant(to_poly_matrix(m)) == Poly(usinv::exact::determinant(m)));
  }
}

TEST_CASE("minimal alpha and the growth conditions") {
  CHECK(minimal_alpha(4) == std::vector<int>{1, 7, 45, 363});
  CHECK(alpha_valid(minimal_alpha(4), 4));
  CHECK_FALSE(alpha_valid({1, 6, 45, 363}, 4));
  CHECK_FALSE(alpha_valid({1, 1, 1, 1}, 4));
  CHECK(alpha_valid({1, 8, 60, 500}, 4));
  CHECK_FALSE(alpha_valid({1, 7}, 4));
  // D2 with index set {3,4}: flag order visits 4 before 3.
  CHECK(minimal_alpha({1, 2, 4, 3}, {3, 4}) == std::vector<int>{11, 1});
  CHECK(alpha_valid({11, 1}, {1, 2, 4, 3}, {3, 4}));
  CHECK_FALSE(alpha_valid({10, 1}, {1, 2, 4, 3}, {3, 4}));
}

TEST_CASE("points for the worked examples") {
  auto s = closed_subset_a(4, {{1, 3}, {2, 4}});
  auto p = build_point(s);
  MultiVector<Rational> want(4);
  want.push_pure({1}, "S_1");
  want.push_pure({2}, "S_2");
  want.push_pure({1, 3}, "S_3");
  want.push_pure({2, 4}, "S_4");
  CHECK(p.vector == want);
  CHECK_FALSE(p.weighted());

  auto so4 = from_roots(Family::D, 2, roots(Family::D, 2, {"L1-L2", "L1+L2"}));
  auto q = build_point(so4);
  MultiVector<Rational> want_q(4);
  want_q.push_pure({1, 2, 3, 4}, "S_3");
  want_q.push_pure({1, 4}, "S_4");
  CHECK(q.vector == want_q);

  auto empty = closed_subset_a(3, {});
  auto e = build_point(empty);
  for (int j = 1; j <= 3; ++j) CHECK(e.vector.summands()[static_cast<std::size_t>(j - 1)].coeffs.count(Tuple{j}) == 1);
}

TEST_CASE("weighted point carries alpha and the full flag") {
  auto s = closed_subset_a(4, {{1, 3}, {2, 4}});
  auto p = build_point(s, {std::nullopt, AlphaPolicy::Minimal, {}});
  REQUIRE(p.weighted());
  CHECK(p.alpha == std::vector<int>{1, 7, 45, 363});
  CHECK(alpha_valid(p.alpha, p.sigma, p.index_set));
  REQUIRE(p.vector.size() == 8);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(p.vector.summands()[k].alpha == p.alpha[k]);
    CHECK(p.vector.summands()[4 + k].alpha == 0);
    CHECK(p.vector.summands()[4 + k].k == static_cast<int>(k) + 1);
  }
  CHECK_THROWS_AS(build_point(s, {std::nullopt, AlphaPolicy::Explicit, {1, 1, 1, 1}}), std::invalid_argument);
  CHECK_NOTHROW(build_point(s, {std::nullopt, AlphaPolicy::Explicit, {1, 8, 60, 500}}));
}

TEST_CASE("index set validation") {
  auto s = closed_subset_a(3, {{1, 2}});
  CHECK_THROWS_AS(build_point(s, {std::vector<int>{}, AlphaPolicy::None, {}}), std::invalid_argument);
  CHECK_THROWS_AS(build_point(s, {std::vector<int>{4}, AlphaPolicy::None, {}}), std::invalid_argument);
  CHECK_THROWS_AS(build_point(s, {std::vector<int>{1}, AlphaPolicy::None, {}}), std::invalid_argument);
  CHECK_NOTHROW(build_point(s, {std::vector<int>{2, 3}, AlphaPolicy::None, {}}));
}

TEST_CASE("Matrix family uses the canonical generating subset") {
  auto data = usinv::rootsys::borel_subalgebra(Family::D, 2);
  std::vector<QMatrix> gens{usinv::rootsys::root_subgroup_matrix(Family::D, 2, parse_root("L1-L2", Family::D, 2))};
  auto s = usinv::subsets::from_generators(4, gens);
  auto p = build_point(s, data);
  CHECK(p.index_set_is_convention);
  CHECK(p.index_set == usinv::rootsys::find_generating_subsets(data).canonical);
}
