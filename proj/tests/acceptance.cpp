// Acceptance run: one PASS/FAIL line per criterion, with wall-clock limits.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles/closed_bruteforce.hpp"
#include "oracles/invariants_dense.hpp"
#include "usinv/cli.hpp"
#include "usinv/invars.hpp"
#include "usinv/limits.hpp"
#include "usinv/points.hpp"
#include "usinv/stab.hpp"

using usinv::exact::MultiVector;
using usinv::exact::Poly;
using usinv::points::PolyMatrix;
using usinv::exact::Rational;
using usinv::rootsys::Family;
using usinv::subsets::ClosedSubset;
using usinv::subsets::closed_subset_a;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Records the first failing check with a short reason.
struct Checker {
  Outcome out;
  void require(bool cond, const std::string& what) {
    if (!cond && out.ok) {
      out.ok = false;
      out.detail = what;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (o.ok && secs >= limit_s) o = {false, "over the time limit"};
  if (!o.ok) ++failures;
  std::printf("%s [%2d] %s (%.2f s, limit %.0f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, name.c_str(), secs, limit_s,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  std::fflush(stdout);
}

const usinv::points::PointOptions kMinimal{std::nullopt, usinv::points::AlphaPolicy::Minimal, {}};

std::vector<usinv::rootsys::Root> roots(Family f, int l, std::initializer_list<const char*> names) {
  std::vector<usinv::rootsys::Root> out;
  for (auto n : names) out.push_back(usinv::rootsys::parse_root(n, f, l));
  return out;
}

std::vector<std::vector<usinv::rootsys::Root>> closed_root_subsets(Family f, int l) {
  auto pos = usinv::rootsys::positive_roots(f, l).positive_roots;
  std::vector<std::vector<usinv::rootsys::Root>> out;
  for (unsigned mask = 0; mask < (1u << pos.size()); ++mask) {
    std::vector<usinv::rootsys::Root> sub;
    for (std::size_t b = 0; b < pos.size(); ++b)
      if (mask & (1u << b)) sub.push_back(pos[b]);
    if (usinv::subsets::roots_closed(f, l, sub)) out.push_back(sub);
  }
  return out;
}

std::vector<std::vector<int>> nonempty_subsets(int n) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i + 1);
    out.push_back(s);
  }
  return out;
}

MultiVector<Rational> pure_sum(int n, std::initializer_list<std::pair<std::vector<int>, const char*>> parts) {
  MultiVector<Rational> v(n);
  for (const auto& [t, label] : parts) v.push_pure(t, label);
  return v;
}

PolyMatrix pattern(std::size_t n, std::initializer_list<std::tuple<int, int, Poly>> entries) {
  PolyMatrix m = PolyMatrix::identity(n);
  for (const auto& [i, j, p] : entries) m(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = p;
  return m;
}

Poly param(const usinv::points::UnipotentPattern& u, const std::string& name) {
  for (std::size_t k = 0; k < u.names.size(); ++k)
    if (u.names[k] == name) return Poly::variable(static_cast<int>(k));
  throw std::runtime_error("pattern has no parameter " + name);
}

std::string run_cli(std::vector<std::string> args, int& code) {
  std::ostringstream out, err;
  code = usinv::cli::run(args, out, err);
  return out.str() + "\x1f" + err.str();
}

}  // namespace

int main() {
  criterion(1, "closed-subset enumeration matches the exhaustive filter", 1, [] {
    Checker c;
    for (int n = 1; n <= 4; ++n) {
      auto got = usinv::subsets::enumerate_closed(n);
      auto want = oracle::brute_force_closed(n);
      std::set<oracle::PairList> a, b(want.begin(), want.end());
      for (const auto& s : got) a.insert(s.pairs);
      c.require(got.size() == want.size() && a == b, "n=" + std::to_string(n) + " differs from the filter");
    }
    c.require(usinv::subsets::enumerate_closed(3).size() == 7, "n=3 count is not 7");
    c.out.detail = "n=3: 7, n=4: " + std::to_string(usinv::subsets::enumerate_closed(4).size());
    return c.out;
  });

  criterion(2, "worked examples reproduced exactly", 10, [] {
    Checker c;
    auto reg = closed_subset_a(4, {{1, 3}, {2, 4}});
    auto rc = usinv::subsets::column_sets(reg);
    c.require(rc[1] == std::vector<int>{1} && rc[2] == std::vector<int>{2} && rc[3] == std::vector<int>{1, 3} &&
                  rc[4] == std::vector<int>{2, 4},
              "regular subgroup column sets");
    auto ru = usinv::points::build_us(reg);
    c.require(ru.matrix == pattern(4, {{1, 3, Poly::variable(0)}, {2, 4, Poly::variable(1)}}), "regular subgroup U_S");
    c.require(usinv::points::build_point(reg).vector ==
                  pure_sum(4, {{{1}, "S_1"}, {{2}, "S_2"}, {{1, 3}, "S_3"}, {{2, 4}, "S_4"}}),
              "regular subgroup p_S");

    auto bnd = closed_subset_a(4, {{1, 2}, {1, 3}, {1, 4}, {2, 4}, {3, 4}});
    c.require(usinv::points::build_point(bnd).vector ==
                  pure_sum(4, {{{1}, "S_1"}, {{1, 2}, "S_2"}, {{1, 3}, "S_3"}, {{1, 2, 3, 4}, "S_4"}}),
              "boundary example p_S");

    const std::vector<std::vector<int>> rank2_sets{{}, {1}, {1, 2}, {1, 2, 3, 4}, {1, 4}};
    auto p_rank2 = pure_sum(4, {{{1, 2, 3, 4}, "S_3"}, {{1, 4}, "S_4"}});

    auto so4 = usinv::subsets::from_roots(Family::D, 2, roots(Family::D, 2, {"L1-L2", "L1+L2"}));
    auto su = usinv::points::build_us(so4);
    Poly a = param(su, "a"), b = param(su, "b");
    c.require(su.matrix == pattern(4, {{1, 2, a}, {1, 3, a * b}, {1, 4, -b}, {2, 3, b}, {4, 3, -a}}), "SO_4 U_S");
    auto sc = usinv::subsets::column_sets(so4, Family::D, 2);
    for (int j = 1; j <= 4; ++j) c.require(sc[j] == rank2_sets[static_cast<std::size_t>(j)], "SO_4 column sets");
    c.require(usinv::points::build_point(so4).vector == p_rank2, "SO_4 p_S");

    auto sp4 = usinv::subsets::from_roots(Family::C, 2, roots(Family::C, 2, {"L1-L2", "L1+L2", "2L1"}));
    c.require(!usinv::subsets::roots_closed(Family::C, 2, roots(Family::C, 2, {"L1-L2", "L1+L2"})),
              "Sp_4 pair should not be closed");
    auto pu = usinv::points::build_us(sp4);
    Poly pa = param(pu, "a"), pb = param(pu, "b"), pc = param(pu, "c");
    c.require(pu.matrix == pattern(4, {{1, 2, pa}, {1, 3, pc}, {1, 4, pb}, {2, 3, pb}, {4, 3, -pa}}), "Sp_4 U_S");
    auto pcs = usinv::subsets::column_sets(sp4, Family::C, 2);
    for (int j = 1; j <= 4; ++j) c.require(pcs[j] == rank2_sets[static_cast<std::size_t>(j)], "Sp_4 column sets");
    c.require(usinv::points::build_point(sp4).vector == p_rank2, "Sp_4 p_S");
    c.require(usinv::points::minimal_alpha(4) == std::vector<int>{1, 7, 45, 363}, "minimal alpha for n=4");
    return c.out;
  });

  criterion(3, "weighted stabilizer is exactly u_S; boundary limit point has dimension 6", 60, [] {
    Checker c;
    int count = 0;
    for (int n = 2; n <= 4; ++n) {
      auto alg = usinv::rootsys::classical_algebra(Family::A, n - 1);
      for (const auto& s : usinv::subsets::enumerate_closed(n)) {
        auto rep = usinv::stab::lie_stabilizer(usinv::points::build_point(s, kMinimal), alg);
        auto [full, nil] = usinv::stab::compare_uS(rep, s, alg);
        c.require(rep.verified && full && rep.dimension == static_cast<int>(s.pairs.size()),
                  "type A subset with " + std::to_string(s.pairs.size()) + " pairs, n=" + std::to_string(n));
        ++count;
      }
    }
    for (Family f : {Family::B, Family::C, Family::D}) {
      auto alg = usinv::rootsys::classical_algebra(f, 2);
      for (const auto& sub : closed_root_subsets(f, 2)) {
        auto s = usinv::subsets::from_roots(f, 2, sub);
        auto rep = usinv::stab::lie_stabilizer(usinv::points::build_point(s, kMinimal), alg);
        auto [full, nil] = usinv::stab::compare_uS(rep, s, alg);
        c.require(rep.verified && full && rep.dimension == static_cast<int>(sub.size()),
                  usinv::rootsys::family_name(f) + "2 subset");
        ++count;
      }
    }
    auto bnd = closed_subset_a(4, {{1, 2}, {1, 3}, {1, 4}, {2, 4}, {3, 4}});
    MultiVector<Rational> q(4);
    usinv::exact::Summand<Rational> zero;
    zero.k = 1;
    zero.label = "S_1";
    q.push(zero);
    q.push_pure({1, 2}, "S_2");
    q.push_pure({1, 3}, "S_3");
    q.push_pure({1, 2, 3, 4}, "S_4");
    auto alg = usinv::rootsys::classical_algebra(Family::A, 3);
    auto rep = usinv::stab::lie_stabilizer(q, {1, 2, 3, 4}, alg);
    usinv::stab::compare_uS(rep, bnd, alg);
    c.require(rep.dimension == 6 && rep.uS_dimension == 5, "boundary limit stabilizer dimension");
    if (c.out.ok) c.out.detail = std::to_string(count) + " subsets, boundary dimension 6";
    return c.out;
  });

  criterion(4, "minor criterion agrees with the derivation test", 60, [] {
    Checker c;
    long cases = 0;
    for (int n = 2; n <= 4; ++n) {
      const auto subsets = nonempty_subsets(n);
      for (const auto& s : usinv::subsets::enumerate_closed(n)) {
        auto cf = usinv::subsets::column_sets(s);
        for (const auto& cols : subsets) {
          const bool claim = usinv::invars::is_invariant_minor(cols, cf);
          for (const auto& rows : subsets) {
            if (rows.size() != cols.size()) continue;
            const Poly m = usinv::invars::minor_poly(n, {cols, rows});
            bool killed = true;
            for (auto [a, b] : s.pairs)
              if (!usinv::invars::derivation(n, a, b, m).is_zero()) killed = false;
            c.require(claim == killed, "disagreement at n=" + std::to_string(n));
            ++cases;
          }
        }
      }
    }
    if (c.out.ok) c.out.detail = std::to_string(cases) + " minors, 100% agreement";
    return c.out;
  });

  criterion(5, "invariant dimensions match dense elimination", 120, [] {
    Checker c;
    auto sl2 = closed_subset_a(2, {{1, 2}});
    c.require(usinv::invars::invariant_space(sl2, 1).dimension() == 2, "SL_2 degree 1");
    c.require(usinv::invars::invariant_space(sl2, 2).dimension() == 4, "SL_2 degree 2");
    c.require(oracle::dense_invariant_dimension(2, sl2.pairs, 1) == 2 && oracle::dense_invariant_dimension(2, sl2.pairs, 2) == 4,
              "dense oracle for SL_2");
    int agreed = 0;
    for (const auto& s : usinv::subsets::enumerate_closed(3)) {
      bool all = true;
      for (int d = 1; d <= 3; ++d)
        all = all && usinv::invars::invariant_space(s, d).dimension() == oracle::dense_invariant_dimension(3, s.pairs, d);
      c.require(all, "SL_3 subset disagrees");
      agreed += all;
    }
    c.require(agreed >= 5, "fewer than five SL_3 subsets");
    if (c.out.ok) c.out.detail = "SL_2 (2, 4); " + std::to_string(agreed) + " SL_3 subsets at d <= 3";
    return c.out;
  });

  criterion(6, "principal minors generate the invariants (slack <= 1)", 600, [] {
    Checker c;
    auto check = [&](const ClosedSubset& s, int dmax, const std::string& name) {
      for (int d = 1; d <= dmax; ++d) {
        auto rep = usinv::invars::generation_check(s, d, 0, 1);
        c.require(rep.covered, name + " not covered at degree " + std::to_string(d));
      }
    };
    check(closed_subset_a(2, {}), 4, "SL_2 empty");
    check(closed_subset_a(2, {{1, 2}}), 4, "SL_2 full");
    check(closed_subset_a(3, {}), 3, "SL_3 empty");
    check(closed_subset_a(3, {{1, 2}, {1, 3}, {2, 3}}), 3, "SL_3 R+");
    check(closed_subset_a(3, {{1, 3}}), 3, "SL_3 {13}");
    check(closed_subset_a(3, {{1, 2}, {1, 3}}), 3, "SL_3 {12,13}");
    if (c.out.ok) c.out.detail = "6 subsets covered, none refuted";
    return c.out;
  });

  criterion(7, "monomial exponent lemma, n <= 5, weights in [-4,4]", 60, [] {
    Checker c;
    auto sweep = usinv::limits::exponent_lemma_sweep(5, 4);
    c.require(sweep.counterexamples.empty(), std::to_string(sweep.counterexamples.size()) + " counterexamples");
    c.require(sweep.hypotheses_met > 0, "no case met the hypotheses");
    if (c.out.ok)
      c.out.detail = std::to_string(sweep.cases) + " cases, " + std::to_string(sweep.hypotheses_met) +
                     " under the hypotheses, 0 counterexamples";
    return c.out;
  });

  criterion(8, "wedge coefficient lemma on SL_4 and 20 random SL_5 subsets", 120, [] {
    Checker c;
    long checked = 0;
    std::map<int, long> signs;
    auto all_pairs = [&](const ClosedSubset& s) {
      auto cf = usinv::subsets::column_sets(s);
      for (int t = 1; t <= s.n; ++t)
        for (int sv = 1; sv < t; ++sv) {
          if (std::binary_search(cf[t].begin(), cf[t].end(), sv)) continue;
          auto r = usinv::limits::wedge_coefficient_check(cf, sv, t);
          c.require(r.magnitude_matches && r.verified && (r.sign == 1 || r.sign == -1), "coefficient mismatch");
          ++signs[r.sign];
          ++checked;
        }
    };
    for (const auto& s : usinv::subsets::enumerate_closed(4)) all_pairs(s);
    auto all5 = usinv::subsets::enumerate_closed(5);
    std::mt19937 rng(2024);
    std::uniform_int_distribution<std::size_t> pick(0, all5.size() - 1);
    for (int k = 0; k < 20; ++k) all_pairs(all5[pick(rng)]);
    if (c.out.ok)
      c.out.detail = std::to_string(checked) + " pairs, sign +1: " + std::to_string(signs[1]) +
                     ", sign -1: " + std::to_string(signs[-1]);
    return c.out;
  });

  criterion(9, "codimension screens", 300, [] {
    Checker c;
    auto bnd = closed_subset_a(4, {{1, 2}, {1, 3}, {1, 4}, {2, 4}, {3, 4}});
    auto plain = usinv::limits::grosshans_screen(bnd, {}, 1);
    bool found = false;
    for (const auto& w : plain.witnesses) found = found || w.cocharacter == std::vector<int>{1, -1, -1, 1};
    c.require(found, "unweighted screen lacks the witness (1,-1,-1,1)");
    auto bp = usinv::points::build_point(bnd, kMinimal);
    c.require(bp.alpha == std::vector<int>{1, 7, 45, 363}, "weighted point alpha");
    auto weighted = usinv::limits::grosshans_screen(bnd, kMinimal, 3, 4);
    c.require(weighted.witnesses.empty(), "weighted boundary example has excess-1 witnesses");
    auto empty = usinv::limits::grosshans_screen(closed_subset_a(2, {}), kMinimal, 3);
    c.require(empty.witnesses.empty(), "S empty, n=2 has excess-1 witnesses");
    if (c.out.ok)
      c.out.detail = "witness found; weighted: 0 of " + std::to_string(weighted.cocharacters) + "; empty n=2: 0 of " +
                     std::to_string(empty.cocharacters);
    return c.out;
  });

  criterion(10, "corpus commands give byte-identical reports", 120, [] {
    Checker c;
    int runs = 0;
    for (const auto& e : usinv::cli::corpus()) {
      std::vector<std::vector<std::string>> cmds{
          {"corpus", "show", e.name, "--json"},
          {"point", "--corpus", e.name, "--alpha", "minimal", "--json"},
          {"stab", "--corpus", e.name, "--alpha", "minimal", "--json"},
          {"invariants", "--corpus", e.name, "--degree", "2", "--json"},
          {"screen", "--corpus", e.name, "--alpha", "minimal", "--radius", "1", "--jobs", "3", "--json"},
          {"screen", "--corpus", e.name, "--alpha", "none", "--radius", "1", "--format", "table"}};
      if (e.family == Family::A) {
        cmds.push_back({"check-generation", "--corpus", e.name, "--degree", "2", "--json"});
        cmds.push_back({"wedge-check", "--corpus", e.name, "--json"});
      }
      for (const auto& args : cmds) {
        int c1 = 0, c2 = 0;
        const auto a = run_cli(args, c1), b = run_cli(args, c2);
        c.require(a == b && c1 == c2, e.name + ": " + args.front() + " differs between runs");
        ++runs;
      }
    }
    if (c.out.ok) c.out.detail = std::to_string(runs) + " commands repeated";
    return c.out;
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
