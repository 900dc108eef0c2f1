#include <algorithm>
#include <chrono>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "usinv/cli.hpp"
#include "usinv/invars.hpp"
#include "usinv/limits.hpp"
#include "usinv/stab.hpp"

namespace usinv::cli {

namespace {

using exact::Poly;
using exact::QMatrix;
using rootsys::Family;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct JobConfig {
  std::string family;
  int n = 0;
  int rank = 0;
  std::string pairs;
  std::string roots;
  std::string corpus;
  std::string data;
  std::string alpha = "none";
  std::string index_set;
  int degree = 2;
  int slack = 0;
  int slack_bound = -1;
  bool basis = false;
  std::string cochar;
  std::string u;
  std::string u_after;
  int radius = 1;
  int jobs = 1;
  std::string algebra = "full";
  std::string w;
  std::string sigma;
  int sweep = 0;
  int s = 0;
  int t = 0;
  std::string name;
  std::string out;
  std::string format = "table";
  bool json = false;
  bool timing = false;
};

struct Outcome {
  Json result;
  int exit = kPass;
  std::string status = "pass";
};

struct Resolved {
  subsets::ClosedSubset subset;
  std::optional<MatrixData> data;
  Json inputs = Json::object();
};

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(what + ": '" + item + "' is not an integer");
    }
  }
  if (out.empty()) throw UsageError(what + ": expected a comma-separated list of integers");
  return out;
}

subsets::PairSet parse_pairs(const std::string& text) {
  subsets::PairSet out;
  if (text.empty() || text == "none") return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("--pairs: '" + item + "' should look like i:j");
    auto a = parse_int_list(item.substr(0, colon), "--pairs");
    auto b = parse_int_list(item.substr(colon + 1), "--pairs");
    if (a.size() != 1 || b.size() != 1) throw UsageError("--pairs: '" + item + "' should look like i:j");
    out.insert({a[0], b[0]});
  }
  return out;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string corpus_name(const JobConfig& c) {
  if (!c.corpus.empty()) return c.corpus;
  for (const auto* s : {&c.pairs, &c.roots})
    if (s->rfind("corpus:", 0) == 0) return s->substr(7);
  return "";
}

Family family_of(const JobConfig& c) { return c.family.empty() ? Family::A : rootsys::parse_family(c.family); }

// Classical rank and size from --n / --l.
std::pair<int, int> rank_and_n(const JobConfig& c, Family f) {
  if (c.rank > 0) {
    const int n = rootsys::ambient_dimension(f, c.rank);
    if (c.n > 0 && c.n != n) throw UsageError("--n and --l disagree");
    return {c.rank, n};
  }
  if (c.n > 0) return {rootsys::rank_from_dimension(f, c.n), c.n};
  throw UsageError("give the size with --n or the rank with --l");
}

Resolved resolve(const JobConfig& c) {
  Resolved r;
  if (const auto name = corpus_name(c); !name.empty()) {
    const auto& e = corpus_entry(name);
    r.subset = corpus_subset(e);
    r.inputs["corpus"] = e.name;
  } else {
    const Family f = family_of(c);
    if (f == Family::Matrix) {
      if (c.data.empty()) throw UsageError("the Matrix family needs --data <file.json>");
      r.data = matrix_data_from_json(read_json_file(c.data));
      r.subset = subsets::from_generators(r.data->algebra.n, r.data->generators);
      r.inputs["data"] = c.data;
    } else if (f == Family::A) {
      auto [rank, n] = rank_and_n(c, f);
      (void)rank;
      if (!c.roots.empty()) throw UsageError("type A subsets are given with --pairs");
      r.subset = subsets::closed_subset_a(n, parse_pairs(c.pairs));
    } else {
      auto [rank, n] = rank_and_n(c, f);
      (void)n;
      if (!c.pairs.empty()) throw UsageError("B, C and D subsets are given with --roots");
      std::vector<rootsys::Root> roots;
      for (const auto& name : split_names(c.roots)) roots.push_back(rootsys::parse_root(name, f, rank));
      r.subset = subsets::from_roots(f, rank, roots);
    }
  }
  const auto& s = r.subset;
  r.inputs["family"] = rootsys::family_name(s.family);
  r.inputs["n"] = s.n;
  if (s.family != Family::Matrix) r.inputs["rank"] = s.rank;
  if (!s.source_roots.empty() || (s.family != Family::A && s.family != Family::Matrix)) {
    Json names = Json::array();
    for (const auto& root : s.source_roots) names.push_back(rootsys::root_name(root));
    r.inputs["roots"] = names;
  }
  r.inputs["pairs"] = pairs_json(s.pairs);
  return r;
}

points::PointOptions point_options(const JobConfig& c, Json& inputs) {
  points::PointOptions opt;
  if (c.alpha == "none") {
    opt.policy = points::AlphaPolicy::None;
  } else if (c.alpha == "minimal") {
    opt.policy = points::AlphaPolicy::Minimal;
  } else {
    opt.policy = points::AlphaPolicy::Explicit;
    opt.explicit_alpha = parse_int_list(c.alpha, "--alpha");
  }
  inputs["alpha"] = c.alpha;
  if (!c.index_set.empty()) {
    opt.index_set = parse_int_list(c.index_set, "--index-set");
    inputs["index_set"] = *opt.index_set;
  }
  return opt;
}

points::WeightedPoint make_point(const Resolved& r, const points::PointOptions& opt) {
  return r.data ? points::build_point(r.subset, r.data->algebra, opt) : points::build_point(r.subset, opt);
}

rootsys::MatrixLieData algebra_of(const Resolved& r) {
  return r.data ? r.data->algebra : rootsys::classical_algebra(r.subset.family, r.subset.rank);
}

void require_classical(const Resolved& r, const std::string& what) {
  if (r.subset.family == Family::Matrix) throw UsageError(what + " is not available for the Matrix family");
}

std::string poly_string(const Poly& p, int n) { return p.to_string(invars::coordinate_names(n)); }

// Commands -------------------------------------------------------------------

Outcome cmd_closed_check(const JobConfig& c, Json& inputs) {
  Outcome o;
  const std::string name = corpus_name(c);
  const Family f = name.empty() ? family_of(c) : corpus_entry(name).family;
  if (!name.empty() || f != Family::A) {
    if (f == Family::Matrix) throw UsageError("closed check works on root data or type A pairs");
    int rank = 0;
    std::vector<rootsys::Root> roots;
    std::vector<std::string> names;
    if (!name.empty()) {
      const auto& e = corpus_entry(name);
      inputs["corpus"] = e.name;
      if (e.family == Family::A) {
        JobConfig sub = c;
        sub.corpus.clear();
        sub.pairs = "";
        for (auto [i, j] : e.pairs) sub.pairs += (sub.pairs.empty() ? "" : ",") + std::to_string(i) + ":" + std::to_string(j);
        sub.n = e.n;
        sub.rank = 0;
        sub.family = "A";
        return cmd_closed_check(sub, inputs);
      }
      rank = e.rank;
      names = e.roots;
    } else {
      rank = rank_and_n(c, f).first;
      names = split_names(c.roots);
    }
    for (const auto& nm : names) roots.push_back(rootsys::parse_root(nm, f, rank));
    const auto rs = rootsys::positive_roots(f, rank);
    bool positive = true;
    for (const auto& root : roots) positive = positive && rs.is_positive(root);
    const bool closed = positive && subsets::roots_closed(f, rank, roots);
    inputs["family"] = rootsys::family_name(f);
    inputs["rank"] = rank;
    inputs["roots"] = names;
    o.result = {{"positive", positive}, {"closed", closed}};
    if (closed) {
      auto s = subsets::from_roots(f, rank, roots);
      o.result["pairs"] = pairs_json(s.pairs);
      o.result["column_sets"] = column_sets_json(subsets::column_sets(s));
    }
    o.exit = closed ? kPass : kFail;
    o.status = closed ? "pass" : "fail";
    return o;
  }
  const int n = rank_and_n(c, Family::A).second;
  const auto pairs = parse_pairs(c.pairs);
  subsets::check_pairs(n, pairs);
  bool upper = true;
  for (auto [i, j] : pairs) upper = upper && i < j;
  const bool transitive = subsets::is_closed(n, pairs);
  inputs["family"] = "A";
  inputs["n"] = n;
  inputs["pairs"] = pairs_json(pairs);
  o.result = {{"upper", upper}, {"closed", upper && transitive}};
  if (upper && transitive) {
    auto s = subsets::closed_subset_a(n, pairs);
    auto cf = subsets::column_sets(s);
    o.result["column_sets"] = column_sets_json(cf);
    o.result["hereditary"] = subsets::is_hereditary(cf);
    o.result["strongly_separated"] = subsets::strongly_separated(cf.sets());
  } else if (upper) {
    subsets::PairSet missing;
    for (const auto& p : subsets::closure(n, pairs))
      if (!pairs.count(p)) missing.insert(p);
    o.result["missing"] = pairs_json(missing);
  }
  o.exit = upper && transitive ? kPass : kFail;
  o.status = o.exit == kPass ? "pass" : "fail";
  return o;
}

Outcome cmd_closed_enumerate(const JobConfig& c, Json& inputs) {
  const int n = rank_and_n(c, Family::A).second;
  inputs["n"] = n;
  Outcome o;
  Json list = Json::array();
  const auto all = subsets::enumerate_closed(n);
  for (const auto& s : all) list.push_back(pairs_json(s.pairs));
  o.result = {{"count", all.size()}, {"subsets", std::move(list)}};
  return o;
}

Outcome cmd_point(const JobConfig& c, Json& inputs) {
  auto r = resolve(c);
  auto opt = point_options(c, r.inputs);
  inputs = r.inputs;
  auto p = make_point(r, opt);
  Outcome o;
  o.result["point"] = to_json(p);
  o.result["column_sets"] = column_sets_json(subsets::column_sets(r.subset));
  auto u = r.data ? points::build_us_from_generators(r.subset.n, r.data->generators) : points::build_us(r.subset);
  Json rows = Json::array();
  auto names = [&u](int v) { return u.var_name(v); };
  for (std::size_t i = 0; i < u.matrix.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < u.matrix.cols(); ++j) row.push_back(u.matrix(i, j).to_string(names));
    rows.push_back(std::move(row));
  }
  o.result["unipotent"] = {{"parameters", u.names}, {"matrix", std::move(rows)}};
  return o;
}

Outcome cmd_stab(const JobConfig& c, Json& inputs) {
  auto r = resolve(c);
  auto opt = point_options(c, r.inputs);
  inputs = r.inputs;
  auto p = make_point(r, opt);
  auto alg = algebra_of(r);
  auto rep = stab::lie_stabilizer(p, alg);
  stab::compare_uS(rep, r.subset, alg);
  Outcome o;
  Json basis = Json::array();
  for (const auto& b : rep.basis) basis.push_back(sparse_matrix_json(b));
  o.result = {{"dimension", rep.dimension},
              {"uS_dimension", rep.uS_dimension},
              {"equals_uS", rep.equals_uS},
              {"nilpotent_part_equals_uS", rep.nilpotent_part_equals_uS},
              {"verified", rep.verified},
              {"basis", std::move(basis)}};
  o.exit = rep.equals_uS && rep.verified ? kPass : kFail;
  o.status = o.exit == kPass ? "pass" : "fail";
  return o;
}

Outcome cmd_invariants(const JobConfig& c, Json& inputs) {
  auto r = resolve(c);
  require_classical(r, "invariants");
  inputs = r.inputs;
  inputs["degree"] = c.degree;
  if (c.degree < 1) throw UsageError("--degree must be at least 1");
  Outcome o;
  Json degrees = Json::array();
  for (int d = 1; d <= c.degree; ++d) {
    auto inv = invars::invariant_space(r.subset, d);
    Json entry{{"degree", d}, {"dimension", inv.dimension()}};
    if (c.basis) {
      Json b = Json::array();
      for (const auto& f : inv.basis) b.push_back(poly_string(f, r.subset.n));
      entry["basis"] = std::move(b);
    }
    degrees.push_back(std::move(entry));
  }
  o.result["degrees"] = std::move(degrees);
  return o;
}

Outcome cmd_check_generation(const JobConfig& c, Json& inputs) {
  auto r = resolve(c);
  if (r.subset.family != Family::A) throw UsageError("check-generation is available for type A only");
  const int bound = c.slack_bound < 0 ? c.slack + 1 : c.slack_bound;
  inputs = r.inputs;
  inputs["degree"] = c.degree;
  inputs["slack"] = c.slack;
  inputs["slack_bound"] = bound;
  auto rep = invars::generation_check(r.subset, c.degree, c.slack, bound);
  Outcome o;
  Json degrees = Json::array();
  for (const auto& d : rep.degrees) {
    Json unc = Json::array();
    for (const auto& f : d.uncovered) unc.push_back(poly_string(f, r.subset.n));
    degrees.push_back({{"degree", d.degree},
                       {"invariant_dimension", d.invariant_dimension},
                       {"covered", d.covered},
                       {"cofactor_power", d.cofactor_power},
                       {"status", d.uncovered.empty() ? "covered" : "undecided"},
                       {"uncovered", std::move(unc)}});
  }
  o.result = {{"principal_column_sets", rep.column_sets},
              {"slack_used", rep.slack_used},
              {"covered", rep.covered},
              {"degrees", std::move(degrees)}};
  o.exit = rep.covered ? kPass : kUndecided;
  o.status = rep.covered ? "covered" : "undecided";
  return o;
}

std::optional<QMatrix> optional_matrix(const std::string& text, const char* flag) {
  if (text.empty()) return std::nullopt;
  try {
    return matrix_from_json(Json::parse(text));
  } catch (const Json::parse_error&) {
    throw UsageError(std::string(flag) + ": expected a JSON matrix such as [[1,2],[0,1]]");
  }
}

Outcome cmd_limit(const JobConfig& c, Json& inputs) {
  auto r = resolve(c);
  auto opt = point_options(c, r.inputs);
  inputs = r.inputs;
  if (c.cochar.empty()) throw UsageError("limit needs --cochar w1,...,wn");
  const auto w = parse_int_list(c.cochar, "--cochar");
  inputs["cochar"] = w;
  auto u = optional_matrix(c.u, "--u"), u2 = optional_matrix(c.u_after, "--u-after");
  if (u) inputs["u"] = to_json(*u);
  if (u2) inputs["u_after"] = to_json(*u2);
  auto p = make_point(r, opt);
  auto lim = limits::cochar_limit(p, r.subset.family, r.subset.rank, w, u, u2);
  Outcome o;
  Json ledger = Json::array();
  for (const auto& e : lim.ledger)
    ledger.push_back({{"summand", e.label}, {"wedge", e.tuple}, {"exponent", e.exponent}, {"leading", to_json(e.leading)}});
  o.result["converges"] = lim.converges;
  if (lim.converges) {
    o.result["limit"] = to_json(lim.value);
    auto alg = algebra_of(r);
    o.result["limit_stabilizer_dimension"] =
        lim.value.is_zero_vector() ? static_cast<int>(alg.basis.size())
                                   : stab::lie_stabilizer(lim.value, p.sigma, alg).dimension;
  }
  o.result["ledger"] = std::move(ledger);
  o.exit = lim.converges ? kPass : kFail;
  o.status = lim.converges ? "converges" : "diverges";
  return o;
}

Outcome cmd_screen(const JobConfig& c, Json& inputs) {
  auto r = resolve(c);
  require_classical(r, "screen");
  auto opt = point_options(c, r.inputs);
  inputs = r.inputs;
  inputs["radius"] = c.radius;
  auto rep = limits::grosshans_screen(r.subset, opt, c.radius, c.jobs);
  Outcome o;
  Json hist = Json::object();
  for (auto [k, v] : rep.excess_histogram) hist[std::to_string(k)] = v;
  Json wit = Json::array();
  for (const auto& w : rep.witnesses)
    wit.push_back({{"cochar", w.cocharacter},
                   {"stabilizer_dimension", w.stabilizer_dimension},
                   {"excess", w.excess},
                   {"limit", to_json(w.limit)}});
  o.result = {{"cocharacters", rep.cocharacters},
              {"converged", rep.converged},
              {"uS_dimension", rep.uS_dimension},
              {"point_stabilizer_dimension", rep.point_stabilizer_dimension},
              {"excess_histogram", std::move(hist)},
              {"witnesses", std::move(wit)},
              {"semicontinuity_violations", rep.semicontinuity_violations}};
  o.exit = rep.passed() ? kPass : kFail;
  o.status = rep.passed() ? "pass" : "fail";
  return o;
}

Outcome cmd_corpus_list(const JobConfig&, Json&) {
  Outcome o;
  Json list = Json::array();
  for (const auto& e : corpus()) list.push_back(to_json(e));
  o.result = {{"count", corpus().size()}, {"entries", std::move(list)}};
  return o;
}

Outcome cmd_corpus_show(const JobConfig& c, Json& inputs) {
  inputs["name"] = c.name;
  const auto& e = corpus_entry(c.name);
  auto s = corpus_subset(e);
  Outcome o;
  o.result = to_json(e);
  o.result["closed_pairs"] = pairs_json(s.pairs);
  o.result["column_sets"] = column_sets_json(subsets::column_sets(s));
  return o;
}

Outcome cmd_roots(const JobConfig& c, Json& inputs) {
  const Family f = family_of(c);
  if (f == Family::Matrix) throw UsageError("roots needs a classical family");
  const int rank = rank_and_n(c, f).first;
  inputs = {{"family", rootsys::family_name(f)}, {"rank", rank}};
  const auto rs = rootsys::positive_roots(f, rank);
  Json list = Json::array();
  for (const auto& root : rs.positive_roots)
    list.push_back({{"name", rootsys::root_name(root)},
                    {"coefficients", root.coefficients},
                    {"height", rootsys::scaled_height(f, rank, root)}});
  Outcome o;
  o.result = {{"n", rs.n}, {"sigma", rootsys::flag_permutation(f, rank)}, {"count", list.size()}, {"positive_roots", list}};
  return o;
}

Outcome cmd_generating(const JobConfig& c, Json& inputs) {
  const Family f = family_of(c);
  rootsys::MatrixLieData alg;
  if (f == Family::Matrix) {
    if (c.data.empty()) throw UsageError("the Matrix family needs --data <file.json>");
    alg = matrix_data_from_json(read_json_file(c.data)).algebra;
    inputs = {{"family", "Matrix"}, {"data", c.data}};
  } else {
    const int rank = rank_and_n(c, f).first;
    if (c.algebra != "full" && c.algebra != "borel") throw UsageError("--algebra must be full or borel");
    alg = c.algebra == "full" ? rootsys::classical_algebra(f, rank) : rootsys::borel_subalgebra(f, rank);
    inputs = {{"family", rootsys::family_name(f)}, {"rank", rank}, {"algebra", c.algebra}};
  }
  auto g = rootsys::find_generating_subsets(alg);
  Outcome o;
  o.result = {{"n", alg.n}, {"dimension", alg.basis.size()}, {"minimal", g.minimal}, {"canonical", g.canonical}};
  return o;
}

Outcome cmd_exponent(const JobConfig& c, Json& inputs) {
  Outcome o;
  if (c.sweep > 0) {
    inputs = {{"sweep", c.sweep}, {"radius", c.radius}};
    auto s = limits::exponent_lemma_sweep(c.sweep, c.radius);
    o.result = {{"cases", s.cases}, {"hypotheses_met", s.hypotheses_met}, {"counterexamples", s.counterexamples}};
    o.exit = s.counterexamples.empty() ? kPass : kFail;
  } else {
    if (c.w.empty()) throw UsageError("exponent-check needs --w or --sweep");
    const auto w = parse_int_list(c.w, "--w");
    std::vector<int> sigma(w.size());
    std::iota(sigma.begin(), sigma.end(), 1);
    if (!c.sigma.empty()) sigma = parse_int_list(c.sigma, "--sigma");
    inputs = {{"w", w}, {"sigma", sigma}};
    auto r = limits::exponent_lemma_check(w, sigma);
    o.result = {{"hypotheses_met", r.hypotheses_met},
                {"partial_sums", r.partial_sums},
                {"exponent", r.exponent},
                {"positive", r.positive},
                {"plus", r.plus},
                {"minus", r.minus}};
    o.exit = r.holds() ? kPass : kFail;
    if (!r.hypotheses_met) o.status = "hypotheses unmet";
  }
  if (o.exit != kPass) o.status = "fail";
  return o;
}

Outcome cmd_wedge(const JobConfig& c, Json& inputs) {
  auto r = resolve(c);
  inputs = r.inputs;
  const auto cf = subsets::column_sets(r.subset);
  std::vector<std::pair<int, int>> checks;
  if (c.s > 0 || c.t > 0) {
    checks.push_back({c.s, c.t});
    inputs["s"] = c.s;
    inputs["t"] = c.t;
  } else {
    for (int t = 1; t <= cf.n(); ++t)
      for (int s = 1; s < t; ++s)
        if (!std::binary_search(cf[t].begin(), cf[t].end(), s)) checks.push_back({s, t});
  }
  Outcome o;
  Json list = Json::array();
  bool all = true;
  for (auto [s, t] : checks) {
    auto w = limits::wedge_coefficient_check(cf, s, t);
    all = all && w.verified;
    list.push_back({{"s", s},
                    {"t", t},
                    {"column_set", w.column_set},
                    {"target", w.target},
                    {"sign", w.sign},
                    {"coefficient", poly_string(w.coefficient, cf.n())},
                    {"verified", w.verified}});
  }
  o.result = {{"checked", list.size()}, {"all_verified", all}, {"checks", std::move(list)}};
  o.exit = all ? kPass : kFail;
  o.status = all ? "pass" : "fail";
  return o;
}

void add_subset_options(CLI::App* app, JobConfig& c) {
  app->add_option("--family", c.family, "A, B, C, D or Matrix (default A)");
  app->add_option("--n", c.n, "matrix size");
  app->add_option("--l", c.rank, "rank");
  app->add_option("--pairs", c.pairs, "type A pairs i:j,k:m or corpus:<name>");
  app->add_option("--roots", c.roots, "positive roots such as L1-L2,2L1 or corpus:<name>");
  app->add_option("--corpus", c.corpus, "bundled example name");
  app->add_option("--data", c.data, "Matrix family description (JSON)");
}

void add_point_options(CLI::App* app, JobConfig& c) {
  app->add_option("--alpha,--weighted", c.alpha, "none, minimal or an explicit list a1,a2,...");
  app->add_option("--index-set", c.index_set, "indices j whose S_j enter the point");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  JobConfig cfg;
  CLI::App app{"Weighted points and invariants for unipotent subgroups U_S"};
  app.name("usinv");
  app.require_subcommand(1);
  app.add_option("--out", cfg.out, "also write the JSON report to this file");
  app.add_option("--format", cfg.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_flag("--json", cfg.json, "same as --format json");
  app.add_flag("--timing", cfg.timing, "add wall-clock milliseconds to the report");
  app.set_help_flag("-h,--help", "show help");
  app.fallthrough();

  using Handler = Outcome (*)(const JobConfig&, Json&);
  std::vector<std::pair<CLI::App*, Handler>> handlers;
  std::vector<std::string> names;

  auto* closed = app.add_subcommand("closed", "closed subsets of positive roots");
  closed->require_subcommand(1);
  auto* check = closed->add_subcommand("check", "is the given subset closed?");
  add_subset_options(check, cfg);
  handlers.push_back({check, cmd_closed_check});
  auto* enumerate = closed->add_subcommand("enumerate", "every closed subset in SL_n, n <= 6");
  enumerate->add_option("--n", cfg.n, "matrix size")->required();
  handlers.push_back({enumerate, cmd_closed_enumerate});

  auto* point = app.add_subcommand("point", "the point p_S or p_{S,alpha}");
  add_subset_options(point, cfg);
  add_point_options(point, cfg);
  handlers.push_back({point, cmd_point});

  auto* stab = app.add_subcommand("stab", "Lie algebra stabilizer of the point");
  add_subset_options(stab, cfg);
  add_point_options(stab, cfg);
  handlers.push_back({stab, cmd_stab});

  auto* inv = app.add_subcommand("invariants", "graded invariant dimensions");
  add_subset_options(inv, cfg);
  inv->add_option("--degree", cfg.degree, "largest degree");
  inv->add_flag("--basis", cfg.basis, "list basis polynomials");
  handlers.push_back({inv, cmd_invariants});

  auto* gen = app.add_subcommand("check-generation", "principal minors versus invariants, modulo det - 1");
  add_subset_options(gen, cfg);
  gen->add_option("--degree", cfg.degree, "largest degree");
  gen->add_option("--slack", cfg.slack, "determinant power tried first");
  gen->add_option("--slack-bound", cfg.slack_bound, "largest determinant power (default slack + 1)");
  handlers.push_back({gen, cmd_check_generation});

  auto* limit = app.add_subcommand("limit", "limit of the point along a one-parameter subgroup");
  add_subset_options(limit, cfg);
  add_point_options(limit, cfg);
  limit->add_option("--cochar", cfg.cochar, "weights w1,...,wn (use --cochar=-1,... for a leading minus)");
  limit->add_option("--u", cfg.u, "conjugator applied before the curve, JSON matrix");
  limit->add_option("--u-after", cfg.u_after, "conjugator applied after the curve, JSON matrix");
  handlers.push_back({limit, cmd_limit});

  auto* screen = app.add_subcommand("screen", "sweep cocharacters and look for excess-one limits");
  add_subset_options(screen, cfg);
  add_point_options(screen, cfg);
  screen->add_option("--radius", cfg.radius, "bound on |w_i|");
  screen->add_option("--jobs", cfg.jobs, "worker threads");
  handlers.push_back({screen, cmd_screen});

  auto* corpus_cmd = app.add_subcommand("corpus", "bundled examples");
  corpus_cmd->require_subcommand(1);
  auto* list = corpus_cmd->add_subcommand("list", "list entries");
  handlers.push_back({list, cmd_corpus_list});
  auto* show = corpus_cmd->add_subcommand("show", "show one entry");
  show->add_option("name", cfg.name, "entry name")->required();
  handlers.push_back({show, cmd_corpus_show});

  auto* roots = app.add_subcommand("roots", "positive roots, heights and sigma");
  roots->add_option("--family", cfg.family, "A, B, C or D");
  roots->add_option("--n", cfg.n, "matrix size");
  roots->add_option("--l", cfg.rank, "rank");
  handlers.push_back({roots, cmd_roots});

  auto* gsub = app.add_subcommand("generating-subsets", "minimal column sets determining an algebra element");
  gsub->add_option("--family", cfg.family, "A, B, C, D or Matrix");
  gsub->add_option("--n", cfg.n, "matrix size");
  gsub->add_option("--l", cfg.rank, "rank");
  gsub->add_option("--algebra", cfg.algebra, "full or borel");
  gsub->add_option("--data", cfg.data, "Matrix family description (JSON)");
  handlers.push_back({gsub, cmd_generating});

  auto* expo = app.add_subcommand("exponent-check", "exponent inequalities along a cocharacter");
  expo->add_option("--w", cfg.w, "weights (use --w=-1,... for a leading minus)");
  expo->add_option("--sigma", cfg.sigma, "flag permutation (default identity)");
  expo->add_option("--sweep", cfg.sweep, "check every w in [-radius, radius]^n for n up to this value");
  expo->add_option("--radius", cfg.radius, "weight bound for --sweep");
  handlers.push_back({expo, cmd_exponent});

  auto* wedge = app.add_subcommand("wedge-check", "leading wedge coefficients under upper triangular b");
  add_subset_options(wedge, cfg);
  wedge->add_option("--s", cfg.s, "row index s");
  wedge->add_option("--t", cfg.t, "column index t");
  handlers.push_back({wedge, cmd_wedge});

  if (!args.empty() && !args.front().empty() && args.front()[0] != '-' &&
      !app.get_subcommand_no_throw(args.front())) {
    err << "usinv: unknown command '" << args.front() << "'; see usinv --help\n";
    return kUsage;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usinv: " << e.what() << "\n";
    return kUsage;
  }

  Handler handler = nullptr;
  std::string command;
  for (auto& [sub, h] : handlers)
    if (sub->parsed()) {
      handler = h;
      for (const CLI::App* a = sub; a && a != &app; a = a->get_parent())
        command = a->get_name() + (command.empty() ? "" : " " + command);
    }
  if (!handler) {
    err << "usinv: no command given; see usinv --help\n";
    return kUsage;
  }

  Json inputs = Json::object();
  Outcome outcome;
  const auto start = std::chrono::steady_clock::now();
  try {
    outcome = handler(cfg, inputs);
  } catch (const invars::CapExceeded& e) {
    outcome.result = {{"reason", e.what()}};
    outcome.exit = kUndecided;
    outcome.status = "undecided";
  } catch (const std::invalid_argument& e) {
    err << "usinv " << command << ": " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "usinv " << command << ": " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "usinv " << command << ": internal error: " << e.what() << "\n";
    return kFail;
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;

  Json report{{"schema", kSchema}, {"command", command}, {"argv", args}, {"inputs", inputs},
              {"status", outcome.status}, {"exit_code", outcome.exit}, {"result", outcome.result}};
  if (cfg.timing)
    report["timing"] = {{"milliseconds", std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()}};

  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out);
    if (!f) {
      err << "usinv: cannot write '" << cfg.out << "'\n";
      return kUsage;
    }
    f << report.dump(2) << "\n";
  }
  if (cfg.json || cfg.format == "json")
    out << report.dump(2) << "\n";
  else
    render_table(report, out);
  return outcome.exit;
}

}  // namespace usinv::cli
