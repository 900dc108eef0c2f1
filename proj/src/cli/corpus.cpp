#include <stdexcept>

#include "usinv/cli.hpp"

namespace usinv::cli {

using rootsys::Family;

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries{
      {"regularsubgroup", "SL_4 with S = {(1,3),(2,4)}", Family::A, 3, 4, {{1, 3}, {2, 4}}, {}},
      {"boundary-example", "SL_4 subset whose plain point has a codimension-one boundary orbit", Family::A, 3, 4,
       {{1, 2}, {1, 3}, {1, 4}, {2, 4}, {3, 4}}, {}},
      {"so4-borel", "SO_4 with both positive roots", Family::D, 2, 4, {}, {"L1-L2", "L1+L2"}},
      {"sp4-closed", "Sp_4 closure of {L1-L2, L1+L2}", Family::C, 2, 4, {}, {"L1-L2", "L1+L2", "2L1"}},
      {"trivial", "SL_2 with S empty", Family::A, 1, 2, {}, {}},
      {"full-borel", "SL_3 with every positive root", Family::A, 2, 3, {{1, 2}, {1, 3}, {2, 3}}, {}},
  };
  return entries;
}

const CorpusEntry& corpus_entry(const std::string& name) {
  for (const auto& e : corpus())
    if (e.name == name) return e;
  std::string known;
  for (const auto& e : corpus()) known += (known.empty() ? "" : ", ") + e.name;
  throw std::invalid_argument("unknown corpus entry '" + name + "' (known: " + known + ")");
}

subsets::ClosedSubset corpus_subset(const CorpusEntry& e) {
  if (e.family == Family::A) return subsets::closed_subset_a(e.n, e.pairs);
  std::vector<rootsys::Root> roots;
  for (const auto& r : e.roots) roots.push_back(rootsys::parse_root(r, e.family, e.rank));
  return subsets::from_roots(e.family, e.rank, roots);
}

Json to_json(const CorpusEntry& e) {
  Json j{{"name", e.name},
         {"description", e.description},
         {"family", rootsys::family_name(e.family)},
         {"rank", e.rank},
         {"n", e.n}};
  if (e.family == Family::A)
    j["pairs"] = pairs_json(e.pairs);
  else
    j["roots"] = e.roots;
  return j;
}

CorpusEntry corpus_entry_from_json(const Json& j) {
  CorpusEntry e;
  e.name = j.at("name").get<std::string>();
  e.description = j.at("description").get<std::string>();
  e.family = rootsys::parse_family(j.at("family").get<std::string>());
  e.rank = j.at("rank").get<int>();
  e.n = j.at("n").get<int>();
  if (j.contains("pairs"))
    for (const auto& p : j.at("pairs")) e.pairs.insert({p.at(0).get<int>(), p.at(1).get<int>()});
  if (j.contains("roots")) e.roots = j.at("roots").get<std::vector<std::string>>();
  return e;
}

}  // namespace usinv::cli
