#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "usinv/exact/matrix.hpp"
#include "usinv/exact/poly.hpp"
#include "usinv/exact/wedge.hpp"
#include "usinv/points.hpp"
#include "usinv/rootsys.hpp"
#include "usinv/subsets.hpp"

namespace usinv::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "usinv-report/1";

enum Exit : int { kPass = 0, kFail = 1, kUndecided = 2, kUsage = 3 };

/// Parses and executes one command line (without the program name). Reports
/// go to `out`, diagnostics to `err`; the return value is the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Bundled examples ----------------------------------------------------------

struct CorpusEntry {
  std::string name;
  std::string description;
  rootsys::Family family = rootsys::Family::A;
  int rank = 0;
  int n = 0;
  subsets::PairSet pairs;           // type A
  std::vector<std::string> roots;   // B, C, D
  friend bool operator==(const CorpusEntry&, const CorpusEntry&) = default;
};

const std::vector<CorpusEntry>& corpus();
/// Throws std::invalid_argument naming the known entries.
const CorpusEntry& corpus_entry(const std::string& name);
subsets::ClosedSubset corpus_subset(const CorpusEntry& e);
Json to_json(const CorpusEntry& e);
CorpusEntry corpus_entry_from_json(const Json& j);

// Serialization ------------------------------------------------------------

Json to_json(const exact::Rational& r);
exact::Rational rational_from_json(const Json& j);  // "p/q", "p" or an integer
Json to_json(const exact::QMatrix& m);               // rows of "p/q" strings
exact::QMatrix matrix_from_json(const Json& j);
/// Nonzero entries only: [{"i":1,"j":3,"value":"1/1"}, ...].
Json sparse_matrix_json(const exact::QMatrix& m);
Json to_json(const exact::MultiVector<exact::Rational>& v);
Json to_json(const points::WeightedPoint& p);
Json pairs_json(const subsets::PairSet& pairs);
Json column_sets_json(const subsets::ColumnFamily& c);

/// {"n", "algebra", "torus", "sigma", optional "form", "generators"}.
struct MatrixData {
  rootsys::MatrixLieData algebra;
  std::vector<exact::QMatrix> generators;
};
MatrixData matrix_data_from_json(const Json& j);

/// Indented key/value rendering used by `--format table`.
void render_table(const Json& j, std::ostream& out, int indent = 0);

}  // namespace usinv::cli
