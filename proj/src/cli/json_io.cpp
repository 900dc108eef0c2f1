#include <ostream>
#include <stdexcept>

#include "usinv/cli.hpp"

namespace usinv::cli {

Json to_json(const exact::Rational& r) { return exact::to_string(r); }

exact::Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return exact::Rational(j.get<long>());
  if (j.is_string()) return exact::parse_rational(j.get<std::string>());
  throw std::invalid_argument("expected a rational as an integer or a \"p/q\" string");
}

Json to_json(const exact::QMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

exact::QMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array())
    throw std::invalid_argument("expected a matrix as a nonempty array of rows");
  const std::size_t cols = j.front().size();
  exact::QMatrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw std::invalid_argument("matrix rows differ in length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational_from_json(j[r][c]);
  }
  return m;
}

Json sparse_matrix_json(const exact::QMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!exact::is_zero(m(r, c))) out.push_back({{"i", r + 1}, {"j", c + 1}, {"value", to_json(m(r, c))}});
  return out;
}

Json to_json(const exact::MultiVector<exact::Rational>& v) {
  Json out = Json::array();
  for (const auto& s : v.summands()) {
    Json terms = Json::array();
    for (const auto& [t, c] : s.coeffs) terms.push_back({{"wedge", t}, {"coeff", to_json(c)}});
    out.push_back({{"summand", s.label}, {"k", s.k}, {"alpha", s.alpha}, {"terms", std::move(terms)}});
  }
  return out;
}

Json to_json(const points::WeightedPoint& p) {
  return {{"n", p.n},
          {"sigma", p.sigma},
          {"index_set", p.index_set},
          {"index_set_is_convention", p.index_set_is_convention},
          {"alpha", p.alpha},
          {"summands", to_json(p.vector)}};
}

Json pairs_json(const subsets::PairSet& pairs) {
  Json out = Json::array();
  for (auto [i, j] : pairs) out.push_back({i, j});
  return out;
}

Json column_sets_json(const subsets::ColumnFamily& c) {
  Json out = Json::array();
  for (const auto& s : c.sets()) out.push_back(s);
  return out;
}

MatrixData matrix_data_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("matrix data must be a JSON object");
  for (const char* key : {"n", "algebra", "torus", "sigma", "generators"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("matrix data lacks \"") + key + "\"");
  MatrixData d;
  d.algebra.n = j.at("n").get<int>();
  for (const auto& m : j.at("algebra")) d.algebra.basis.push_back(matrix_from_json(m));
  for (const auto& m : j.at("torus")) d.algebra.torus_basis.push_back(matrix_from_json(m));
  d.algebra.sigma = j.at("sigma").get<std::vector<int>>();
  if (j.contains("form")) d.algebra.form = matrix_from_json(j.at("form"));
  for (const auto& m : j.at("generators")) d.generators.push_back(matrix_from_json(m));
  rootsys::validate(d.algebra);
  for (const auto& g : d.generators)
    if (static_cast<int>(g.rows()) != d.algebra.n || static_cast<int>(g.cols()) != d.algebra.n)
      throw std::invalid_argument("matrix data: generator has the wrong size");
  return d;
}

namespace {

bool scalar_array(const Json& j) {
  for (const auto& x : j)
    if (x.is_structured() && !(x.is_array() && std::all_of(x.begin(), x.end(), [](const Json& y) { return !y.is_structured(); })))
      return false;
  return true;
}

std::string scalar(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

std::string inline_array(const Json& j) {
  std::string s = "[";
  bool first = true;
  for (const auto& x : j) {
    if (!first) s += ", ";
    first = false;
    s += x.is_array() ? inline_array(x) : scalar(x);
  }
  return s + "]";
}

}  // namespace

void render_table(const Json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !(v.is_array() && scalar_array(v))) {
        out << pad << k << ":\n";
        render_table(v, out, indent + 2);
      } else {
        out << pad << k << ": " << (v.is_array() ? inline_array(v) : scalar(v)) << "\n";
      }
    }
  } else if (j.is_array()) {
    if (scalar_array(j)) {
      out << pad << inline_array(j) << "\n";
      return;
    }
    std::size_t idx = 0;
    for (const auto& v : j) {
      out << pad << "- [" << idx++ << "]\n";
      render_table(v, out, indent + 4);
    }
  } else {
    out << pad << scalar(j) << "\n";
  }
}

}  // namespace usinv::cli
