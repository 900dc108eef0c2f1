#include "usinv/exact/sparse.hpp"

#include <stdexcept>

namespace usinv::exact {

SparseMatrix::SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("SparseMatrix: negative dimension");
}

void SparseMatrix::check(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("SparseMatrix: index out of range");
}

void SparseMatrix::set(int r, int c, const Rational& v) {
  check(r, c);
  if (sgn(v) == 0)
    entries_.erase({r, c});
  else
    entries_[{r, c}] = v;
}

void SparseMatrix::add(int r, int c, const Rational& v) {
  check(r, c);
  if (sgn(v) == 0) return;
  auto [it, inserted] = entries_.try_emplace({r, c}, v);
  if (!inserted) {
    it->second += v;
    if (sgn(it->second) == 0) entries_.erase(it);
  }
}

Rational SparseMatrix::at(int r, int c) const {
  check(r, c);
  auto it = entries_.find({r, c});
  return it == entries_.end() ? Rational(0) : it->second;
}

std::vector<SparseVector> SparseMatrix::row_vectors() const {
  std::vector<SparseVector> out(static_cast<std::size_t>(rows_));
  for (const auto& [rc, v] : entries_) out[static_cast<std::size_t>(rc.first)].emplace(rc.second, v);
  return out;
}

std::vector<Rational> SparseMatrix::multiply(const std::vector<Rational>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("SparseMatrix::multiply: shape mismatch");
  std::vector<Rational> out(static_cast<std::size_t>(rows_));
  for (const auto& [rc, x] : entries_) out[static_cast<std::size_t>(rc.first)] += x * v[static_cast<std::size_t>(rc.second)];
  return out;
}

EchelonBasis::IntRow EchelonBasis::from_rational(const SparseVector& v) {
  IntRow r;
  Integer l = 1;
  for (const auto& [c, x] : v)
    if (sgn(x) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  for (const auto& [c, x] : v) {
    if (sgn(x) == 0) continue;
    Rational s = x * Rational(l);
    r.cols.push_back(c);
    r.vals.push_back(s.get_num());
  }
  make_primitive(r);
  return r;
}

void EchelonBasis::make_primitive(IntRow& r) {
  if (r.empty()) return;
  Integer g = 0;
  for (const auto& v : r.vals) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (sgn(r.vals.front()) < 0) g = -g;
  if (g != 1)
    for (auto& v : r.vals) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// target <- p*target - a*pivot, where p is pivot's leading entry and a the
// entry of target at the pivot column (located at target_pos).
void EchelonBasis::eliminate(IntRow& target, const IntRow& pivot, std::size_t target_pos) {
  const Integer p = pivot.vals.front();
  const Integer a = target.vals[target_pos];
  IntRow out;
  out.cols.reserve(target.cols.size() + pivot.cols.size());
  out.vals.reserve(target.cols.size() + pivot.cols.size());
  std::size_t i = 0, j = 0;
  Integer tmp;
  while (i < target.cols.size() || j < pivot.cols.size()) {
    if (j == pivot.cols.size() || (i < target.cols.size() && target.cols[i] < pivot.cols[j])) {
      out.cols.push_back(target.cols[i]);
      out.vals.push_back(target.vals[i] * p);
      ++i;
    } else if (i == target.cols.size() || pivot.cols[j] < target.cols[i]) {
      out.cols.push_back(pivot.cols[j]);
      out.vals.push_back(-(a * pivot.vals[j]));
      ++j;
    } else {
      tmp = target.vals[i] * p - a * pivot.vals[j];
      if (tmp != 0) {
        out.cols.push_back(target.cols[i]);
        out.vals.push_back(tmp);
      }
      ++i;
      ++j;
    }
  }
  make_primitive(out);
  target = std::move(out);
}

EchelonBasis::IntRow EchelonBasis::reduce(IntRow r) const {
  // Walk the columns of r in increasing order; every pivot row has entries
  // only at columns >= its pivot, so elimination never revisits a column.
  std::size_t pos = 0;
  while (pos < r.cols.size()) {
    auto it = rows_.find(r.cols[pos]);
    if (it == rows_.end()) {
      ++pos;
      continue;
    }
    eliminate(r, it->second, pos);
    // Entries before pos are untouched (pivot row starts at r.cols[pos]) and
    // the entry at pos is gone; recompute position of first column >= old col.
    int col = it->first;
    pos = 0;
    while (pos < r.cols.size() && r.cols[pos] <= col) ++pos;
  }
  return r;
}

bool EchelonBasis::insert(const SparseVector& v) {
  IntRow r = reduce(from_rational(v));
  if (r.empty()) return false;
  // Leading column of r is not a pivot (reduce would have removed it), but a
  // later column might still be. Rows must lead with their pivot: r's leading
  // entry is its smallest column, which is pivot-free.
  // Make the leading entry positive.
  if (sgn(r.vals.front()) < 0)
    for (auto& x : r.vals) x = -x;
  int lead = r.cols.front();
  rows_.emplace(lead, std::move(r));
  return true;
}

bool EchelonBasis::contains(const SparseVector& v) const { return reduce(from_rational(v)).empty(); }

std::vector<int> EchelonBasis::pivot_columns() const {
  std::vector<int> out;
  out.reserve(rows_.size());
  for (const auto& [c, r] : rows_) out.push_back(c);
  return out;
}

std::vector<SparseVector> EchelonBasis::reduced_rows() const {
  // Back substitution from the last pivot upwards.
  std::map<int, IntRow> rref = rows_;
  for (auto it = rref.rbegin(); it != rref.rend(); ++it) {
    const IntRow& piv = it->second;
    for (auto jt = std::next(it); jt != rref.rend(); ++jt) {
      IntRow& target = jt->second;
      for (std::size_t pos = 0; pos < target.cols.size(); ++pos) {
        if (target.cols[pos] == it->first) {
          eliminate(target, piv, pos);
          if (sgn(target.vals.front()) < 0)
            for (auto& x : target.vals) x = -x;
          break;
        }
        if (target.cols[pos] > it->first) break;
      }
    }
  }
  std::vector<SparseVector> out;
  out.reserve(rref.size());
  for (const auto& [c, r] : rref) {
    SparseVector v;
    Rational lead(r.vals.front());
    for (std::size_t k = 0; k < r.cols.size(); ++k) v.emplace(r.cols[k], Rational(r.vals[k]) / lead);
    out.push_back(std::move(v));
  }
  return out;
}

int rank(const SparseMatrix& m) {
  EchelonBasis e;
  for (const auto& row : m.row_vectors()) e.insert(row);
  return static_cast<int>(e.rank());
}

std::vector<std::vector<Rational>> nullspace(const SparseMatrix& m) {
  EchelonBasis e;
  for (const auto& row : m.row_vectors()) e.insert(row);
  auto rows = e.reduced_rows();
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (const auto& r : rows) is_pivot[static_cast<std::size_t>(r.begin()->first)] = true;
  std::vector<std::vector<Rational>> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<Rational> v(static_cast<std::size_t>(m.cols()));
    v[static_cast<std::size_t>(f)] = 1;
    for (const auto& r : rows) {
      auto it = r.find(f);
      if (it != r.end()) v[static_cast<std::size_t>(r.begin()->first)] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace usinv::exact
