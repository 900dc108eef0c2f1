#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "usinv/exact/rational.hpp"

namespace usinv::exact {

/// Sparse rational vector keyed by column index.
using SparseVector = std::map<int, Rational>;

class SparseMatrix {
 public:
  SparseMatrix(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  /// Setting zero erases the entry.
  void set(int r, int c, const Rational& v);
  void add(int r, int c, const Rational& v);
  Rational at(int r, int c) const;
  const std::map<std::pair<int, int>, Rational>& entries() const { return entries_; }

  std::vector<SparseVector> row_vectors() const;
  std::vector<Rational> multiply(const std::vector<Rational>& v) const;

 private:
  void check(int r, int c) const;
  int rows_;
  int cols_;
  std::map<std::pair<int, int>, Rational> entries_;
};

/// Row space accumulated one vector at a time, kept in echelon form with
/// primitive integer rows. Elimination is fraction-free: a row is combined as
/// p*row - a*pivot_row and then divided by the gcd of its entries.
class EchelonBasis {
 public:
  /// Returns true when `v` was independent of the rows already present.
  bool insert(const SparseVector& v);
  bool contains(const SparseVector& v) const;
  std::size_t rank() const { return rows_.size(); }

  /// Reduced row echelon form over the rationals, pivot entries 1, rows in
  /// increasing pivot order.
  std::vector<SparseVector> reduced_rows() const;
  std::vector<int> pivot_columns() const;

 private:
  struct IntRow {
    std::vector<int> cols;
    std::vector<Integer> vals;
    bool empty() const { return cols.empty(); }
  };
  static IntRow from_rational(const SparseVector& v);
  static void make_primitive(IntRow& r);
  static void eliminate(IntRow& target, const IntRow& pivot, std::size_t target_pos);
  IntRow reduce(IntRow r) const;

  std::map<int, IntRow> rows_;  // pivot column -> row with leading entry there
};

int rank(const SparseMatrix& m);

/// Kernel basis {v : m v = 0} read off the reduced echelon form: one vector per
/// free column f, with v_f = 1 and zeros at the other free columns. Ordered by
/// increasing free column, hence deterministic.
std::vector<std::vector<Rational>> nullspace(const SparseMatrix& m);

}  // namespace usinv::exact
