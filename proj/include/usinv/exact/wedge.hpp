#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "usinv/exact/matrix.hpp"
#include "usinv/exact/poly.hpp"
#include "usinv/exact/rational.hpp"

namespace usinv::exact {

/// Index tuple of a wedge monomial e_{i_1}∧…∧e_{i_k}, 1-based.
using Tuple = std::vector<int>;

/// Sorts `t` ascending and returns the sign of the sorting permutation, or 0
/// when an index repeats (the wedge vanishes).
inline int sort_with_sign(Tuple& t) {
  int sign = 1;
  for (std::size_t i = 1; i < t.size(); ++i) {
    for (std::size_t j = i; j > 0 && t[j - 1] >= t[j]; --j) {
      if (t[j - 1] == t[j]) return 0;
      std::swap(t[j - 1], t[j]);
      sign = -sign;
    }
  }
  return sign;
}

/// One summand ∧^k C^n of a direct sum. `alpha` > 0 marks a summand tensored
/// with alpha copies of the flag tensor; that factor is kept implicit.
template <class R>
struct Summand {
  int k = 0;
  std::string label;
  int alpha = 0;
  std::map<Tuple, R> coeffs;

  void add(const Tuple& t, const R& c) {
    if (is_zero(c)) return;
    auto [it, inserted] = coeffs.try_emplace(t, c);
    if (!inserted) {
      it->second += c;
      if (is_zero(it->second)) coeffs.erase(it);
    }
  }
  bool is_zero_summand() const { return coeffs.empty(); }
  friend bool operator==(const Summand& a, const Summand& b) {
    return a.k == b.k && a.label == b.label && a.alpha == b.alpha && a.coeffs == b.coeffs;
  }
};

template <class R>
class MultiVector {
 public:
  MultiVector() = default;
  explicit MultiVector(int n) : n_(n) {}

  int n() const { return n_; }
  std::vector<Summand<R>>& summands() { return summands_; }
  const std::vector<Summand<R>>& summands() const { return summands_; }
  std::size_t size() const { return summands_.size(); }

  /// Appends the pure wedge of `indices` (any order; the sorting sign is kept).
  void push_pure(Tuple indices, std::string label, int alpha = 0) {
    Summand<R> s;
    s.k = static_cast<int>(indices.size());
    s.label = std::move(label);
    s.alpha = alpha;
    for (int i : indices)
      if (i < 1 || i > n_) throw std::out_of_range("wedge index out of range");
    int sign = sort_with_sign(indices);
    if (sign != 0) s.coeffs.emplace(indices, R(sign));
    summands_.push_back(std::move(s));
  }
  void push(Summand<R> s) { summands_.push_back(std::move(s)); }

  /// Same shape, no coefficients.
  MultiVector empty_like() const {
    MultiVector out(n_);
    for (const auto& s : summands_) {
      Summand<R> e;
      e.k = s.k;
      e.label = s.label;
      e.alpha = s.alpha;
      out.summands_.push_back(std::move(e));
    }
    return out;
  }

  bool is_zero_vector() const {
    for (const auto& s : summands_)
      if (!s.coeffs.empty()) return false;
    return true;
  }

  MultiVector& operator+=(const MultiVector& o) {
    check_shape(o);
    for (std::size_t i = 0; i < summands_.size(); ++i)
      for (const auto& [t, c] : o.summands_[i].coeffs) summands_[i].add(t, c);
    return *this;
  }
  MultiVector& operator-=(const MultiVector& o) {
    check_shape(o);
    for (std::size_t i = 0; i < summands_.size(); ++i)
      for (const auto& [t, c] : o.summands_[i].coeffs) summands_[i].add(t, -c);
    return *this;
  }
  friend MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
  friend MultiVector operator-(MultiVector a, const MultiVector& b) { return a -= b; }
  friend bool operator==(const MultiVector& a, const MultiVector& b) {
    return a.n_ == b.n_ && a.summands_ == b.summands_;
  }

  void check_shape(const MultiVector& o) const {
    if (n_ != o.n_ || summands_.size() != o.summands_.size())
      throw std::invalid_argument("multivector shape mismatch");
    for (std::size_t i = 0; i < summands_.size(); ++i)
      if (summands_[i].k != o.summands_[i].k || summands_[i].alpha != o.summands_[i].alpha)
        throw std::invalid_argument("multivector shape mismatch");
  }

 private:
  int n_ = 0;
  std::vector<Summand<R>> summands_;
};

namespace detail {

// Column `i` (1-based) of A as a sparse list of (row, entry).
template <class R>
std::vector<std::pair<int, R>> column(const Matrix<R>& a, int i) {
  std::vector<std::pair<int, R>> out;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const R& x = a(r, static_cast<std::size_t>(i - 1));
    if (!is_zero(x)) out.emplace_back(static_cast<int>(r) + 1, x);
  }
  return out;
}

template <class R>
void expand_group(const std::vector<std::vector<std::pair<int, R>>>& cols, std::size_t pos, Tuple& cur,
                  const R& coeff, Summand<R>& out) {
  if (pos == cols.size()) {
    Tuple t = cur;
    int sign = sort_with_sign(t);
    if (sign != 0) out.add(t, sign > 0 ? coeff : R(-coeff));
    return;
  }
  for (const auto& [r, x] : cols[pos]) {
    if (std::find(cur.begin(), cur.end(), r) != cur.end()) continue;
    cur.push_back(r);
    expand_group(cols, pos + 1, cur, R(coeff * x), out);
    cur.pop_back();
  }
}

}  // namespace detail

template <class R>
void check_action_shape(const Matrix<R>& a, const MultiVector<R>& v) {
  if (a.rows() != a.cols() || static_cast<int>(a.rows()) != v.n())
    throw std::invalid_argument("wedge_apply: matrix size does not match multivector");
}

/// Group action: A(v_1∧…∧v_k) = Av_1∧…∧Av_k on every summand.
template <class R>
MultiVector<R> wedge_apply_group(const Matrix<R>& a, const MultiVector<R>& v) {
  check_action_shape(a, v);
  MultiVector<R> out = v.empty_like();
  std::vector<std::vector<std::pair<int, R>>> cols(static_cast<std::size_t>(v.n()) + 1);
  for (int i = 1; i <= v.n(); ++i) cols[static_cast<std::size_t>(i)] = detail::column(a, i);
  for (std::size_t s = 0; s < v.size(); ++s) {
    for (const auto& [tuple, c] : v.summands()[s].coeffs) {
      std::vector<std::vector<std::pair<int, R>>> factor_cols;
      for (int i : tuple) factor_cols.push_back(cols[static_cast<std::size_t>(i)]);
      Tuple cur;
      detail::expand_group(factor_cols, 0, cur, c, out.summands()[s]);
    }
  }
  return out;
}

/// Lie algebra action by the Leibniz rule: A(v_1∧…∧v_k) = Σ_t v_1∧…∧Av_t∧…∧v_k.
template <class R>
MultiVector<R> wedge_apply_derivation(const Matrix<R>& a, const MultiVector<R>& v) {
  check_action_shape(a, v);
  MultiVector<R> out = v.empty_like();
  std::vector<std::vector<std::pair<int, R>>> cols(static_cast<std::size_t>(v.n()) + 1);
  for (int i = 1; i <= v.n(); ++i) cols[static_cast<std::size_t>(i)] = detail::column(a, i);
  for (std::size_t s = 0; s < v.size(); ++s) {
    for (const auto& [tuple, c] : v.summands()[s].coeffs) {
      for (std::size_t t = 0; t < tuple.size(); ++t) {
        for (const auto& [r, x] : cols[static_cast<std::size_t>(tuple[t])]) {
          Tuple img = tuple;
          img[t] = r;
          int sign = sort_with_sign(img);
          if (sign == 0) continue;
          R term = c * x;
          out.summands()[s].add(img, sign > 0 ? term : R(-term));
        }
      }
    }
  }
  return out;
}

enum class ActionMode { Group, Derivation };

template <class R>
MultiVector<R> wedge_apply(const Matrix<R>& a, const MultiVector<R>& v, ActionMode mode) {
  return mode == ActionMode::Group ? wedge_apply_group(a, v) : wedge_apply_derivation(a, v);
}

/// Rational multivector with every coefficient viewed as a constant polynomial.
inline MultiVector<Poly> to_poly(const MultiVector<Rational>& v) {
  MultiVector<Poly> out(v.n());
  for (const auto& s : v.summands()) {
    Summand<Poly> p;
    p.k = s.k;
    p.label = s.label;
    p.alpha = s.alpha;
    for (const auto& [t, c] : s.coeffs) p.coeffs.emplace(t, Poly(c));
    out.push(std::move(p));
  }
  return out;
}

}  // namespace usinv::exact
