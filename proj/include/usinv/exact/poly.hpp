#pragma once

#include <compare>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "usinv/exact/rational.hpp"

namespace usinv::exact {

/// A monomial stored sparsely as (variable id, exponent) pairs sorted by id.
/// Ordered graded-lexicographically: total degree first, then the exponent
/// vector with variable 0 most significant.
class Monomial {
 public:
  Monomial() = default;
  static Monomial variable(int var, int exponent = 1);

  int degree() const { return degree_; }
  int exponent(int var) const;
  bool is_one() const { return factors_.empty(); }
  const std::vector<std::pair<int, int>>& factors() const { return factors_; }

  Monomial operator*(const Monomial& o) const;
  /// Lowers the exponent of `var` by one; the exponent must be positive.
  Monomial without_one(int var) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

 private:
  std::vector<std::pair<int, int>> factors_;
  int degree_ = 0;
};

using VarNamer = std::function<std::string(int)>;

/// Multivariate polynomial over the rationals. No zero coefficient is ever
/// stored, so `terms().empty()` is the zero test.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT: constants convert implicitly
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT
  Poly(int c) : Poly(Rational(c)) {}   // NOLINT
  static Poly variable(int var);
  static Poly term(const Monomial& m, const Rational& c);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  /// Highest total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  Poly homogeneous_part(int d) const;
  Rational coefficient(const Monomial& m) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  Poly operator-() const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  Poly derivative(int var) const;
  /// Replaces `var` by `value` everywhere.
  Poly substitute(int var, const Poly& value) const;
  /// Multiplies by `m` without going through the general product.
  Poly times_monomial(const Monomial& m, const Rational& c) const;

  std::string to_string(const VarNamer& names) const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

inline bool is_zero(const Poly& p) { return p.is_zero(); }

Poly pow(const Poly& p, int e);

/// Default namer: x0, x1, ...
std::string default_var_name(int var);

}  // namespace usinv::exact
