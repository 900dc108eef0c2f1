#include "usinv/exact/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace usinv::exact {

Monomial Monomial::variable(int var, int exponent) {
  Monomial m;
  if (exponent > 0) {
    m.factors_.emplace_back(var, exponent);
    m.degree_ = exponent;
  }
  return m;
}

int Monomial::exponent(int var) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), std::make_pair(var, 0));
  return (it != factors_.end() && it->first == var) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + o.factors_.size());
  auto a = factors_.begin();
  auto b = o.factors_.begin();
  while (a != factors_.end() || b != o.factors_.end()) {
    if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  out.degree_ = degree_ + o.degree_;
  return out;
}

Monomial Monomial::without_one(int var) const {
  Monomial out = *this;
  auto it = std::lower_bound(out.factors_.begin(), out.factors_.end(), std::make_pair(var, 0));
  if (it == out.factors_.end() || it->first != var) throw std::invalid_argument("Monomial::without_one: variable absent");
  if (--it->second == 0) out.factors_.erase(it);
  --out.degree_;
  return out;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
  // Lex with variable 0 most significant: at the first variable where the
  // exponents differ, the larger exponent wins.
  auto ia = a.factors_.begin();
  auto ib = b.factors_.begin();
  while (ia != a.factors_.end() && ib != b.factors_.end()) {
    if (ia->first != ib->first) return ia->first < ib->first ? std::strong_ordering::greater : std::strong_ordering::less;
    if (ia->second != ib->second) return ia->second <=> ib->second;
    ++ia;
    ++ib;
  }
  if (ia != a.factors_.end()) return std::strong_ordering::greater;
  if (ib != b.factors_.end()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

Poly::Poly(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace(Monomial{}, c);
}

Poly Poly::variable(int var) { return term(Monomial::variable(var), 1); }

Poly Poly::term(const Monomial& m, const Rational& c) {
  Poly p;
  if (sgn(c) != 0) p.terms_.emplace(m, c);
  return p;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

Rational Poly::constant_term() const { return coefficient(Monomial{}); }

int Poly::degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

bool Poly::is_homogeneous() const {
  return terms_.empty() || terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

Poly Poly::homogeneous_part(int d) const {
  Poly out;
  for (const auto& [m, c] : terms_)
    if (m.degree() == d) out.terms_.emplace_hint(out.terms_.end(), m, c);
  return out;
}

Rational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [m, v] : out.terms_) v = -v;
  return out;
}

Poly Poly::derivative(int var) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(var);
    if (e > 0) out.add_term(m.without_one(var), c * e);
  }
  return out;
}

Poly Poly::substitute(int var, const Poly& value) const {
  Poly out;
  std::map<int, Poly> powers;
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(var);
    if (e == 0) {
      out.add_term(m, c);
      continue;
    }
    Monomial rest;
    for (const auto& [v, k] : m.factors())
      if (v != var) rest = rest * Monomial::variable(v, k);
    auto it = powers.find(e);
    if (it == powers.end()) it = powers.emplace(e, pow(value, e)).first;
    out += it->second.times_monomial(rest, c);
  }
  return out;
}

Poly Poly::times_monomial(const Monomial& m, const Rational& c) const {
  Poly out;
  if (sgn(c) == 0) return out;
  for (const auto& [mm, v] : terms_) out.terms_.emplace_hint(out.terms_.end(), mm * m, v * c);
  return out;
}

std::string Poly::to_string(const VarNamer& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest grlex term first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = mag == 1;
    if (!unit || m.is_one()) os << mag.get_str();
    bool need_star = !unit;
    for (const auto& [v, e] : m.factors()) {
      if (need_star) os << "*";
      os << names(v);
      if (e > 1) os << "^" << e;
      need_star = true;
    }
  }
  return os.str();
}

Poly pow(const Poly& p, int e) {
  Poly out(1);
  Poly base = p;
  while (e > 0) {
    if (e & 1) out *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return out;
}

std::string default_var_name(int var) { return "x" + std::to_string(var); }

}  // namespace usinv::exact
