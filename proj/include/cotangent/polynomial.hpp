#pragma once

// Sparse multivariate polynomials with exact coefficients in Q or F_p.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cotangent/errors.hpp"

namespace cotangent::ring {

using Rational = mpq_class;

/// Q when the characteristic is 0, otherwise F_p with representatives in [0, p).
class Field {
 public:
  static Field rationals() { return Field(0); }

  static Field prime(unsigned long p) {
    if (p < 2) throw InvalidObject("F_p needs a prime p");
    for (unsigned long d = 2; d * d <= p; ++d)
      if (p % d == 0) throw InvalidObject("F_p needs a prime p, got " + std::to_string(p));
    return Field(p);
  }

  unsigned long characteristic() const { return p_; }
  bool is_rational() const { return p_ == 0; }

  Rational normalize(const Rational& c) const {
    if (p_ == 0) return c;
    mpz_class p(p_);
    mpz_class num = c.get_num() % p;
    mpz_class den = c.get_den() % p;
    if (den == 0) throw Error("division by " + std::to_string(p_) + " in F_" + std::to_string(p_));
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    mpz_class r = (num * inv) % p;
    if (r < 0) r += p;
    return Rational(r);
  }

  Rational add(const Rational& a, const Rational& b) const { return normalize(a + b); }
  Rational sub(const Rational& a, const Rational& b) const { return normalize(a - b); }
  Rational mul(const Rational& a, const Rational& b) const { return normalize(a * b); }
  Rational neg(const Rational& a) const { return normalize(-a); }

  Rational inv(const Rational& a) const {
    if (a == 0) throw Error("inverse of zero");
    return normalize(Rational(1) / a);
  }

  /// "Q" or "F7".
  std::string tag() const { return p_ == 0 ? "Q" : "F" + std::to_string(p_); }

  /// Parses "Q", "QQ", "F7", "F_7", "GF(7)".
  static Field from_tag(const std::string& t) {
    if (t == "Q" || t == "QQ") return rationals();
    std::string digits;
    if (t.rfind("GF(", 0) == 0 && t.size() > 4 && t.back() == ')')
      digits = t.substr(3, t.size() - 4);
    else if (t.rfind("F_", 0) == 0)
      digits = t.substr(2);
    else if (t.rfind("F", 0) == 0)
      digits = t.substr(1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw InvalidObject("unknown field tag '" + t + "'");
    return prime(std::stoul(digits));
  }

  bool operator==(const Field& o) const { return p_ == o.p_; }

 private:
  explicit Field(unsigned long p) : p_(p) {}
  unsigned long p_;
};

/// Room for internal constructions (elimination, square-zero extensions).
inline constexpr std::size_t max_variables = 16;

struct Monomial {
  std::array<std::uint16_t, max_variables> e{};

  static Monomial one() { return {}; }
  static Monomial variable(std::size_t i) {
    Monomial m;
    m.e.at(i) = 1;
    return m;
  }

  unsigned degree() const {
    unsigned d = 0;
    for (auto x : e) d += x;
    return d;
  }
  bool is_one() const { return degree() == 0; }

  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < max_variables; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial m;
    for (std::size_t i = 0; i < max_variables; ++i) {
      unsigned s = unsigned(e[i]) + o.e[i];
      if (s > 0xFFFFu) throw DegreeLimitExceeded("exponent overflow");
      m.e[i] = static_cast<std::uint16_t>(s);
    }
    return m;
  }

  /// Requires o | *this.
  Monomial operator/(const Monomial& o) const {
    Monomial m;
    for (std::size_t i = 0; i < max_variables; ++i) m.e[i] = static_cast<std::uint16_t>(e[i] - o.e[i]);
    return m;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < max_variables; ++i) m.e[i] = std::max(a.e[i], b.e[i]);
    return m;
  }

  static bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < max_variables; ++i)
      if (a.e[i] != 0 && b.e[i] != 0) return false;
    return true;
  }

  bool operator==(const Monomial&) const = default;
};

enum class MonomialOrder { grevlex, lex };

/// Three-way comparison; the first variable is the largest.
inline int compare(const Monomial& a, const Monomial& b, MonomialOrder order) {
  if (order == MonomialOrder::grevlex) {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = max_variables; i-- > 0;)
      if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
    return 0;
  }
  for (std::size_t i = 0; i < max_variables; ++i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
  return 0;
}

struct Term {
  Monomial m;
  Rational c;
};

/// Terms in strictly decreasing order for the ring's monomial order, no zero
/// coefficients. Built and combined through PolyRing.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Term> sorted_terms) : terms_(std::move(sorted_terms)) {}

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  const Term& leading() const { return terms_.front(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  Rational constant_value() const { return terms_.empty() ? Rational(0) : terms_[0].c; }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.m.degree());
    return d;
  }

  bool uses_variable(std::size_t i) const {
    for (const auto& t : terms_)
      if (t.m.e[i] != 0) return true;
    return false;
  }

  bool operator==(const Polynomial& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (!(terms_[i].m == o.terms_[i].m) || terms_[i].c != o.terms_[i].c) return false;
    return true;
  }

 private:
  std::vector<Term> terms_;
};

class PolyRing {
 public:
  PolyRing(Field field, std::vector<std::string> vars, MonomialOrder order = MonomialOrder::grevlex)
      : field_(field), vars_(std::move(vars)), order_(order) {
    if (vars_.size() > max_variables)
      throw SizeLimit("at most " + std::to_string(max_variables) + " variables are supported");
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      const auto& v = vars_[i];
      if (v.empty() || !std::isalpha(static_cast<unsigned char>(v[0])))
        throw InvalidObject("invalid variable name '" + v + "'");
      for (char c : v)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
          throw InvalidObject("invalid variable name '" + v + "'");
      for (std::size_t j = 0; j < i; ++j)
        if (vars_[j] == v) throw InvalidObject("duplicate variable '" + v + "'");
    }
  }

  const Field& field() const { return field_; }
  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  MonomialOrder order() const { return order_; }

  std::size_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    throw InvalidObject("unknown variable '" + name + "'");
  }

  bool operator==(const PolyRing& o) const { return field_ == o.field_ && vars_ == o.vars_ && order_ == o.order_; }

  int cmp(const Monomial& a, const Monomial& b) const { return compare(a, b, order_); }

  Polynomial zero() const { return {}; }
  Polynomial one() const { return constant(1); }

  Polynomial constant(const Rational& c) const {
    Rational v = field_.normalize(c);
    if (v == 0) return {};
    return Polynomial({{Monomial::one(), v}});
  }

  Polynomial variable(std::size_t i) const {
    if (i >= vars_.size()) throw ShapeMismatch("variable index out of range");
    return Polynomial({{Monomial::variable(i), Rational(1)}});
  }

  Polynomial variable(const std::string& name) const { return variable(index_of(name)); }

  Polynomial monomial(const Monomial& m, const Rational& c = 1) const {
    Rational v = field_.normalize(c);
    if (v == 0) return {};
    return Polynomial({{m, v}});
  }

  /// Sorts, merges equal monomials and drops zeros.
  Polynomial make(std::vector<Term> terms) const {
    for (const auto& t : terms)
      for (std::size_t i = vars_.size(); i < max_variables; ++i)
        if (t.m.e[i] != 0) throw ShapeMismatch("monomial uses a variable outside the ring");
    std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) { return cmp(a.m, b.m) > 0; });
    std::vector<Term> out;
    for (auto& t : terms) {
      if (!out.empty() && out.back().m == t.m)
        out.back().c += t.c;
      else
        out.push_back(std::move(t));
    }
    std::vector<Term> kept;
    for (auto& t : out) {
      t.c = field_.normalize(t.c);
      if (t.c != 0) kept.push_back(std::move(t));
    }
    return Polynomial(std::move(kept));
  }

  /// Rebuilds p under this ring's order, after checking it fits the variables.
  Polynomial adopt(const Polynomial& p) const { return make(p.terms()); }

  Polynomial add(const Polynomial& a, const Polynomial& b) const { return merge(a, b, false); }
  Polynomial sub(const Polynomial& a, const Polynomial& b) const { return merge(a, b, true); }

  Polynomial neg(const Polynomial& a) const {
    std::vector<Term> t = a.terms();
    for (auto& x : t) x.c = field_.neg(x.c);
    return Polynomial(std::move(t));
  }

  Polynomial scale(const Polynomial& a, const Rational& c) const {
    Rational v = field_.normalize(c);
    if (v == 0) return {};
    std::vector<Term> t = a.terms();
    for (auto& x : t) x.c = field_.mul(x.c, v);
    return Polynomial(std::move(t));
  }

  /// c * m * a; multiplying by a monomial preserves the term order.
  Polynomial mul_term(const Polynomial& a, const Monomial& m, const Rational& c) const {
    Rational v = field_.normalize(c);
    if (v == 0) return {};
    std::vector<Term> t;
    t.reserve(a.size());
    for (const auto& x : a.terms()) t.push_back({x.m * m, field_.mul(x.c, v)});
    return Polynomial(std::move(t));
  }

  Polynomial mul(const Polynomial& a, const Polynomial& b) const {
    Polynomial acc;
    for (const auto& t : b.terms()) acc = add(acc, mul_term(a, t.m, t.c));
    return acc;
  }

  Polynomial pow(const Polynomial& a, unsigned k) const {
    Polynomial r = one();
    Polynomial base = a;
    while (k) {
      if (k & 1u) r = mul(r, base);
      k >>= 1;
      if (k) base = mul(base, base);
    }
    return r;
  }

  Polynomial derivative(const Polynomial& a, std::size_t i) const {
    std::vector<Term> t;
    for (const auto& x : a.terms()) {
      if (x.m.e[i] == 0) continue;
      Monomial m = x.m;
      Rational c = x.c * Rational(m.e[i]);
      --m.e[i];
      t.push_back({m, c});
    }
    return make(std::move(t));
  }

  /// Replaces variable i by images[i], an element of `target`.
  Polynomial substitute(const Polynomial& a, const std::vector<Polynomial>& images, const PolyRing& target) const {
    if (images.size() != vars_.size()) throw ShapeMismatch("substitute: one image per variable required");
    std::vector<std::vector<Polynomial>> powers(vars_.size());
    auto power = [&](std::size_t i, unsigned k) -> const Polynomial& {
      auto& p = powers[i];
      if (p.empty()) p.push_back(target.one());
      while (p.size() <= k) p.push_back(target.mul(p.back(), images[i]));
      return p[k];
    };
    Polynomial acc;
    for (const auto& t : a.terms()) {
      Polynomial term = target.constant(t.c);
      for (std::size_t i = 0; i < vars_.size() && !term.is_zero(); ++i)
        if (t.m.e[i]) term = target.mul(term, power(i, t.m.e[i]));
      acc = target.add(acc, term);
    }
    return acc;
  }

  Rational evaluate(const Polynomial& a, const std::vector<Rational>& point) const {
    if (point.size() != vars_.size()) throw ShapeMismatch("evaluate: point has the wrong dimension");
    Rational acc = 0;
    for (const auto& t : a.terms()) {
      Rational v = t.c;
      for (std::size_t i = 0; i < vars_.size(); ++i)
        for (unsigned k = 0; k < t.m.e[i]; ++k) v = field_.mul(v, point[i]);
      acc = field_.add(acc, v);
    }
    return acc;
  }

  Polynomial parse(const std::string& text, std::size_t line = 1, std::size_t column = 1) const;

  std::string format_coefficient(const Rational& c) const { return c.get_str(); }

  std::string format_monomial(const Monomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (!m.e[i]) continue;
      if (!s.empty()) s += "*";
      s += vars_[i];
      if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
    }
    return s;
  }

  /// One term without its sign, e.g. "3x^2*y", "1/2*x", "x", "5".
  std::string format_magnitude(const Rational& mag, const Monomial& m) const {
    if (m.is_one()) return format_coefficient(mag);
    std::string ms = format_monomial(m);
    if (mag == 1) return ms;
    if (mag.get_den() == 1) return format_coefficient(mag) + ms;
    return format_coefficient(mag) + "*" + ms;
  }

  /// Over Q negative terms print with a minus sign; over F_p every
  /// coefficient prints as its representative in [0, p).
  std::string format(const Polynomial& a) const {
    if (a.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& t : a.terms()) {
      bool negative = t.c < 0;
      Rational mag = negative ? Rational(-t.c) : t.c;
      if (first)
        s += negative ? "-" : "";
      else
        s += negative ? " - " : " + ";
      s += format_magnitude(mag, t.m);
      first = false;
    }
    return s;
  }

 private:
  Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) const {
    const auto& x = a.terms();
    const auto& y = b.terms();
    std::vector<Term> out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
      int c = i == x.size() ? -1 : j == y.size() ? 1 : cmp(x[i].m, y[j].m);
      if (c > 0) {
        out.push_back(x[i++]);
      } else if (c < 0) {
        out.push_back({y[j].m, subtract ? field_.neg(y[j].c) : y[j].c});
        ++j;
      } else {
        Rational v = subtract ? field_.sub(x[i].c, y[j].c) : field_.add(x[i].c, y[j].c);
        if (v != 0) out.push_back({x[i].m, v});
        ++i;
        ++j;
      }
    }
    return Polynomial(std::move(out));
  }

  Field field_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

namespace detail {

// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := power (['*'|'/'] power)*      juxtaposition multiplies: "2y", "3x^2"
// power  := atom ['^' integer]
// atom   := integer | name | '(' expr ')'
// A name that is not a variable may be a run of variables: "xy" = x*y.
class PolyParser {
 public:
  PolyParser(const PolyRing& r, const std::string& s, std::size_t line, std::size_t column)
      : r_(r), s_(s), line_(line), col0_(column) {}

  Polynomial run() {
    skip();
    if (pos_ == s_.size()) fail("empty expression");
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col0_ + pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool starts_atom() {
    skip();
    if (pos_ >= s_.size()) return false;
    unsigned char c = static_cast<unsigned char>(s_[pos_]);
    return std::isalnum(c) || c == '(';
  }

  Polynomial expr() {
    bool negate = false;
    if (peek('+')) {
      ++pos_;
    } else if (peek('-')) {
      ++pos_;
      negate = true;
    }
    Polynomial acc = term();
    if (negate) acc = r_.neg(acc);
    for (;;) {
      if (peek('+')) {
        ++pos_;
        acc = r_.add(acc, term());
      } else if (peek('-')) {
        ++pos_;
        acc = r_.sub(acc, term());
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = power();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        acc = r_.mul(acc, power());
      } else if (peek('/')) {
        ++pos_;
        std::size_t at = pos_;
        Polynomial d = power();
        if (!d.is_constant() || d.is_zero()) {
          pos_ = at;
          fail("division only by a nonzero constant");
        }
        acc = r_.scale(acc, r_.field().inv(d.constant_value()));
      } else if (starts_atom()) {
        acc = r_.mul(acc, power());
      } else {
        return acc;
      }
    }
  }

  Polynomial power() {
    Polynomial base = atom();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an exponent");
      if (pos_ - start > 4) fail("exponent too large");
      base = r_.pow(base, static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return base;
  }

  Polynomial atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return r_.constant(Rational(mpz_class(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      const auto& vars = r_.variables();
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return r_.variable(i);
      Polynomial product = r_.one();
      std::size_t k = 0;
      while (k < name.size()) {
        std::size_t best = 0, which = 0;
        for (std::size_t i = 0; i < vars.size(); ++i)
          if (vars[i].size() > best && name.compare(k, vars[i].size(), vars[i]) == 0) {
            best = vars[i].size();
            which = i;
          }
        if (best == 0) {
          pos_ = start;
          fail("unknown variable '" + name + "'");
        }
        product = r_.mul(product, r_.variable(which));
        k += best;
      }
      return product;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  const PolyRing& r_;
  const std::string& s_;
  std::size_t line_, col0_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial PolyRing::parse(const std::string& text, std::size_t line, std::size_t column) const {
  return detail::PolyParser(*this, text, line, column).run();
}

}  // namespace cotangent::ring
