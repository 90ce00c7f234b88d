#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subcart/error.hpp"
#include "subcart/rational.hpp"

namespace subcart {

using Exponent = std::vector<unsigned>;

inline unsigned total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0u); }

// Graded lexicographic, highest term first: larger total degree wins, ties
// broken by the larger exponent of x1, then x2, ...
struct GrlexDescending {
  bool operator()(const Exponent& a, const Exponent& b) const {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

// Sparse multivariate polynomial over Q in variables x1..xn. Coordinates are
// 0-based in the C++ API and 1-based in text ("x1" is coordinate 0).
class Polynomial {
 public:
  using Terms = std::map<Exponent, Rational, GrlexDescending>;

  explicit Polynomial(std::size_t ambient_dim) : dim_(ambient_dim) {}

  static Polynomial constant(std::size_t ambient_dim, const Rational& c) {
    Polynomial p(ambient_dim);
    p.add_term(Exponent(ambient_dim, 0), c);
    return p;
  }

  static Polynomial variable(std::size_t ambient_dim, std::size_t i) {
    if (i >= ambient_dim) throw DimensionMismatch("variable index " + std::to_string(i + 1) + " exceeds ambient dimension");
    Exponent e(ambient_dim, 0);
    e[i] = 1;
    Polynomial p(ambient_dim);
    p.add_term(e, 1);
    return p;
  }

  std::size_t ambient_dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(total_degree(terms_.begin()->first)); }

  Rational coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  // Adds c * x^e, dropping the term if it cancels.
  void add_term(const Exponent& e, const Rational& c) {
    if (e.size() != dim_) throw DimensionMismatch("exponent length differs from ambient dimension");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational eval(std::span<const Rational> point) const {
    if (point.size() != dim_) throw DimensionMismatch("point has dimension " + std::to_string(point.size()) + ", polynomial has " + std::to_string(dim_));
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < dim_; ++i) {
        if (e[i] == 0) continue;
        mpq_class pw;
        mpz_pow_ui(pw.get_num_mpz_t(), point[i].get_num_mpz_t(), e[i]);
        mpz_pow_ui(pw.get_den_mpz_t(), point[i].get_den_mpz_t(), e[i]);
        t *= pw;
      }
      sum += t;
    }
    return sum;
  }

  Polynomial partial(std::size_t i) const {
    if (i >= dim_) throw DimensionMismatch("partial derivative index " + std::to_string(i + 1) + " out of range");
    Polynomial out(dim_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponent d = e;
      --d[i];
      out.add_term(d, c * e[i]);
    }
    return out;
  }

  Polynomial pow(unsigned k) const {
    Polynomial result = constant(dim_, 1);
    Polynomial base = *this;
    while (k > 0) {
      if (k & 1u) result = result * base;
      k >>= 1u;
      if (k > 0) base = base * base;
    }
    return result;
  }

  Polynomial& operator+=(const Polynomial& q) {
    check_dim(q);
    for (const auto& [e, c] : q.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& q) {
    check_dim(q);
    for (const auto& [e, c] : q.terms_) add_term(e, -c);
    return *this;
  }

  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator-(const Polynomial& p) { return p * Rational(-1); }

  friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    p.check_dim(q);
    Polynomial out(p.dim_);
    Exponent e(p.dim_);
    for (const auto& [ea, ca] : p.terms_) {
      for (const auto& [eb, cb] : q.terms_) {
        for (std::size_t i = 0; i < p.dim_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  friend Polynomial operator*(const Polynomial& p, const Rational& s) {
    Polynomial out(p.dim_);
    if (s == 0) return out;
    for (const auto& [e, c] : p.terms_) out.terms_.emplace(e, c * s);
    return out;
  }
  friend Polynomial operator*(const Rational& s, const Polynomial& p) { return p * s; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.dim_ == b.dim_ && a.terms_ == b.terms_; }

  // Canonical text in the parser grammar, terms in descending grlex order.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      bool negative = c < 0;
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      Rational mag = abs(c);
      std::string mono = monomial_text(e);
      if (mono.empty()) {
        out += mag.get_str();
      } else if (mag == 1) {
        out += mono;
      } else {
        out += mag.get_str() + "*" + mono;
      }
    }
    return out;
  }

 private:
  void check_dim(const Polynomial& q) const {
    if (q.dim_ != dim_) throw DimensionMismatch("polynomials in " + std::to_string(dim_) + " and " + std::to_string(q.dim_) + " variables");
  }

  static std::string monomial_text(const Exponent& e) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += "x" + std::to_string(i + 1);
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
    return out;
  }

  std::size_t dim_;
  Terms terms_;
};

namespace detail {

// Recursive descent over
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)?
//   base   := 'x' uint | rational | '(' expr ')'
class PolynomialParser {
 public:
  PolynomialParser(std::string_view text, std::size_t dim) : text_(text), dim_(dim) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected unsigned integer", start);
    return std::string(text_.substr(start, pos_ - start));
  }

  Polynomial expr() {
    Polynomial acc(dim_);
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Polynomial factor() {
    Polynomial b = base();
    if (accept('^')) {
      std::size_t at = pos_;
      std::string d = digits();
      if (d.size() > 9) throw ParseError("exponent too large", at);
      b = b.pow(static_cast<unsigned>(std::stoul(d)));
    }
    return b;
  }

  Polynomial base() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == 'x') {
      std::size_t at = pos_;
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw ParseError("expected variable index after 'x'", pos_);
      std::string d = digits();
      unsigned long index = d.size() > 9 ? 0 : std::stoul(d);
      if (index == 0 || index > dim_)
        throw ParseError("variable index x" + d + " out of range for ambient dimension " + std::to_string(dim_), at);
      return Polynomial::variable(dim_, index - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num(digits(), 10);
      mpz_class den = 1;
      if (accept('/')) {
        std::size_t at = pos_;
        den = mpz_class(digits(), 10);
        if (den == 0) throw ParseError("zero denominator", at);
      }
      Rational q(num, den);
      q.canonicalize();
      return Polynomial::constant(dim_, q);
    }
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view text_;
  std::size_t dim_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text, std::size_t ambient_dim) {
  return detail::PolynomialParser(text, ambient_dim).parse();
}

}  // namespace subcart
