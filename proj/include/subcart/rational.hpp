#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "subcart/error.hpp"

namespace subcart {

// Arbitrary precision rational; GMP keeps it canonical (den > 0, reduced).
using Rational = mpq_class;
using Vector = std::vector<Rational>;
using Point = std::vector<Rational>;

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Accepts "[-]digits" or "[-]digits/digits" with a nonzero denominator.
inline Rational parse_rational(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::size_t end = text.size();
  while (end > i && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  std::string_view body = text.substr(i, end - i);
  if (body.empty()) throw ParseError("empty rational literal", i);

  std::size_t pos = 0;
  bool negative = false;
  if (body[pos] == '-' || body[pos] == '+') {
    negative = body[pos] == '-';
    ++pos;
  }
  auto digits = [&](std::size_t from) {
    std::size_t k = from;
    while (k < body.size() && std::isdigit(static_cast<unsigned char>(body[k]))) ++k;
    return k;
  };
  std::size_t num_end = digits(pos);
  if (num_end == pos) throw ParseError("expected digits in rational literal", i + pos);
  mpz_class num(std::string(body.substr(pos, num_end - pos)), 10);
  mpz_class den = 1;
  if (num_end < body.size()) {
    if (body[num_end] != '/') throw ParseError("unexpected character in rational literal", i + num_end);
    std::size_t den_end = digits(num_end + 1);
    if (den_end == num_end + 1) throw ParseError("expected denominator digits", i + num_end + 1);
    if (den_end != body.size()) throw ParseError("unexpected character in rational literal", i + den_end);
    den = mpz_class(std::string(body.substr(num_end + 1, den_end - num_end - 1)), 10);
    if (den == 0) throw ParseError("zero denominator", i + num_end + 1);
  }
  Rational q(negative ? mpz_class(-num) : num, den);
  q.canonicalize();
  return q;
}

inline std::vector<std::string> to_strings(const Vector& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

// Parses a comma separated list such as "0,1/2,-3".
inline Point parse_point(std::string_view csv) {
  Point out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = csv.find(',', start);
    out.push_back(parse_rational(csv.substr(start, comma == std::string_view::npos ? csv.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline Rational inf_distance(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw DimensionMismatch("points of different dimension");
  Rational best = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational d = abs(a[i] - b[i]);
    if (d > best) best = d;
  }
  return best;
}

}  // namespace subcart
