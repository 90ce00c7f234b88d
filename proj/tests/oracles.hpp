// Independent reference computations for the test suites. Nothing here calls
// the elimination or expansion code under test.
#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "subcart/matrix.hpp"
#include "subcart/poly.hpp"
#include "subcart/rational.hpp"

namespace oracle {

using subcart::Rational;

inline Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Dense univariate product, coefficients indexed by degree.
inline std::vector<Rational> multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline std::vector<Rational> power(const std::vector<Rational>& a, unsigned k) {
  std::vector<Rational> out{Rational(1)};
  for (unsigned i = 0; i < k; ++i) out = multiply(out, a);
  return out;
}

// Leibniz expansion over all permutations.
inline Rational determinant(const std::vector<std::vector<Rational>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

// Largest k with a nonzero k x k minor, by exhaustive enumeration.
inline std::size_t minor_rank(const std::vector<std::vector<Rational>>& m, std::size_t cols) {
  const std::size_t rows = m.size();
  for (std::size_t k = std::min(rows, cols); k > 0; --k) {
    for (const auto& rs : subsets(rows, k)) {
      for (const auto& cs : subsets(cols, k)) {
        std::vector<std::vector<Rational>> sub(k, std::vector<Rational>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[rs[i]][cs[j]];
        if (determinant(sub) != 0) return k;
      }
    }
  }
  return 0;
}

inline std::size_t minor_rank(const subcart::Matrix& m) {
  std::vector<std::vector<Rational>> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  return minor_rank(rows, m.cols());
}

// Gradient of each generator evaluated by the power rule directly on the
// term map, without Polynomial::partial.
inline std::vector<std::vector<Rational>> gradient_rows(const std::vector<subcart::Polynomial>& gens, const subcart::Point& x) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& g : gens) {
    std::vector<Rational> row(x.size(), Rational(0));
    for (const auto& [e, c] : g.terms()) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (e[i] == 0) continue;
        Rational t = c * e[i];
        for (std::size_t k = 0; k < x.size(); ++k) {
          unsigned p = e[k] - (k == i ? 1 : 0);
          for (unsigned r = 0; r < p; ++r) t *= x[k];
        }
        row[i] += t;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

// Random polynomial with small rational coefficients and total degree <= max_degree.
inline subcart::Polynomial random_polynomial(std::mt19937& rng, std::size_t dim, unsigned max_degree, std::size_t max_terms = 4) {
  std::uniform_int_distribution<int> coef(-5, 5), den(1, 4), count(1, static_cast<int>(max_terms));
  std::uniform_int_distribution<unsigned> deg(0, max_degree);
  std::uniform_int_distribution<std::size_t> var(0, dim - 1);
  subcart::Polynomial p(dim);
  const int terms = count(rng);
  for (int t = 0; t < terms; ++t) {
    subcart::Exponent e(dim, 0);
    const unsigned d = deg(rng);
    for (unsigned k = 0; k < d; ++k) ++e[var(rng)];
    p.add_term(e, q(coef(rng), den(rng)));
  }
  return p;
}

inline Rational random_rational(std::mt19937& rng, int span = 6) {
  std::uniform_int_distribution<int> num(-span, span), den(1, 4);
  return q(num(rng), den(rng));
}

}  // namespace oracle
