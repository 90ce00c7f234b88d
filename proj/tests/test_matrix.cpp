#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "subcart/matrix.hpp"

using namespace subcart;
using oracle::q;

TEST_CASE("rref picks the leftmost pivots", "[matrix]") {
  Matrix m = from_rows({{0, 2, 4}, {0, 1, 2}, {1, 0, 1}}, 3);
  RowEchelon e = rref(m);
  CHECK(e.pivots == std::vector<std::size_t>{0, 1});
  CHECK(e.free == std::vector<std::size_t>{2});
  CHECK(e.reduced.row(0) == Vector{1, 0, 1});
  CHECK(e.reduced.row(1) == Vector{0, 1, 2});
  CHECK(is_zero(e.reduced.row(2)));
}

TEST_CASE("kernel basis is the identity on free columns", "[matrix]") {
  Matrix j = from_rows({{2, 0, -2}}, 3);
  auto basis = kernel_basis(j);
  REQUIRE(basis.size() == 2);
  CHECK(basis[0] == Vector{0, 1, 0});
  CHECK(basis[1] == Vector{1, 0, 1});

  CHECK(kernel_basis(Matrix(0, 2)).size() == 2);
  CHECK(kernel_basis(from_rows({{1, 0}, {0, 1}}, 2)).empty());
}

TEST_CASE("rank and kernel agree with the minor oracle", "[matrix][property]") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> small(-2, 2), shape(1, 3);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t rows = static_cast<std::size_t>(shape(rng)), cols = static_cast<std::size_t>(shape(rng));
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = trial % 3 == 0 ? Rational(small(rng)) : q(small(rng), 1 + trial % 4);
    const std::size_t r = rank(m);
    CHECK(r == oracle::minor_rank(m));
    auto basis = kernel_basis(m);
    CHECK(basis.size() == cols - r);
    for (const auto& v : basis) CHECK(is_zero(m.apply(v)));
    if (!basis.empty()) CHECK(oracle::minor_rank(from_rows(basis, cols)) == basis.size());
  }
}
