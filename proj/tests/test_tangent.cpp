#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "subcart/io.hpp"
#include "subcart/tangent.hpp"

using namespace subcart;
using oracle::q;

namespace {

Polynomial P(std::string_view s, std::size_t n) { return parse_polynomial(s, n); }

SpacePresentation cone() { return SpacePresentation{"cone", 3, {P("x1^2 + x2^2 - x3^2", 3)}, {}, {}, {}}; }
SpacePresentation cross() { return SpacePresentation{"cross", 2, {P("x1*x2", 2)}, {}, {}, {}}; }

}  // namespace

TEST_CASE("jacobian rows are generator gradients", "[tangent]") {
  SpacePresentation c = cone();
  CHECK(jacobian(c, Point{0, 0, 0}) == from_rows({{0, 0, 0}}, 3));
  // Oracle: power rule straight off the term map.
  CHECK(oracle::gradient_rows(c.equations, Point{1, 0, 1}) == std::vector<Vector>{{2, 0, -2}});
  CHECK(jacobian(c, Point{1, 0, 1}) == from_rows({{2, 0, -2}}, 3));
  CHECK(jacobian(cross(), Point{1, 0}) == from_rows({{0, 1}}, 2));
  CHECK_THROWS_AS(jacobian(c, Point{1, 1, 1}), NotMember);
}

TEST_CASE("tangent space is the pivot-normalized kernel", "[tangent]") {
  SpacePresentation c = cone();
  TangentBasis origin = tangent_space(c, Point{0, 0, 0});
  CHECK(origin.basis == std::vector<Vector>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});

  TangentBasis smooth = tangent_space(c, Point{1, 0, 1});
  CHECK(smooth.basis == std::vector<Vector>{{0, 1, 0}, {1, 0, 1}});
  CHECK(smooth.dimension() == 2);

  SpacePresentation plane{"R2", 2, {}, {}, {}, {}};
  CHECK(tangent_space(plane, Point{q(5, 7), -3}).basis == std::vector<Vector>{{1, 0}, {0, 1}});
  CHECK_THROWS_AS(tangent_space(c, Point{0, 0, 1}), NotMember);
}

TEST_CASE("is_tangent is the annihilation test", "[tangent]") {
  SpacePresentation c = cone();
  CHECK(is_tangent(c, Point{1, 0, 1}, Vector{0, 1, 0}));
  CHECK_FALSE(is_tangent(c, Point{1, 0, 1}, Vector{1, 0, 0}));
  CHECK(is_tangent(c, Point{0, 0, 0}, Vector{q(3, 2), -7, 2}));
  CHECK_THROWS_AS(is_tangent(c, Point{1, 0, 1}, Vector{1, 0}), DimensionMismatch);
  CHECK_THROWS_AS(is_tangent(c, Point{2, 0, 1}, Vector{1, 0, 0}), NotMember);
}

TEST_CASE("derivations act through the gradient of a representative", "[tangent]") {
  SpacePresentation c = cone();
  TangentVector v = make_tangent_vector(c, Point{1, 0, 1}, Vector{1, 0, 1});
  CHECK(apply_derivation(v, RingElement{&c, c.equations[0]}) == 0);
  CHECK(apply_derivation(v, RingElement{&c, Polynomial::constant(3, 42)}) == 0);
  CHECK(apply_derivation(v, RingElement{&c, P("x3", 3)}) == 1);
  CHECK_THROWS(make_tangent_vector(c, Point{1, 0, 1}, Vector{1, 0, 0}));

  SpacePresentation other = cone();
  CHECK_THROWS_AS(apply_derivation(v, RingElement{&other, P("x3", 3)}), Error);
}

TEST_CASE("tangent bundle membership and bundle functions", "[tangent][bundle]") {
  SpacePresentation c = cone();
  CHECK(bundle_member(c, Point{1, 0, 1}, Vector{0, 1, 0}));
  CHECK_FALSE(bundle_member(c, Point{1, 1, 1}, Vector{0, 0, 0}));
  CHECK(bundle_member(c, Point{3, 4, 5}, Vector{0, 0, 0}));
  CHECK_FALSE(bundle_member(c, Point{1, 0, 1}, Vector{1, 0, 0}));

  BundlePoint p{Point{1, 0, 1}, Vector{0, 1, 0}};
  CHECK(eval_bundle_function(c, P("x4", 6), p) == 0);  // dq1
  CHECK(eval_bundle_function(c, P("x1", 6), p) == 1);  // q1 o tau
  CHECK(eval_bundle_function(c, P("x1*x5", 6), p) == 1);
  CHECK_THROWS_AS(eval_bundle_function(c, P("x1", 3), p), DimensionMismatch);
  CHECK_THROWS_AS(eval_bundle_function(c, P("x1", 6), BundlePoint{Point{1, 0, 1}, Vector{1, 0, 0}}), NotMember);
}

TEST_CASE("derivation laws on sampled cone points", "[tangent][property]") {
  SpacePresentation c = load_space(SUBCART_FIXTURE_DIR "/cone.json");
  const auto pts = sample(c);
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 200; ++trial) {
    const Point& x = pts[static_cast<std::size_t>(trial) % pts.size()];
    TangentBasis tb = tangent_space(c, x);
    // dim = n - rank, rank from the minor oracle on independently computed gradients.
    CHECK(tb.dimension() == 3 - oracle::minor_rank(oracle::gradient_rows(c.equations, x), 3));

    Vector comps(3, Rational(0));
    for (const auto& b : tb.basis) {
      Rational w = oracle::random_rational(rng);
      for (std::size_t i = 0; i < 3; ++i) comps[i] += w * b[i];
    }
    CHECK(is_tangent(c, x, comps));  // closed under linear combination
    TangentVector v{&c, x, comps};

    Polynomial f = oracle::random_polynomial(rng, 3, 3);
    Polynomial g = oracle::random_polynomial(rng, 3, 3);
    CHECK(apply_derivation(v, RingElement{&c, f * g}) ==
          apply_derivation(v, RingElement{&c, f}) * g.eval(x) + apply_derivation(v, RingElement{&c, g}) * f.eval(x));
    CHECK(apply_derivation(v, RingElement{&c, c.equations[0]}) == 0);

    Polynomial a = oracle::random_polynomial(rng, 3, 2);
    Polynomial f2 = f + a * c.equations[0];
    REQUIRE(representatives_agree(RingElement{&c, f2}, RingElement{&c, f}, IdealWitness{{a}}));
    CHECK(apply_derivation(v, RingElement{&c, f2}) == apply_derivation(v, RingElement{&c, f}));

    // Bundle functions of the base variables only are pullbacks.
    Polynomial base_only = oracle::random_polynomial(rng, 3, 2);
    Polynomial lifted(6);
    for (const auto& [e, coef] : base_only.terms()) lifted.add_term({e[0], e[1], e[2], 0, 0, 0}, coef);
    CHECK(eval_bundle_function(c, lifted, BundlePoint{x, comps}) == base_only.eval(x));
  }
}
