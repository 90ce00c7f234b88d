#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "subcart/io.hpp"
#include "subcart/stratify.hpp"

using namespace subcart;
using oracle::q;

namespace {

Polynomial P(std::string_view s, std::size_t n) { return parse_polynomial(s, n); }

SpacePresentation fixture(const std::string& name) { return load_space(std::string(SUBCART_FIXTURE_DIR "/") + name + ".json"); }

std::size_t oracle_dim(const SpacePresentation& s, const Point& x) {
  return s.ambient_dim - oracle::minor_rank(oracle::gradient_rows(s.equations, x), s.ambient_dim);
}

void check_report_invariants(const SpacePresentation& s, const StratificationReport& r) {
  REQUIRE(r.strata.size() == s.ambient_dim + 1);
  for (std::size_t i = 0; i + 1 < r.strata.size(); ++i)
    CHECK(std::includes(r.strata[i + 1].begin(), r.strata[i + 1].end(), r.strata[i].begin(), r.strata[i].end()));
  for (std::size_t k = 0; k < r.records.size(); ++k) {
    const auto& rec = r.records[k];
    CHECK(rec.structural_dim <= s.ambient_dim);
    CHECK(rec.structural_dim == tangent_space(s, rec.point).dimension());
    CHECK(rec.structural_dim == oracle_dim(s, rec.point));
    for (std::size_t i = 0; i < r.strata.size(); ++i) {
      bool in = std::binary_search(r.strata[i].begin(), r.strata[i].end(), k);
      CHECK(in == (i >= rec.structural_dim));
    }
  }
}

}  // namespace

TEST_CASE("structural dimension is n minus the Jacobian rank", "[stratify]") {
  SpacePresentation cone = fixture("cone");
  CHECK(structural_dim(cone, Point{0, 0, 0}) == 3);
  CHECK(structural_dim(cone, Point{1, 0, 1}) == 2);
  CHECK(structural_dim(fixture("sphere"), Point{1, 0, 0}) == 2);
  CHECK(structural_dim(fixture("point"), Point{0}) == 0);
  CHECK_THROWS_AS(structural_dim(cone, Point{1, 1, 1}), NotMember);
}

TEST_CASE("classify compares neighbor dimensions", "[stratify]") {
  SpacePresentation cone = fixture("cone");
  const std::vector<Point> ring{{1, 0, 1}, {-1, 0, 1}, {1, 0, -1}, {-1, 0, -1}};
  CHECK(classify(cone, Point{0, 0, 0}, ring) == Label::singular);
  CHECK(classify(cone, Point{1, 0, 1}, {Point{q(3, 4), 1, q(5, 4)}, Point{q(4, 5), q(3, 5), 1}}) == Label::regular);
  CHECK(classify(cone, Point{1, 0, 1}, {}) == Label::unknown);
  // A higher-dimensional neighbor alone is no evidence either way.
  CHECK(classify(cone, Point{1, 0, 1}, {Point{0, 0, 0}}) == Label::unknown);
  CHECK(classify(cone, Point{1, 0, 1}, {Point{0, 0, 0}, Point{3, 4, 5}}) == Label::regular);
  CHECK_THROWS_AS(classify(cone, Point{1, 0, 1}, {Point{1, 1, 1}}), NotMember);
}

TEST_CASE("cone stratification isolates the vertex", "[stratify]") {
  SpacePresentation cone = fixture("cone");
  StratificationReport r = stratify(cone);
  check_report_invariants(cone, r);
  std::size_t dim3 = 0;
  for (const auto& rec : r.records) {
    if (rec.point == Point{0, 0, 0}) {
      CHECK(rec.structural_dim == 3);
      CHECK(rec.label == Label::singular);
      ++dim3;
    } else {
      CHECK(rec.structural_dim == 2);
      CHECK(rec.label == Label::regular);
    }
  }
  CHECK(dim3 == 1);
  CHECK(r.usc.pass);
  CHECK(r.open.pass);
  CHECK(r.dense.pass);
  CHECK(r.caveats.empty());
}

TEST_CASE("smooth and unconstrained spaces are everywhere regular", "[stratify]") {
  for (const char* name : {"sphere", "halfline"}) {
    SpacePresentation s = fixture(name);
    StratificationReport r = stratify(s);
    check_report_invariants(s, r);
    for (const auto& rec : r.records) CHECK(rec.label == Label::regular);
    CHECK(r.singular_count() == 0);
    CHECK((r.usc.pass && r.open.pass && r.dense.pass));
  }

  SpacePresentation line{"R1", 1, {}, {}, {}, {Point{-2}, Point{-1}, Point{0}, Point{1}, Point{2}}};
  StratificationReport r = stratify(line);
  for (const auto& rec : r.records) {
    CHECK(rec.structural_dim == 1);
    CHECK(rec.label == Label::regular);
  }
}

TEST_CASE("reducible and non-normal fixtures", "[stratify]") {
  SpacePresentation cross = fixture("cross");
  StratificationReport rc = stratify(cross);
  check_report_invariants(cross, rc);
  for (const auto& rec : rc.records) {
    const bool origin = rec.point == Point{0, 0};
    CHECK(rec.structural_dim == (origin ? 2u : 1u));
    CHECK(rec.label == (origin ? Label::singular : Label::regular));
  }
  CHECK(verify_dense(rc.records, 1).pass);

  SpacePresentation umbrella = fixture("umbrella");
  StratificationReport ru = stratify(umbrella);
  check_report_invariants(umbrella, ru);
  for (const auto& rec : ru.records) {
    const bool on_axis = rec.point[0] == 0 && rec.point[1] == 0;
    CHECK((rec.label == Label::singular) == on_axis);
  }
}

TEST_CASE("an isolated point is regular", "[stratify]") {
  SpacePresentation pt = fixture("point");
  StratificationReport r = stratify(pt);
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].structural_dim == 0);
  CHECK(r.records[0].label == Label::regular);
  CHECK(verify_dense(r.records, q(1, 1000)).pass);
}

TEST_CASE("verifiers reject constructed counterexamples", "[stratify][negative]") {
  std::vector<PointRecord> usc_bad{{Point{0, 0}, 1, Label::regular}, {Point{q(1, 4), 0}, 2, Label::regular}};
  CHECK_FALSE(verify_usc(usc_bad, q(1, 2)).pass);
  CHECK(verify_usc(usc_bad, q(1, 8)).pass);

  std::vector<PointRecord> open_bad{{Point{0}, 1, Label::regular}, {Point{q(1, 4)}, 1, Label::singular}};
  CHECK_FALSE(verify_open(open_bad, q(1, 2)).pass);
  open_bad.push_back({Point{q(-1, 4)}, 1, Label::regular});
  CHECK(verify_open(open_bad, q(1, 2)).pass);

  std::vector<PointRecord> sparse{{Point{0}, 1, Label::singular}, {Point{5}, 1, Label::regular}};
  CHECK_FALSE(verify_dense(sparse, 1).pass);
  CHECK(verify_dense(sparse, 5).pass);

  CHECK_THROWS_AS(verify_usc({}, 1), Error);
  CHECK_THROWS_AS(verify_open({}, 1), Error);
  CHECK_THROWS_AS(verify_dense({}, 1), Error);
}

TEST_CASE("default radius is the largest nearest-neighbor gap", "[stratify]") {
  CHECK(max_nearest_neighbor_gap({Point{0}, Point{1}, Point{3}}) == 2);
  CHECK(max_nearest_neighbor_gap({Point{0}}) == 0);
  CHECK(max_nearest_neighbor_gap({Point{0, 0}, Point{1, q(1, 2)}}) == 1);
}

TEST_CASE("repeated factors are flagged", "[stratify]") {
  SpacePresentation doubled{"double-point", 1, {P("x1^2", 1)}, {}, {}, {Point{0}}};
  StratificationReport r = stratify(doubled);
  CHECK(r.records[0].structural_dim == 1);  // over-approximates the true dimension 0
  REQUIRE(r.caveats.size() == 1);
  CHECK(r.caveats[0].find("equations[0]") != std::string::npos);

  SpacePresentation squared_line{"line", 2, {P("(x1 - x2)^2", 2)}, {}, {}, {Point{0, 0}, Point{1, 1}}};
  CHECK(stratify(squared_line).caveats.size() == 1);
  CHECK(stratify(fixture("umbrella")).caveats.empty());
}
