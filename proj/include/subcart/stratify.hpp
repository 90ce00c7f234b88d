#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "subcart/error.hpp"
#include "subcart/matrix.hpp"
#include "subcart/space.hpp"
#include "subcart/tangent.hpp"

namespace subcart {

enum class Label { regular, singular, unknown };

inline const char* to_string(Label l) {
  switch (l) {
    case Label::regular: return "regular";
    case Label::singular: return "singular";
    case Label::unknown: return "unknown";
  }
  return "unknown";
}

inline Label parse_label(const std::string& s) {
  if (s == "regular") return Label::regular;
  if (s == "singular") return Label::singular;
  if (s == "unknown") return Label::unknown;
  throw Error("unknown label '" + s + "'");
}

struct PointRecord {
  Point point;
  std::size_t structural_dim;
  Label label = Label::unknown;
};

struct Verdict {
  std::string name;
  bool pass = true;
  std::string parameter_name;
  Rational parameter;
  std::vector<std::string> violations;
};

struct StratificationReport {
  std::string space_name;
  std::size_t ambient_dim = 0;
  std::vector<PointRecord> records;
  // strata[i] holds the indices of records with structural_dim <= i.
  std::vector<std::vector<std::size_t>> strata;
  Rational radius;
  Rational epsilon;
  Verdict usc;
  Verdict open;
  Verdict dense;
  std::vector<std::string> caveats;

  std::size_t singular_count() const {
    return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const PointRecord& r) { return r.label == Label::singular; }));
  }
};

// Dimension of the Zariski tangent space, n - rank J(x).
inline std::size_t structural_dim(const SpacePresentation& space, const Point& point) {
  return space.ambient_dim - rank(jacobian(space, point));
}

// Neighbors with a larger dimension are ignored: the kernel dimension is upper
// semicontinuous, so they drop out of a small enough neighborhood. Only
// neighbors of equal or lower dimension count as evidence.
inline Label classify(const SpacePresentation& space, const Point& point, const std::vector<Point>& neighbors) {
  const std::size_t nx = structural_dim(space, point);
  bool evidence = false;
  for (const auto& y : neighbors) {
    const std::size_t ny = structural_dim(space, y);
    if (ny < nx) return Label::singular;
    if (ny == nx) evidence = true;
  }
  return evidence ? Label::regular : Label::unknown;
}

inline std::string describe(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + to_string(p[i]);
  return s + ")";
}

// Largest nearest-neighbor distance in the sup norm; zero for fewer than two
// points.
inline Rational max_nearest_neighbor_gap(const std::vector<Point>& points) {
  Rational worst = 0;
  if (points.size() < 2) return worst;
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::optional<Rational> nearest;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      Rational d = inf_distance(points[i], points[j]);
      if (!nearest || d < *nearest) nearest = d;
    }
    if (*nearest > worst) worst = *nearest;
  }
  return worst;
}

inline std::vector<std::size_t> neighbor_indices(const std::vector<PointRecord>& records, std::size_t i, const Rational& radius) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < records.size(); ++j)
    if (j != i && inf_distance(records[i].point, records[j].point) <= radius) out.push_back(j);
  return out;
}

// Fails at x when x has sampled neighbors and every one of them has a
// strictly larger dimension: x is then a low value surrounded by higher ones,
// the sampled form of a semicontinuity violation.
inline Verdict verify_usc(const std::vector<PointRecord>& records, const Rational& radius) {
  if (records.empty()) throw Error("verify_usc: empty record list");
  Verdict v{"usc", true, "radius", radius, {}};
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto nb = neighbor_indices(records, i, radius);
    if (nb.empty()) continue;
    bool all_higher = std::all_of(nb.begin(), nb.end(), [&](std::size_t j) { return records[j].structural_dim > records[i].structural_dim; });
    if (all_higher) {
      v.pass = false;
      v.violations.push_back(describe(records[i].point) + " has dimension " + std::to_string(records[i].structural_dim) +
                             " but every neighbor within the radius is higher");
    }
  }
  return v;
}

// Fails at a regular record whose sampled neighbors exist but are all
// non-regular.
inline Verdict verify_open(const std::vector<PointRecord>& records, const Rational& radius) {
  if (records.empty()) throw Error("verify_open: empty record list");
  Verdict v{"open", true, "radius", radius, {}};
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].label != Label::regular) continue;
    auto nb = neighbor_indices(records, i, radius);
    if (nb.empty()) continue;
    bool any_regular = std::any_of(nb.begin(), nb.end(), [&](std::size_t j) { return records[j].label == Label::regular; });
    if (!any_regular) {
      v.pass = false;
      v.violations.push_back("regular point " + describe(records[i].point) + " has no regular neighbor within the radius");
    }
  }
  return v;
}

// Every record needs a regular record (possibly itself) within epsilon.
inline Verdict verify_dense(const std::vector<PointRecord>& records, const Rational& epsilon) {
  if (records.empty()) throw Error("verify_dense: empty record list");
  Verdict v{"dense", true, "epsilon", epsilon, {}};
  for (const auto& r : records) {
    bool covered = std::any_of(records.begin(), records.end(), [&](const PointRecord& s) {
      return s.label == Label::regular && inf_distance(r.point, s.point) <= epsilon;
    });
    if (!covered) {
      v.pass = false;
      v.violations.push_back(describe(r.point) + " has no regular point within epsilon");
    }
  }
  return v;
}

inline std::vector<std::vector<std::size_t>> build_strata(const std::vector<PointRecord>& records, std::size_t ambient_dim) {
  std::vector<std::vector<std::size_t>> strata(ambient_dim + 1);
  for (std::size_t i = 0; i <= ambient_dim; ++i)
    for (std::size_t k = 0; k < records.size(); ++k)
      if (records[k].structural_dim <= i) strata[i].push_back(k);
  return strata;
}

// A generator with a repeated factor makes the presented ideal smaller than
// the vanishing ideal, which inflates the computed dimension. Two cheap
// signals: some x_i^2 divides the generator, or its gradient vanishes at every
// sampled point.
inline std::vector<std::string> repeated_factor_caveats(const SpacePresentation& space, const std::vector<Point>& samples) {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < space.equations.size(); ++j) {
    const Polynomial& g = space.equations[j];
    if (g.is_zero()) continue;
    bool square_divides = false;
    for (std::size_t i = 0; i < space.ambient_dim && !square_divides; ++i) {
      square_divides = std::all_of(g.terms().begin(), g.terms().end(), [&](const auto& t) { return t.first[i] >= 2; });
    }
    bool gradient_dead = !samples.empty() && std::all_of(samples.begin(), samples.end(), [&](const Point& x) {
      for (std::size_t i = 0; i < space.ambient_dim; ++i)
        if (g.partial(i).eval(x) != 0) return false;
      return true;
    });
    if (square_divides || gradient_dead)
      out.push_back("equations[" + std::to_string(j) + "] may have a repeated factor; computed dimensions can exceed the structural dimension");
  }
  return out;
}

inline std::vector<PointRecord> label_records(const std::vector<PointRecord>& unlabeled, const Rational& radius) {
  std::vector<PointRecord> records = unlabeled;
  for (std::size_t i = 0; i < records.size(); ++i) {
    PointRecord& r = records[i];
    if (r.structural_dim == 0) {
      // Zero tangent space: x is isolated in S, hence regular.
      r.label = Label::regular;
      continue;
    }
    bool evidence = false;
    r.label = Label::unknown;
    for (std::size_t j : neighbor_indices(unlabeled, i, radius)) {
      if (unlabeled[j].structural_dim < r.structural_dim) {
        r.label = Label::singular;
        break;
      }
      if (unlabeled[j].structural_dim == r.structural_dim) evidence = true;
    }
    if (r.label != Label::singular && evidence) r.label = Label::regular;
  }
  return records;
}

inline StratificationReport stratify(const SpacePresentation& space, std::optional<Rational> radius = std::nullopt,
                                     std::optional<Rational> epsilon = std::nullopt) {
  const std::vector<Point> samples = sample(space);
  std::vector<PointRecord> records;
  records.reserve(samples.size());
  for (const auto& x : samples) records.push_back(PointRecord{x, structural_dim(space, x), Label::unknown});

  StratificationReport report;
  report.space_name = space.name;
  report.ambient_dim = space.ambient_dim;
  const Rational gap = max_nearest_neighbor_gap(samples);
  report.radius = radius.value_or(gap);
  report.epsilon = epsilon.value_or(gap);
  report.records = label_records(records, report.radius);
  report.strata = build_strata(report.records, space.ambient_dim);
  report.usc = verify_usc(report.records, report.radius);
  report.open = verify_open(report.records, report.radius);
  report.dense = verify_dense(report.records, report.epsilon);
  report.caveats = repeated_factor_caveats(space, samples);
  return report;
}

}  // namespace subcart
