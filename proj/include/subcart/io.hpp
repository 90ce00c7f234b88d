#pragma once

#include <json.hpp>

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "subcart/error.hpp"
#include "subcart/frames.hpp"
#include "subcart/poly.hpp"
#include "subcart/rational.hpp"
#include "subcart/space.hpp"
#include "subcart/stratify.hpp"

namespace subcart {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string index_path(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

inline const Json& require_field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "(root)" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

inline std::string join_path(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

inline const Json& require_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  return j;
}

inline std::string require_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

inline long long require_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<long long>();
}

inline Rational rational_field(const Json& j, const std::string& path) {
  try {
    return parse_rational(require_string(j, path));
  } catch (const ParseError& e) {
    throw SchemaError(path, e.what());
  }
}

inline Polynomial polynomial_field(const Json& j, const std::string& path, std::size_t dim) {
  try {
    return parse_polynomial(require_string(j, path), dim);
  } catch (const ParseError& e) {
    throw SchemaError(path, e.what());
  }
}

inline Point point_field(const Json& j, const std::string& path, std::size_t dim) {
  require_array(j, path);
  if (j.size() != dim) throw SchemaError(path, "expected " + std::to_string(dim) + " coordinates, found " + std::to_string(j.size()));
  Point p;
  for (std::size_t i = 0; i < j.size(); ++i) p.push_back(rational_field(j[i], index_path(path, i)));
  return p;
}

inline Json rational_array(const Vector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

}  // namespace detail

// Parses and fully validates a space presentation. `path` prefixes field
// names in error messages when the space is nested in a larger document.
inline SpacePresentation parse_space(const Json& j, const std::string& path = "") {
  using namespace detail;
  const Json& name = require_field(j, "name", path);
  const long long dim = require_int(require_field(j, "ambient_dim", path), join_path(path, "ambient_dim"));
  if (dim <= 0) throw SchemaError(join_path(path, "ambient_dim"), "must be positive");
  const std::size_t n = static_cast<std::size_t>(dim);

  SpacePresentation space{require_string(name, join_path(path, "name")), n, {}, {}, {}, {}};

  if (j.contains("equations")) {
    const std::string f = join_path(path, "equations");
    const Json& eqs = require_array(j["equations"], f);
    for (std::size_t i = 0; i < eqs.size(); ++i) space.equations.push_back(polynomial_field(eqs[i], index_path(f, i), n));
  }
  if (j.contains("inequalities")) {
    const std::string f = join_path(path, "inequalities");
    const Json& ineqs = require_array(j["inequalities"], f);
    for (std::size_t i = 0; i < ineqs.size(); ++i) {
      const std::string p = index_path(f, i);
      Polynomial h = polynomial_field(require_field(ineqs[i], "poly", p), p + ".poly", n);
      const Json& strict = require_field(ineqs[i], "strict", p);
      if (!strict.is_boolean()) throw SchemaError(p + ".strict", "expected a boolean");
      space.inequalities.push_back(Inequality{std::move(h), strict.get<bool>()});
    }
  }
  if (j.contains("samplers")) {
    const std::string f = join_path(path, "samplers");
    const Json& samplers = require_array(j["samplers"], f);
    for (std::size_t i = 0; i < samplers.size(); ++i) {
      const std::string p = index_path(f, i);
      const Json& s = samplers[i];
      const long long m = require_int(require_field(s, "param_dim", p), p + ".param_dim");
      if (m <= 0) throw SchemaError(p + ".param_dim", "must be positive");
      const std::size_t md = static_cast<std::size_t>(m);
      std::vector<Polynomial> nums;
      const Json& jn = require_array(require_field(s, "numerators", p), p + ".numerators");
      if (jn.size() != n) throw SchemaError(p + ".numerators", "expected " + std::to_string(n) + " numerators");
      for (std::size_t k = 0; k < jn.size(); ++k) nums.push_back(polynomial_field(jn[k], index_path(p + ".numerators", k), md));
      Polynomial den = polynomial_field(require_field(s, "denominator", p), p + ".denominator", md);
      const Json& jb = require_array(require_field(s, "box", p), p + ".box");
      if (jb.size() != md) throw SchemaError(p + ".box", "expected " + std::to_string(md) + " intervals");
      std::vector<std::pair<Rational, Rational>> box;
      for (std::size_t k = 0; k < jb.size(); ++k) {
        const std::string bp = index_path(p + ".box", k);
        require_array(jb[k], bp);
        if (jb[k].size() != 2) throw SchemaError(bp, "expected [low, high]");
        Rational lo = rational_field(jb[k][0], index_path(bp, 0));
        Rational hi = rational_field(jb[k][1], index_path(bp, 1));
        if (hi < lo) throw SchemaError(bp, "low exceeds high");
        box.emplace_back(lo, hi);
      }
      const long long res = require_int(require_field(s, "resolution", p), p + ".resolution");
      if (res <= 0 || res > 100000) throw SchemaError(p + ".resolution", "must be a positive integer");
      space.samplers.push_back(Sampler{md, std::move(nums), std::move(den), std::move(box), static_cast<unsigned>(res)});
    }
  }
  if (j.contains("sample_points")) {
    const std::string f = join_path(path, "sample_points");
    const Json& pts = require_array(j["sample_points"], f);
    for (std::size_t i = 0; i < pts.size(); ++i) space.sample_points.push_back(point_field(pts[i], index_path(f, i), n));
  }

  if (path.empty()) {
    validate_presentation(space);
  } else {
    try {
      validate_presentation(space);
    } catch (const SchemaError& e) {
      throw SchemaError(path + "." + e.field, std::string(e.what()).substr(e.field.size() + 2));
    }
  }
  return space;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError("(root)", std::string("malformed JSON: ") + e.what());
  }
}

inline SpacePresentation load_space(const std::string& path) { return parse_space(read_json_file(path)); }

inline Json space_to_json(const SpacePresentation& space) {
  Json j;
  j["name"] = space.name;
  j["ambient_dim"] = space.ambient_dim;
  j["equations"] = Json::array();
  for (const auto& g : space.equations) j["equations"].push_back(g.to_string());
  j["inequalities"] = Json::array();
  for (const auto& [h, strict] : space.inequalities) j["inequalities"].push_back(Json{{"poly", h.to_string()}, {"strict", strict}});
  j["samplers"] = Json::array();
  for (const auto& s : space.samplers) {
    Json js;
    js["param_dim"] = s.param_dim;
    js["numerators"] = Json::array();
    for (const auto& p : s.numerators) js["numerators"].push_back(p.to_string());
    js["denominator"] = s.denominator.to_string();
    js["box"] = Json::array();
    for (const auto& [lo, hi] : s.param_box) js["box"].push_back(Json::array({to_string(lo), to_string(hi)}));
    js["resolution"] = s.resolution;
    j["samplers"].push_back(js);
  }
  j["sample_points"] = Json::array();
  for (const auto& p : space.sample_points) j["sample_points"].push_back(detail::rational_array(p));
  return j;
}

inline Json point_json(const Point& p) { return detail::rational_array(p); }

inline Json record_json(const PointRecord& r) {
  return Json{{"point", point_json(r.point)}, {"dim", r.structural_dim}, {"label", to_string(r.label)}};
}

inline Json verdict_json(const Verdict& v) {
  Json j;
  j["pass"] = v.pass;
  j[v.parameter_name] = to_string(v.parameter);
  j["violations"] = v.violations;
  return j;
}

inline Json bundle_point_json(const Point& base, const Vector& fiber) {
  return Json{{"base", point_json(base)}, {"fiber", point_json(fiber)}};
}

inline Json report_json(const StratificationReport& r) {
  Json j;
  j["space"] = r.space_name;
  j["ambient_dim"] = r.ambient_dim;
  j["records"] = Json::array();
  for (const auto& rec : r.records) j["records"].push_back(record_json(rec));
  Json strata = Json::object();
  for (std::size_t i = 0; i < r.strata.size(); ++i) strata[std::to_string(i)] = r.strata[i];
  j["strata"] = strata;

  std::map<std::size_t, std::size_t> by_dim;
  std::size_t regular = 0, singular = 0, unknown = 0;
  for (const auto& rec : r.records) {
    ++by_dim[rec.structural_dim];
    if (rec.label == Label::regular) ++regular;
    if (rec.label == Label::singular) ++singular;
    if (rec.label == Label::unknown) ++unknown;
  }
  Json summary;
  summary["count"] = r.records.size();
  summary["regular"] = regular;
  summary["singular"] = singular;
  summary["unknown"] = unknown;
  Json dims = Json::object();
  for (const auto& [d, c] : by_dim) dims[std::to_string(d)] = c;
  summary["dim_counts"] = dims;
  if (!by_dim.empty()) {
    summary["min_dim"] = by_dim.begin()->first;
    summary["max_dim"] = by_dim.rbegin()->first;
  }
  j["summary"] = summary;
  j["verdicts"] = Json{{"usc", verdict_json(r.usc)}, {"open", verdict_json(r.open)}, {"dense", verdict_json(r.dense)}};
  j["params"] = Json{{"radius", to_string(r.radius)}, {"epsilon", to_string(r.epsilon)}};
  j["caveats"] = r.caveats;
  return j;
}

// Columns are reported 1-based to match the x1..xn variable names.
inline Json frame_json(const FrameSection& f, const std::vector<Point>& points) {
  Json j;
  j["anchor"] = point_json(f.anchor());
  j["pivots"] = Json::array();
  for (auto c : f.pivots()) j["pivots"].push_back(c + 1);
  j["free"] = Json::array();
  for (auto c : f.free()) j["free"].push_back(c + 1);
  j["evaluations"] = Json::array();
  for (const auto& y : points) {
    Json basis = Json::array();
    for (const auto& v : f.evaluate(y)) basis.push_back(detail::rational_array(v));
    j["evaluations"].push_back(Json{{"point", point_json(y)}, {"basis", basis}});
  }
  return j;
}

// Hand-built record list, used for negative controls of the verifiers.
struct RecordSet {
  std::size_t ambient_dim;
  std::vector<PointRecord> records;
  Rational radius;
  Rational epsilon;
};

inline RecordSet parse_record_set(const Json& j) {
  using namespace detail;
  const long long dim = require_int(require_field(j, "ambient_dim", ""), "ambient_dim");
  if (dim <= 0) throw SchemaError("ambient_dim", "must be positive");
  RecordSet out{static_cast<std::size_t>(dim), {}, 0, 0};
  const Json& recs = require_array(require_field(j, "records", ""), "records");
  if (recs.empty()) throw SchemaError("records", "must not be empty");
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const std::string p = index_path("records", i);
    Point pt = point_field(require_field(recs[i], "point", p), p + ".point", out.ambient_dim);
    const long long d = require_int(require_field(recs[i], "dim", p), p + ".dim");
    if (d < 0 || d > dim) throw SchemaError(p + ".dim", "must lie in [0, ambient_dim]");
    Label label = Label::unknown;
    try {
      label = parse_label(require_string(require_field(recs[i], "label", p), p + ".label"));
    } catch (const SchemaError&) {
      throw;
    } catch (const Error& e) {
      throw SchemaError(p + ".label", e.what());
    }
    out.records.push_back(PointRecord{std::move(pt), static_cast<std::size_t>(d), label});
  }
  out.radius = rational_field(require_field(j, "radius", ""), "radius");
  out.epsilon = rational_field(require_field(j, "epsilon", ""), "epsilon");
  return out;
}

}  // namespace subcart
