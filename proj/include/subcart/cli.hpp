#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "subcart/error.hpp"
#include "subcart/frames.hpp"
#include "subcart/io.hpp"
#include "subcart/space.hpp"
#include "subcart/stratify.hpp"

namespace subcart::cli {

struct RunConfig {
  std::string command;  // classify | stratify | frame | verify
  std::string input;
  std::optional<std::string> point;
  std::optional<Rational> radius;
  std::optional<Rational> epsilon;
  std::optional<std::string> out;
  long long seed = 0;  // reserved; every pipeline is deterministic
};

struct RunResult {
  int exit_code = 0;
  std::string output;   // JSON report, empty on input errors
  std::string message;  // diagnostics for stderr
};

namespace detail {

inline Point require_point(const RunConfig& cfg, std::size_t dim) {
  if (!cfg.point) throw SchemaError("--point", "required for command " + cfg.command);
  Point p;
  try {
    p = parse_point(*cfg.point);
  } catch (const ParseError& e) {
    throw SchemaError("--point", e.what());
  }
  if (p.size() != dim) throw SchemaError("--point", "expected " + std::to_string(dim) + " coordinates");
  return p;
}

inline Json classify_command(const RunConfig& cfg) {
  const SpacePresentation space = load_space(cfg.input);
  const Point x = require_point(cfg, space.ambient_dim);
  require_member(space, x);
  const std::vector<Point> samples = sample(space);
  const Rational radius = cfg.radius.value_or(max_nearest_neighbor_gap(samples));
  std::vector<Point> neighbors;
  for (const auto& y : samples)
    if (y != x && inf_distance(x, y) <= radius) neighbors.push_back(y);
  Json j;
  j["space"] = space.name;
  j["point"] = point_json(x);
  j["dim"] = structural_dim(space, x);
  j["label"] = to_string(classify(space, x, neighbors));
  j["neighbors"] = neighbors.size();
  j["radius"] = to_string(radius);
  return j;
}

inline bool all_pass(const StratificationReport& r) { return r.usc.pass && r.open.pass && r.dense.pass; }

inline Json frame_command(const RunConfig& cfg, int& exit_code) {
  const Json doc = read_json_file(cfg.input);
  if (doc.contains("space")) {
    // Frame fixture: inline space, anchor, optional forced pivots, probes that must evaluate.
    const SpacePresentation space = parse_space(doc["space"], "space");
    const Point anchor = subcart::detail::point_field(subcart::detail::require_field(doc, "anchor", ""), "anchor", space.ambient_dim);
    require_member(space, anchor);
    std::optional<FrameSection> frame;
    if (doc.contains("pivots")) {
      std::vector<std::size_t> pivots;
      const Json& jp = subcart::detail::require_array(doc["pivots"], "pivots");
      for (std::size_t i = 0; i < jp.size(); ++i) {
        const long long c = subcart::detail::require_int(jp[i], "pivots[" + std::to_string(i) + "]");
        if (c < 1 || c > static_cast<long long>(space.ambient_dim)) throw SchemaError("pivots[" + std::to_string(i) + "]", "column out of range");
        pivots.push_back(static_cast<std::size_t>(c - 1));
      }
      frame.emplace(frame_with_pivots(space, anchor, pivots));
    } else {
      frame.emplace(frame_at(space, anchor));
    }
    std::vector<Point> points{anchor};
    if (doc.contains("probes")) {
      const Json& probes = subcart::detail::require_array(doc["probes"], "probes");
      for (std::size_t i = 0; i < probes.size(); ++i)
        points.push_back(subcart::detail::point_field(probes[i], "probes[" + std::to_string(i) + "]", space.ambient_dim));
    }
    exit_code = 0;
    return frame_json(*frame, points);
  }

  const SpacePresentation space = parse_space(doc);
  const Point anchor = require_point(cfg, space.ambient_dim);
  require_member(space, anchor);
  const FrameSection frame = frame_at(space, anchor);
  const StratificationReport report = stratify(space, cfg.radius, cfg.epsilon);
  std::vector<Point> points{anchor};
  Json boundary = Json::array();
  for (const auto& y : frame_neighborhood(report, anchor, structural_dim(space, anchor))) {
    try {
      frame.evaluate(y);
      points.push_back(y);
    } catch (const FrameEvaluationError& e) {
      boundary.push_back(Json{{"point", point_json(y)}, {"reason", e.what()}});
    }
  }
  Json j = frame_json(frame, points);
  j["boundary"] = boundary;
  j["radius"] = to_string(report.radius);
  exit_code = 0;
  return j;
}

inline Json verify_command(const RunConfig& cfg, int& exit_code) {
  const Json doc = read_json_file(cfg.input);
  if (doc.contains("records")) {
    RecordSet set = parse_record_set(doc);
    const Rational radius = cfg.radius.value_or(set.radius);
    const Rational epsilon = cfg.epsilon.value_or(set.epsilon);
    Verdict usc = verify_usc(set.records, radius);
    Verdict open = verify_open(set.records, radius);
    Verdict dense = verify_dense(set.records, epsilon);
    exit_code = usc.pass && open.pass && dense.pass ? 0 : 1;
    Json j;
    j["records"] = set.records.size();
    j["verdicts"] = Json{{"usc", verdict_json(usc)}, {"open", verdict_json(open)}, {"dense", verdict_json(dense)}};
    j["params"] = Json{{"radius", to_string(radius)}, {"epsilon", to_string(epsilon)}};
    return j;
  }
  const SpacePresentation space = parse_space(doc);
  const StratificationReport report = stratify(space, cfg.radius, cfg.epsilon);
  const Verdict trivial = verify_local_triviality(space, report);
  exit_code = all_pass(report) && trivial.pass ? 0 : 1;
  Json j;
  j["space"] = space.name;
  j["summary"] = report_json(report)["summary"];
  j["verdicts"] = Json{{"usc", verdict_json(report.usc)},
                       {"open", verdict_json(report.open)},
                       {"dense", verdict_json(report.dense)},
                       {"local_triviality", verdict_json(trivial)}};
  j["params"] = Json{{"radius", to_string(report.radius)}, {"epsilon", to_string(report.epsilon)}};
  j["caveats"] = report.caveats;
  return j;
}

}  // namespace detail

// Exit codes: 0 all verdicts pass, 1 some verdict fails, 2 input error.
inline RunResult run(const RunConfig& cfg) {
  RunResult result;
  try {
    Json j;
    if (cfg.command == "classify") {
      j = detail::classify_command(cfg);
      result.exit_code = 0;
    } else if (cfg.command == "stratify") {
      const StratificationReport report = stratify(load_space(cfg.input), cfg.radius, cfg.epsilon);
      j = report_json(report);
      result.exit_code = detail::all_pass(report) ? 0 : 1;
    } else if (cfg.command == "frame") {
      j = detail::frame_command(cfg, result.exit_code);
    } else if (cfg.command == "verify") {
      j = detail::verify_command(cfg, result.exit_code);
    } else {
      throw Error("unknown command '" + cfg.command + "'");
    }
    result.output = j.dump(2) + "\n";
    if (cfg.out) {
      std::ofstream out(*cfg.out, std::ios::binary);
      if (!out) throw Error("cannot write " + *cfg.out);
      out << result.output;
    }
  } catch (const std::exception& e) {
    result.exit_code = 2;
    result.output.clear();
    result.message = std::string("error: ") + e.what();
  }
  return result;
}

}  // namespace subcart::cli
