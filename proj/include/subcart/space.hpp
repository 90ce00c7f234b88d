#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "subcart/error.hpp"
#include "subcart/poly.hpp"
#include "subcart/rational.hpp"

namespace subcart {

struct Inequality {
  Polynomial poly;
  bool strict = false;
};

// Rational parametrization x = numerators(u) / denominator(u) evaluated on a
// regular grid over param_box. Parameters are the variables x1..xm of the
// numerator and denominator polynomials.
struct Sampler {
  std::size_t param_dim;
  std::vector<Polynomial> numerators;
  Polynomial denominator;
  std::vector<std::pair<Rational, Rational>> param_box;
  unsigned resolution;
};

// A subset S of R^n cut out by polynomial equations (the presented generators
// of the vanishing ideal) and polynomial inequalities.
struct SpacePresentation {
  std::string name;
  std::size_t ambient_dim;
  std::vector<Polynomial> equations;
  std::vector<Inequality> inequalities;
  std::vector<Sampler> samplers;
  std::vector<Point> sample_points;
};

// An element of the restricted function ring, given by a representative.
struct RingElement {
  const SpacePresentation* space;
  Polynomial representative;
};

// Coefficients a_i certifying F - G = sum_i a_i g_i.
struct IdealWitness {
  std::vector<Polynomial> coefficients;
};

inline bool is_member(const SpacePresentation& space, const Point& point) {
  if (point.size() != space.ambient_dim)
    throw DimensionMismatch("point has dimension " + std::to_string(point.size()) + ", space has " + std::to_string(space.ambient_dim));
  for (const auto& g : space.equations)
    if (g.eval(point) != 0) return false;
  for (const auto& [h, strict] : space.inequalities) {
    Rational v = h.eval(point);
    if (strict ? v <= 0 : v < 0) return false;
  }
  return true;
}

inline void require_member(const SpacePresentation& space, const Point& point) {
  if (!is_member(space, point)) throw NotMember("point (" + [&] {
    std::string s;
    for (std::size_t i = 0; i < point.size(); ++i) s += (i ? "," : "") + to_string(point[i]);
    return s;
  }() + ") is not a member of " + space.name);
}

// Grid parameter vectors in row-major order (first parameter varies slowest).
inline std::vector<Point> grid_parameters(const Sampler& s) {
  if (s.param_box.size() != s.param_dim) throw DimensionMismatch("sampler box has " + std::to_string(s.param_box.size()) + " intervals for " + std::to_string(s.param_dim) + " parameters");
  if (s.resolution == 0) throw DimensionMismatch("sampler resolution must be positive");
  std::vector<std::vector<Rational>> axes;
  for (const auto& [lo, hi] : s.param_box) {
    std::vector<Rational> axis;
    for (unsigned k = 0; k < s.resolution; ++k) {
      if (s.resolution == 1) {
        axis.push_back(lo);
      } else {
        Rational step(k, s.resolution - 1);
        step.canonicalize();
        axis.push_back(Rational(lo + (hi - lo) * step));
      }
    }
    axes.push_back(std::move(axis));
  }
  std::vector<Point> out;
  Point current(s.param_dim);
  auto rec = [&](auto&& self, std::size_t d) -> void {
    if (d == s.param_dim) {
      out.push_back(current);
      return;
    }
    for (const auto& value : axes[d]) {
      current[d] = value;
      self(self, d + 1);
    }
  };
  rec(rec, 0);
  return out;
}

inline Point sampler_image(const Sampler& s, const Point& params) {
  Rational den = s.denominator.eval(params);
  if (den == 0) throw Error("sampler denominator vanishes at a grid parameter");
  Point out;
  out.reserve(s.numerators.size());
  for (const auto& num : s.numerators) out.push_back(num.eval(params) / den);
  return out;
}

// den^d * g(num/den) as a polynomial in the parameters, d = deg g.
inline Polynomial clear_denominators_compose(const Polynomial& g, const Sampler& s) {
  Polynomial out(s.param_dim);
  if (g.is_zero()) return out;
  const unsigned d = static_cast<unsigned>(g.degree());
  std::map<std::pair<std::size_t, unsigned>, Polynomial> num_pow;
  std::map<unsigned, Polynomial> den_pow;
  auto numerator_power = [&](std::size_t i, unsigned k) -> const Polynomial& {
    auto it = num_pow.find({i, k});
    if (it == num_pow.end()) it = num_pow.emplace(std::pair{i, k}, s.numerators[i].pow(k)).first;
    return it->second;
  };
  auto denominator_power = [&](unsigned k) -> const Polynomial& {
    auto it = den_pow.find(k);
    if (it == den_pow.end()) it = den_pow.emplace(k, s.denominator.pow(k)).first;
    return it->second;
  };
  for (const auto& [e, c] : g.terms()) {
    Polynomial t = Polynomial::constant(s.param_dim, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) t = t * numerator_power(i, e[i]);
    t = t * denominator_power(d - total_degree(e));
    out += t;
  }
  return out;
}

inline void check_sampler_shape(const SpacePresentation& space, const Sampler& s) {
  if (s.numerators.size() != space.ambient_dim)
    throw DimensionMismatch("sampler has " + std::to_string(s.numerators.size()) + " numerators for ambient dimension " + std::to_string(space.ambient_dim));
  for (const auto& num : s.numerators)
    if (num.ambient_dim() != s.param_dim) throw DimensionMismatch("sampler numerator is not in " + std::to_string(s.param_dim) + " parameters");
  if (s.denominator.ambient_dim() != s.param_dim) throw DimensionMismatch("sampler denominator is not in " + std::to_string(s.param_dim) + " parameters");
  if (s.param_box.size() != s.param_dim) throw DimensionMismatch("sampler box size differs from parameter dimension");
}

// Index of the first equation whose composition with the sampler does not
// vanish identically, if any.
inline std::optional<std::size_t> failing_equation(const SpacePresentation& space, const Sampler& s) {
  check_sampler_shape(space, s);
  for (std::size_t j = 0; j < space.equations.size(); ++j)
    if (!clear_denominators_compose(space.equations[j], s).is_zero()) return j;
  return std::nullopt;
}

inline bool denominator_nonzero_on_grid(const Sampler& s) {
  for (const auto& u : grid_parameters(s))
    if (s.denominator.eval(u) == 0) return false;
  return true;
}

inline bool validate_sampler(const SpacePresentation& space, const Sampler& s) {
  return !failing_equation(space, s).has_value() && denominator_nonzero_on_grid(s);
}

// Sampler grid images in grid order, then explicit points; exact duplicates
// keep their first position.
inline std::vector<Point> sample(const SpacePresentation& space) {
  if (space.samplers.empty() && space.sample_points.empty())
    throw Error("space " + space.name + " has no sampler or explicit sample points");
  std::vector<Point> out;
  std::set<Point> seen;
  auto push = [&](Point p) {
    if (!is_member(space, p)) throw NotMember("sample point is not a member of " + space.name);
    if (seen.insert(p).second) out.push_back(std::move(p));
  };
  for (std::size_t i = 0; i < space.samplers.size(); ++i) {
    const Sampler& s = space.samplers[i];
    if (!validate_sampler(space, s)) throw Error("samplers[" + std::to_string(i) + "] violates the sampler identity");
    for (const auto& u : grid_parameters(s)) push(sampler_image(s, u));
  }
  for (const auto& p : space.sample_points) push(p);
  return out;
}

// Checks every presentation invariant; failures name the offending field.
inline void validate_presentation(const SpacePresentation& space) {
  const std::size_t n = space.ambient_dim;
  if (n == 0) throw SchemaError("ambient_dim", "must be positive");
  for (std::size_t j = 0; j < space.equations.size(); ++j)
    if (space.equations[j].ambient_dim() != n) throw SchemaError("equations[" + std::to_string(j) + "]", "dimension mismatch");
  for (std::size_t j = 0; j < space.inequalities.size(); ++j)
    if (space.inequalities[j].poly.ambient_dim() != n) throw SchemaError("inequalities[" + std::to_string(j) + "].poly", "dimension mismatch");
  for (std::size_t i = 0; i < space.samplers.size(); ++i) {
    const Sampler& s = space.samplers[i];
    const std::string field = "samplers[" + std::to_string(i) + "]";
    try {
      check_sampler_shape(space, s);
    } catch (const DimensionMismatch& e) {
      throw SchemaError(field, e.what());
    }
    if (auto j = failing_equation(space, s))
      throw SchemaError(field, "parametrization does not satisfy equations[" + std::to_string(*j) + "] (" +
                                   space.equations[*j].to_string() + "); residual " +
                                   clear_denominators_compose(space.equations[*j], s).to_string());
    if (!denominator_nonzero_on_grid(s)) throw SchemaError(field + ".denominator", "vanishes at a grid parameter");
    for (const auto& u : grid_parameters(s))
      if (!is_member(space, sampler_image(s, u))) throw SchemaError(field, "grid image violates an inequality constraint");
  }
  for (std::size_t k = 0; k < space.sample_points.size(); ++k) {
    const std::string field = "sample_points[" + std::to_string(k) + "]";
    if (space.sample_points[k].size() != n) throw SchemaError(field, "dimension mismatch");
    if (!is_member(space, space.sample_points[k])) throw SchemaError(field, "point is not a member of the space");
  }
}

inline bool representatives_agree(const RingElement& f, const RingElement& g, const IdealWitness& w) {
  if (f.space != g.space) throw DimensionMismatch("ring elements belong to different spaces");
  const SpacePresentation& space = *f.space;
  if (f.representative.ambient_dim() != space.ambient_dim || g.representative.ambient_dim() != space.ambient_dim)
    throw DimensionMismatch("representative dimension differs from the space");
  if (w.coefficients.size() != space.equations.size())
    throw DimensionMismatch("witness has " + std::to_string(w.coefficients.size()) + " coefficients for " + std::to_string(space.equations.size()) + " equations");
  Polynomial combo(space.ambient_dim);
  for (std::size_t i = 0; i < w.coefficients.size(); ++i) combo += w.coefficients[i] * space.equations[i];
  return f.representative - g.representative == combo;
}

}  // namespace subcart
