#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "subcart/error.hpp"
#include "subcart/matrix.hpp"
#include "subcart/space.hpp"
#include "subcart/stratify.hpp"
#include "subcart/tangent.hpp"

namespace subcart {

// Local frame X_1..X_m of the tangent bundle around an anchor point. The
// pivot columns are frozen at construction; at any point y the frame is the
// kernel basis of J(y) that equals the identity on the free columns, so
// dq_f(X_j) = delta_fj for the free coordinates q_f.
class FrameSection {
 public:
  FrameSection(const SpacePresentation& space, Point anchor, std::vector<std::size_t> pivots)
      : space_(&space), anchor_(std::move(anchor)), pivots_(std::move(pivots)) {
    std::sort(pivots_.begin(), pivots_.end());
    if (!pivots_.empty() && pivots_.back() >= space.ambient_dim) throw DimensionMismatch("pivot column out of range");
    for (std::size_t c = 0; c < space.ambient_dim; ++c)
      if (!std::binary_search(pivots_.begin(), pivots_.end(), c)) free_.push_back(c);
  }

  const SpacePresentation& space() const { return *space_; }
  const Point& anchor() const { return anchor_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const std::vector<std::size_t>& free() const { return free_; }

  // Solves the pivot subsystem of J(y) for each free-column unit seed. Throws
  // FrameEvaluationError when rank J(y) differs from the number of pivots or
  // the pivot columns of J(y) are dependent.
  std::vector<Vector> evaluate(const Point& y) const {
    require_member(*space_, y);
    const Matrix j = jacobian_unchecked(*space_, y);
    const std::size_t n = space_->ambient_dim;
    const std::size_t r = pivots_.size();

    Matrix reordered(j.rows(), n);
    for (std::size_t row = 0; row < j.rows(); ++row) {
      for (std::size_t k = 0; k < r; ++k) reordered(row, k) = j(row, pivots_[k]);
      for (std::size_t k = 0; k < free_.size(); ++k) reordered(row, r + k) = j(row, free_[k]);
    }
    const RowEchelon e = rref(reordered);
    if (e.rank() != r) {
      throw FrameEvaluationError("rank changed at " + describe(y) + ": expected " + std::to_string(r) + ", found " + std::to_string(e.rank()));
    }
    for (std::size_t k = 0; k < r; ++k) {
      if (e.pivots[k] != k) throw FrameEvaluationError("pivot columns are dependent at " + describe(y));
    }

    std::vector<Vector> basis;
    basis.reserve(free_.size());
    for (std::size_t k = 0; k < free_.size(); ++k) {
      Vector v(n, Rational(0));
      v[free_[k]] = 1;
      for (std::size_t row = 0; row < r; ++row) v[pivots_[row]] = -e.reduced(row, r + k);
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  const SpacePresentation* space_;
  Point anchor_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> free_;
};

// Pivots from the leftmost-pivot reduction of J(x).
inline FrameSection frame_at(const SpacePresentation& space, const Point& x) {
  const RowEchelon e = rref(jacobian(space, x));
  FrameSection f(space, x, e.pivots);
  f.evaluate(x);
  return f;
}

// Frame with caller-chosen pivot columns; not checked at the anchor.
inline FrameSection frame_with_pivots(const SpacePresentation& space, const Point& anchor, std::vector<std::size_t> pivots) {
  require_member(space, anchor);
  return FrameSection(space, anchor, std::move(pivots));
}

// True when the free-column block of the basis is the identity.
inline bool has_delta_pattern(const FrameSection& f, const std::vector<Vector>& basis) {
  if (basis.size() != f.free().size()) return false;
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < f.free().size(); ++i)
      if (basis[j][f.free()[i]] != Rational(i == j ? 1 : 0)) return false;
  return true;
}

namespace detail {

inline Rational symmetric_difference(const FrameSection& f, const Sampler& s, const Point& params, std::size_t direction,
                                     const Rational& h, std::size_t vec, std::size_t comp) {
  Point plus = params, minus = params;
  plus[direction] += h;
  minus[direction] -= h;
  const Rational hi = f.evaluate(sampler_image(s, plus))[vec][comp];
  const Rational lo = f.evaluate(sampler_image(s, minus))[vec][comp];
  return (hi - lo) / (2 * h);
}

}  // namespace detail

// Symmetric differences D(h) = (X(u+h) - X(u-h)) / 2h of every frame component
// along every sampler parameter. For a smooth section D(h) = X' + c h^2 + ...,
// so (D(h) - D(h/2)) / (D(h/2) - D(h/4)) tends to 4. Passes when every ratio is
// within tol of 4, or both differences vanish exactly.
inline Verdict frame_smoothness_check(const FrameSection& f, const Sampler& s, const Point& params, const Rational& h,
                                      const Rational& tol = Rational(1, 2)) {
  if (params.size() != s.param_dim) throw DimensionMismatch("probe parameters do not match the sampler");
  if (h <= 0) throw Error("step must be positive");
  Verdict v{"smoothness", true, "h", h, {}};
  const std::size_t n = f.space().ambient_dim;
  const std::size_t m = f.free().size();
  for (std::size_t d = 0; d < s.param_dim; ++d) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t c = 0; c < n; ++c) {
        const Rational d1 = detail::symmetric_difference(f, s, params, d, h, j, c);
        const Rational d2 = detail::symmetric_difference(f, s, params, d, h / 2, j, c);
        const Rational d4 = detail::symmetric_difference(f, s, params, d, h / 4, j, c);
        const Rational num = d1 - d2;
        const Rational den = d2 - d4;
        if (num == 0 && den == 0) continue;
        std::string where = "parameter " + std::to_string(d + 1) + ", X" + std::to_string(j + 1) + " component " + std::to_string(c + 1);
        if (den == 0) {
          v.pass = false;
          v.violations.push_back(where + ": differences do not converge");
          continue;
        }
        const Rational ratio = num / den;
        if (abs(ratio - 4) > tol) {
          v.pass = false;
          v.violations.push_back(where + ": ratio " + to_string(ratio));
        }
      }
    }
  }
  return v;
}

// Smooth cutoff equal to 1 on the inner sup-norm ball and 0 outside the outer one.
struct BumpFunction {
  Point center;
  Rational r_inner;
  Rational r_outer;
};

inline double smooth_step(double t) {
  auto phi = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = phi(t);
  return a / (a + phi(1.0 - t));
}

// The only non-exact quantity in the library: a double with ~1e-15 relative error.
inline double bump(const BumpFunction& b, const Point& y) {
  if (!(b.r_inner < b.r_outer) || b.r_inner < 0) throw Error("bump radii must satisfy 0 <= r_inner < r_outer");
  const Rational d = inf_distance(y, b.center);
  if (d <= b.r_inner) return 1.0;
  if (d >= b.r_outer) return 0.0;
  const Rational t = (d - b.r_inner) / (b.r_outer - b.r_inner);
  return smooth_step(1.0 - t.get_d());
}

struct GluedSection {
  std::vector<Vector> vectors;
  double weight;
  bool approximate;  // weight was rounded (shell region)
};

inline GluedSection glued_section(const FrameSection& f, const BumpFunction& b, const Point& y) {
  const double w = bump(b, y);
  const std::size_t n = f.space().ambient_dim;
  if (inf_distance(y, b.center) >= b.r_outer) {
    require_member(f.space(), y);
    return GluedSection{std::vector<Vector>(f.free().size(), Vector(n, Rational(0))), 0.0, false};
  }
  std::vector<Vector> raw;
  try {
    raw = f.evaluate(y);
  } catch (const FrameEvaluationError& e) {
    throw FrameEvaluationError(std::string("glued section: evaluation failed inside the outer radius (radii too large): ") + e.what());
  }
  if (w == 1.0 && inf_distance(y, b.center) <= b.r_inner) return GluedSection{std::move(raw), 1.0, false};
  const Rational weight(w);
  for (auto& v : raw)
    for (auto& q : v) q *= weight;
  return GluedSection{std::move(raw), w, true};
}

// Checks that the frame evaluates at every sample strictly inside the outer radius.
inline void check_glue_radii(const FrameSection& f, const BumpFunction& b, const std::vector<Point>& samples) {
  for (const auto& y : samples) {
    if (inf_distance(y, b.center) >= b.r_outer) continue;
    try {
      f.evaluate(y);
    } catch (const FrameEvaluationError& e) {
      throw FrameEvaluationError("outer radius " + to_string(b.r_outer) + " too large: " + e.what());
    }
  }
}

// Regular samples of dimension `dim` near `x` that lie in the regular part.
// The neighborhood radius is the local sampling scale: the report radius
// capped by the distance from x to its nearest other sample. Samples at or
// beyond the nearest singular sample are excluded.
inline std::vector<Point> frame_neighborhood(const StratificationReport& report, const Point& x, std::size_t dim) {
  std::optional<Rational> to_singular;
  std::optional<Rational> nearest;
  for (const auto& r : report.records) {
    if (r.point == x) continue;
    const Rational d = inf_distance(x, r.point);
    if (!nearest || d < *nearest) nearest = d;
    if (r.label == Label::singular && (!to_singular || d < *to_singular)) to_singular = d;
  }
  const Rational radius = nearest && *nearest < report.radius ? *nearest : report.radius;
  std::vector<Point> out;
  for (const auto& r : report.records) {
    if (r.label != Label::regular || r.structural_dim != dim || r.point == x) continue;
    const Rational d = inf_distance(x, r.point);
    if (d > radius) continue;
    if (to_singular && !(d < *to_singular)) continue;
    out.push_back(r.point);
  }
  return out;
}

// Checks annihilation, the delta pattern and the basis size at every point.
inline std::optional<std::string> frame_failure(const FrameSection& f, const std::vector<Point>& points, std::size_t expected_dim) {
  for (const auto& y : points) {
    std::vector<Vector> basis;
    try {
      basis = f.evaluate(y);
    } catch (const FrameEvaluationError& e) {
      return std::string(e.what());
    }
    if (basis.size() != expected_dim) return "frame at " + describe(y) + " has " + std::to_string(basis.size()) + " vectors";
    const Matrix j = jacobian_unchecked(f.space(), y);
    for (const auto& v : basis)
      if (!is_zero(j.apply(v))) return "frame vector not tangent at " + describe(y);
    if (!has_delta_pattern(f, basis)) return "free-column block is not the identity at " + describe(y);
    if (rank(from_rows(basis, f.space().ambient_dim)) != expected_dim) return "frame vectors dependent at " + describe(y);
  }
  return std::nullopt;
}

// Local frame that works on the whole sampled neighborhood of the anchor.
// The leftmost-pivot frame is tried first; when a neighbor leaves its chart,
// the other pivot sets independent at the anchor are tried in lexicographic
// order.
inline std::optional<FrameSection> neighborhood_frame(const SpacePresentation& space, const Point& anchor,
                                                      const std::vector<Point>& neighbors, std::size_t expected_dim) {
  std::vector<Point> points{anchor};
  points.insert(points.end(), neighbors.begin(), neighbors.end());
  FrameSection leftmost = frame_at(space, anchor);
  if (!frame_failure(leftmost, points, expected_dim)) return leftmost;

  const std::size_t n = space.ambient_dim;
  const std::size_t r = leftmost.pivots().size();
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(r), true);
  do {
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < n; ++c)
      if (pick[c]) pivots.push_back(c);
    if (pivots == leftmost.pivots()) continue;
    FrameSection candidate(space, anchor, pivots);
    if (!frame_failure(candidate, points, expected_dim)) return candidate;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return std::nullopt;
}

inline Verdict verify_local_triviality(const SpacePresentation& space, const StratificationReport& report) {
  Verdict v{"local_triviality", true, "radius", report.radius, {}};
  bool any_regular = false;
  for (const PointRecord& x : report.records) {
    if (x.label != Label::regular) continue;
    any_regular = true;
    const std::vector<Point> neighbors = frame_neighborhood(report, x.point, x.structural_dim);
    if (!neighborhood_frame(space, x.point, neighbors, x.structural_dim)) {
      v.pass = false;
      v.violations.push_back("no local frame at " + describe(x.point) + " spans its sampled neighborhood");
    }
  }
  if (!any_regular) {
    v.pass = false;
    v.violations.push_back("report contains no regular points");
  }
  return v;
}

}  // namespace subcart
