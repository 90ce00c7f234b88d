#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "subcart/error.hpp"
#include "subcart/matrix.hpp"
#include "subcart/poly.hpp"
#include "subcart/space.hpp"

namespace subcart {

// Derivation at a member point, identified with its values v_i = v(q_i) on
// the coordinate functions.
struct TangentVector {
  const SpacePresentation* space;
  Point base;
  Vector components;
};

// Basis of the Zariski tangent space at base.
struct TangentBasis {
  const SpacePresentation* space;
  Point base;
  std::vector<Vector> basis;

  std::size_t dimension() const { return basis.size(); }
};

struct BundlePoint {
  Point base;
  Vector fiber;
};

// Jacobian of the equations at a point, without the membership check.
inline Matrix jacobian_unchecked(const SpacePresentation& space, const Point& point) {
  const std::size_t n = space.ambient_dim;
  Matrix j(space.equations.size(), n);
  for (std::size_t r = 0; r < space.equations.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) j(r, c) = space.equations[r].partial(c).eval(point);
  return j;
}

// Row r, column i holds d(g_r)/d(x_i) at point. Only generators enter: at a
// member point d(sum a_i g_i) = sum a_i(x) d g_i, so the kernel is the same
// for every element of the presented ideal.
inline Matrix jacobian(const SpacePresentation& space, const Point& point) {
  require_member(space, point);
  return jacobian_unchecked(space, point);
}

inline TangentBasis tangent_space(const SpacePresentation& space, const Point& point) {
  return TangentBasis{&space, point, kernel_basis(jacobian(space, point))};
}

inline bool is_tangent(const SpacePresentation& space, const Point& point, const Vector& v) {
  if (v.size() != space.ambient_dim) throw DimensionMismatch("tangent vector has " + std::to_string(v.size()) + " components, space has dimension " + std::to_string(space.ambient_dim));
  return is_zero(jacobian(space, point).apply(v));
}

inline TangentVector make_tangent_vector(const SpacePresentation& space, const Point& base, Vector components) {
  if (!is_tangent(space, base, components)) throw Error("vector is not tangent to " + space.name + " at the given point");
  return TangentVector{&space, base, std::move(components)};
}

// df(v) = sum_i v_i * dF/dx_i(x) for the representative F of f.
inline Rational apply_derivation(const TangentVector& v, const RingElement& f) {
  if (v.space != f.space) throw Error("derivation and function live on different spaces");
  const Polynomial& rep = f.representative;
  if (rep.ambient_dim() != v.components.size()) throw DimensionMismatch("representative dimension differs from the tangent vector");
  Rational sum = 0;
  for (std::size_t i = 0; i < v.components.size(); ++i) {
    if (v.components[i] == 0) continue;
    sum += v.components[i] * rep.partial(i).eval(v.base);
  }
  return sum;
}

inline bool bundle_member(const SpacePresentation& space, const Point& x, const Vector& v) {
  if (x.size() != space.ambient_dim || v.size() != space.ambient_dim) throw DimensionMismatch("bundle point components must have the ambient dimension");
  if (!is_member(space, x)) return false;
  return is_zero(jacobian_unchecked(space, x).apply(v));
}

// H(q o tau, dq) at a bundle point: the first n variables of H read the base,
// the last n read the fiber.
inline Rational eval_bundle_function(const SpacePresentation& space, const Polynomial& h, const BundlePoint& p) {
  const std::size_t n = space.ambient_dim;
  if (h.ambient_dim() != 2 * n) throw DimensionMismatch("bundle function must have " + std::to_string(2 * n) + " variables");
  if (!bundle_member(space, p.base, p.fiber)) throw NotMember("point is not in the tangent bundle of " + space.name);
  Point joined = p.base;
  joined.insert(joined.end(), p.fiber.begin(), p.fiber.end());
  return h.eval(joined);
}

}  // namespace subcart
