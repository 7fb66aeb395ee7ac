#pragma once

// Angle contribution of one segment pair, as a triple with its a-posteriori
// error bound.
//
// For segments [p, p'] and [q, q'] the contribution T (one term of the
// Gauss double sum, scaled so that the sum over all pairs is 2*pi*L) is the
// sum of two atan2 terms built from the unit vectors along
//   alpha = q - p,  beta = q - p',  gamma = q' - p',  omega = q' - p.
// Both terms are combined with one triple addition, so no atan2 is taken.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <concepts>

#include "certilink/constants.hpp"
#include "certilink/errors.hpp"
#include "certilink/point3.hpp"
#include "certilink/triple_angle.hpp"

namespace certilink {

template <std::floating_point T>
struct SegmentPairAngle {
  AngleTriple<T> triple;  // normalized
  PointSign sign = PointSign::negative;
  double err_bound = 0;   // multiples of u; at least bound::triple_add
};

/// Raw intermediates of the segment pair construction. Exposed for tests
/// that check the error of each stage against an extended-precision
/// evaluation.
template <std::floating_point T>
struct SegmentPairParts {
  Point3<T> alpha, beta, gamma, omega;  // unit vectors
  T x1, y1, x2, y2;
};

namespace detail {

template <std::floating_point T>
Point3<T> unit(const Point3<T>& v) {
  const T len = norm(v);
  if (len == 0) {
    throw Error(ErrorKind::degenerate_segments, "segment pair has coincident endpoints");
  }
  if (!std::isfinite(len)) {
    throw Error(ErrorKind::exponent_range, "connecting vector length is not finite");
  }
  return v / len;
}

/// 2.829 + 57.516 (1/R + 1/R'), every operation rounded upward.
inline double a_posteriori_bound(double r1, double r2) {
  static const double add_c = round_up(bound::triple_add);
  static const double radius_c = round_up(bound::radius_term);
  const double terms = round_up(round_up(radius_c / r1) + round_up(radius_c / r2));
  return round_up(terms + add_c);
}

}  // namespace detail

template <std::floating_point T>
SegmentPairParts<T> segment_pair_parts(const Point3<T>& p, const Point3<T>& p_next,
                                       const Point3<T>& q, const Point3<T>& q_next) {
  SegmentPairParts<T> parts;
  parts.alpha = detail::unit(q - p);
  parts.beta = detail::unit(q - p_next);
  parts.gamma = detail::unit(q_next - p_next);
  parts.omega = detail::unit(q_next - p);

  const Point3<T> t1 = parts.alpha + parts.gamma;
  const Point3<T> t2 = cross(parts.alpha, parts.gamma);
  const T t3 = T{1} + dot(parts.alpha, parts.gamma);
  parts.x1 = t3 + dot(parts.beta, t1);
  parts.y1 = dot(parts.beta, t2);
  parts.x2 = t3 + dot(parts.omega, t1);
  parts.y2 = dot(parts.omega, t2);
  return parts;
}

/// Angle contribution of the segment pair ([p, p_next], [q, q_next]).
/// Throws degenerate_segments when two endpoints coincide and
/// intersection_detected when an intermediate direction vanishes.
template <std::floating_point T>
SegmentPairAngle<T> build_angle(const Point3<T>& p, const Point3<T>& p_next,
                                const Point3<T>& q, const Point3<T>& q_next) {
  const SegmentPairParts<T> parts = segment_pair_parts(p, p_next, q, q_next);
  const T x1 = parts.x1, y1 = parts.y1, x2 = parts.x2, y2 = parts.y2;
  if ((x1 == 0 && y1 == 0) || (x2 == 0 && y2 == 0)) {
    throw Error(ErrorKind::intersection_detected, "segments intersect");
  }

  // [x1, -y1] (+) [x2, y2]
  const T x = x1 * x2 + y1 * y2;
  const T y = x1 * y2 - y1 * x2;
  if (x == 0 && y == 0) {
    throw Error(ErrorKind::intersection_detected, "segments intersect");
  }
  const PointSign s = point_sign(x, y);

  // In exact arithmetic y1 * y2 <= 0, which lets the turn count be read off
  // sign(y1) alone. Rounding can break that relation for nearly coplanar
  // pairs, so the general crossing rule is the one applied.
  const int turns = cross_detect(point_sign(x1, -y1), point_sign(x2, y2), s);
  assert(!(y1 * y2 < 0) || turns == (to_int(s) * y1 > 0 ? -to_int(s) : 0));

  const T r1 = std::sqrt(x1 * x1 + y1 * y1);
  const T r2 = std::sqrt(x2 * x2 + y2 * y2);

  SegmentPairAngle<T> out;
  out.triple = normalize(AngleTriple<T>{x, y, turns});
  out.sign = s;
  out.err_bound = detail::a_posteriori_bound(static_cast<double>(r1), static_cast<double>(r2));
  return out;
}

/// True when both segments are no longer than the shortest of the four
/// endpoint-to-endpoint distances; then the pair error is at most
/// bound::a_priori_pair.
template <std::floating_point T>
bool a_priori_ok(const Point3<T>& p, const Point3<T>& p_next, const Point3<T>& q,
                 const Point3<T>& q_next) {
  const T c = std::min({norm(q - p), norm(q - p_next), norm(q_next - p), norm(q_next - p_next)});
  return norm(p - p_next) <= c && norm(q - q_next) <= c;
}

}  // namespace certilink
