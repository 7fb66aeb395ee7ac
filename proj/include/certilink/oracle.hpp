#pragma once

// Ground-truth computations for tests and `certilink verify`. Nothing here
// calls into the production pair/accumulation code: the extended routines
// evaluate the solid-angle form of each pair contribution directly in
// binary128, the integral routine integrates the Gauss kernel numerically,
// and the projection routine counts signed crossings of a planar diagram.

#include <cstdint>

#include "certilink/linking.hpp"
#include "certilink/point3.hpp"
#include "certilink/triple_angle.hpp"

namespace certilink::oracle {

/// IEEE binary128, 113-bit significand.
using Extended = __float128;

/// Unit roundoff of Extended.
inline constexpr double extended_unit_roundoff = 0x1p-113;

Extended extended_pi();
double to_double(Extended v);
Extended atan2_extended(Extended y, Extended x);

/// atan2(y, x) + 2*pi*turns with the stored (x, y) taken exactly.
template <std::floating_point T>
Extended angle_extended(const AngleTriple<T>& t) {
  return atan2_extended(static_cast<Extended>(t.y), static_cast<Extended>(t.x)) +
         2 * extended_pi() * static_cast<Extended>(t.turns);
}

/// Pair contribution Theta(alpha, beta, gamma) - Theta(alpha, omega, gamma)
/// with Theta(a, b, c) = atan2(a.(b x c), |a||b||c| + (b.c)|a| + (c.a)|b| +
/// (a.b)|c|), evaluated in binary128 from the exact inputs.
Extended segment_pair_angle_extended(const Point3d& p, const Point3d& p_next, const Point3d& q,
                                     const Point3d& q_next);

/// Same contribution by adaptive Gauss-Kronrod integration of
/// (1/2) int_0^1 int_0^1 (r . (dq x dp)) / |r|^3 ds dt,
/// r = q - p + s dq - t dp. Accurate to roughly `tolerance` (relative).
double segment_pair_angle_integral(const Point3d& p, const Point3d& p_next, const Point3d& q,
                                   const Point3d& q_next, double tolerance = 1e-12);

/// Sum of all pair contributions over 2*pi, in binary128.
Extended linking_by_quadrature(const PolygonalCurve& p, const PolygonalCurve& q);

/// 2 * (sum over unordered pairs without a shared vertex) / (2*pi).
Extended writhe_by_quadrature(const PolygonalCurve& p);

/// Signed crossings where p passes over q when viewed from far along +dir.
/// Throws non_generic_direction when the projection has (near) degenerate
/// features: projected vertices on other edges, tangencies or equal heights.
std::int64_t linking_by_projection(const PolygonalCurve& p, const PolygonalCurve& q,
                                   const Point3d& dir);

/// Tries random directions (deterministic in seed) until one is generic;
/// gives up after max_attempts with non_generic_direction.
std::int64_t linking_by_projection(const PolygonalCurve& p, const PolygonalCurve& q,
                                   std::uint64_t seed = 0x5eed, int max_attempts = 100);

/// Minimum distance between any segment of p and any segment of q.
double min_separation(const PolygonalCurve& p, const PolygonalCurve& q);

/// Minimum distance between two closed segments.
double segment_distance(const Point3d& a0, const Point3d& a1, const Point3d& b0, const Point3d& b1);

}  // namespace certilink::oracle
