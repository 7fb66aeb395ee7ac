#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>

namespace certilink {

/// Error constants, in multiples of the unit roundoff u. They assume
/// u <= 1e-7, which holds for both IEEE single and double.
namespace bound {

/// Angle error of one floating-point triple addition.
inline constexpr double triple_add = 2.829;
/// Relative error of a component of a normalized 3-vector.
inline constexpr double normalized_component = 3.415;
/// Absolute error of a dot product of two normalized differences.
inline constexpr double normalized_dot = 13.838;
/// Absolute error of 1 + d1 + d2 + d3 built from normalized dot products.
inline constexpr double one_plus_dots = 57.515;
/// Absolute error of a scalar triple product of normalized differences.
inline constexpr double triple_product = 23.26;
/// Numerator of the per-radius term of the a-posteriori segment pair bound.
inline constexpr double radius_term = 57.516;
/// Segment pair error when the pair is a-priori admissible.
inline constexpr double a_priori_pair = 117.861;
/// Per-pair cost (a-priori pair error plus one addition) for budgeting.
inline constexpr double a_priori_per_pair = 120.690;

}  // namespace bound

/// Unit roundoff of the working type: 2^-53 for double, 2^-24 for float.
template <std::floating_point T>
constexpr double unit_roundoff() {
  return std::numeric_limits<T>::epsilon() / 2;
}

/// floor(pi / (2u)): the budget's integer part must stay below this for the
/// accumulated angle error to be under pi/2.
std::uint64_t max_budget_int(double u);

/// Smallest double strictly greater than v (v itself for +inf).
inline double round_up(double v) {
  return std::nextafter(v, std::numeric_limits<double>::infinity());
}

}  // namespace certilink
