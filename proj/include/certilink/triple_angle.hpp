#pragma once

// Angles as triples [x, y, turns] with value atan2(y, x) + 2*pi*turns.
//
// Addition multiplies the directions as complex numbers and tracks full
// turns by watching for crossings of the negative x-axis, so an arbitrary
// sum of angles is carried without ever calling atan2. Every result is
// rescaled by a power of two so that its radius lies in (1/2, 1]; that
// rescaling is exact.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numbers>

#include "certilink/errors.hpp"

namespace certilink {

enum class PointSign : int { negative = -1, positive = +1 };

inline int to_int(PointSign s) noexcept { return static_cast<int>(s); }

template <std::floating_point T>
struct AngleTriple {
  T x{1};
  T y{0};
  std::int64_t turns{0};

  friend constexpr bool operator==(const AngleTriple&, const AngleTriple&) = default;
};

/// The zero angle [1, 0, 0].
template <std::floating_point T>
constexpr AngleTriple<T> zero_angle() {
  return {T{1}, T{0}, 0};
}

/// +1 on the open upper half plane and the negative x-axis, -1 on the open
/// lower half plane and the positive x-axis.
template <std::floating_point T>
PointSign point_sign(T x, T y) {
  if (y > 0 || (y == 0 && x < 0)) return PointSign::positive;
  if (y < 0 || (y == 0 && x > 0)) return PointSign::negative;
  throw Error(ErrorKind::degenerate_origin, "point sign is undefined at the origin");
}

template <std::floating_point T>
PointSign point_sign(const AngleTriple<T>& t) {
  return point_sign(t.x, t.y);
}

/// Turn correction of a triple addition: s when both summands share sign s
/// and the product direction does not; 0 otherwise.
inline int cross_detect(PointSign s, PointSign s_prime, PointSign s_dprime) noexcept {
  const int a = to_int(s);
  return (a * to_int(s_prime) > 0 && a * to_int(s_dprime) < 0) ? a : 0;
}

/// atan2(y, x) + 2*pi*turns, evaluated in double.
template <std::floating_point T>
double angle_of(const AngleTriple<T>& t) {
  return std::atan2(static_cast<double>(t.y), static_cast<double>(t.x)) +
         2.0 * std::numbers::pi * static_cast<double>(t.turns);
}

namespace detail {

// Sign of x^2 + y^2 - 1, computed exactly with error-free transformations.
template <std::floating_point T>
int compare_radius_squared_with_one(T x, T y) {
  const T r2 = x * x + y * y;
  constexpr T eps = std::numeric_limits<T>::epsilon();
  if (r2 < T{1} - 8 * eps) return -1;
  if (r2 > T{1} + 8 * eps) return +1;

  // x^2 = px + ex and y^2 = py + ey exactly.
  const T px = x * x;
  const T ex = std::fma(x, x, -px);
  const T py = y * y;
  const T ey = std::fma(y, y, -py);

  // Shewchuk grow-expansion over {px, ex, py, ey, -1}; the sign of a
  // nonoverlapping expansion is the sign of its largest nonzero component.
  T expansion[5];
  int len = 0;
  auto grow = [&](T b) {
    T q = b;
    int out = 0;
    for (int i = 0; i < len; ++i) {
      const T sum = q + expansion[i];
      const T bv = sum - q;
      const T av = sum - bv;
      const T err = (q - av) + (expansion[i] - bv);
      if (err != 0) expansion[out++] = err;
      q = sum;
    }
    if (q != 0 || out == 0) expansion[out++] = q;
    len = out;
  };
  grow(px);
  grow(ex);
  grow(py);
  grow(ey);
  grow(T{-1});
  for (int i = len - 1; i >= 0; --i) {
    if (expansion[i] > 0) return +1;
    if (expansion[i] < 0) return -1;
  }
  return 0;
}

template <std::floating_point T>
T scale_exactly(T v, int exp) {
  const T scaled = std::ldexp(v, exp);
  if (!std::isfinite(scaled) || std::ldexp(scaled, -exp) != v) {
    throw Error(ErrorKind::exponent_range, "power-of-two rescaling is not exact");
  }
  return scaled;
}

}  // namespace detail

/// Rescale (x, y) by a single power of two so that 1/2 < radius <= 1.
/// Turns and direction are preserved bit-exactly.
template <std::floating_point T>
AngleTriple<T> normalize(const AngleTriple<T>& t) {
  if (!std::isfinite(t.x) || !std::isfinite(t.y)) {
    throw Error(ErrorKind::exponent_range, "non-finite triple component");
  }
  if (t.x == 0 && t.y == 0) {
    throw Error(ErrorKind::degenerate_result, "triple direction is (0, 0)");
  }
  int ex = std::numeric_limits<int>::min();
  int ey = std::numeric_limits<int>::min();
  if (t.x != 0) std::frexp(t.x, &ex);
  if (t.y != 0) std::frexp(t.y, &ey);
  int shift = -std::max(ex, ey);

  // Now max(|x|, |y|) is in [1/2, 1), so the radius is in [1/2, sqrt 2).
  T x = detail::scale_exactly(t.x, shift);
  T y = detail::scale_exactly(t.y, shift);
  if (detail::compare_radius_squared_with_one(x, y) > 0) {
    x = detail::scale_exactly(x, -1);
    y = detail::scale_exactly(y, -1);
  } else if ((x == 0 || y == 0) && std::abs(x + y) == T{0.5}) {
    // Radius exactly 1/2.
    x = detail::scale_exactly(x, 1);
    y = detail::scale_exactly(y, 1);
  }
  return {x, y, t.turns};
}

/// Triple sum; the result is normalized.
template <std::floating_point T>
AngleTriple<T> add(const AngleTriple<T>& a, const AngleTriple<T>& b) {
  const T x = a.x * b.x - a.y * b.y;
  const T y = a.x * b.y + a.y * b.x;
  if (x == 0 && y == 0) {
    throw Error(ErrorKind::degenerate_result,
                "triple addition produced (0, 0); inputs are (nearly) opposite after rounding");
  }
  const int carry = cross_detect(point_sign(a), point_sign(b), point_sign(x, y));
  return normalize(AngleTriple<T>{x, y, a.turns + b.turns + carry});
}

/// Exact negative of the angle: [x, -y, -turns], except on the negative
/// x-axis where atan2 stays at +pi and one more turn is subtracted.
template <std::floating_point T>
constexpr AngleTriple<T> negate(const AngleTriple<T>& t) {
  if (t.y == 0 && t.x < 0) return {t.x, T{0}, -t.turns - 1};
  return {t.x, -t.y, -t.turns};
}

template <std::floating_point T>
AngleTriple<T> sub(const AngleTriple<T>& a, const AngleTriple<T>& b) {
  return add(a, negate(b));
}

/// w-fold sum of t (of its negative when w < 0) by left-to-right addition,
/// so |w| - 1 triple additions are performed.
template <std::floating_point T>
AngleTriple<T> scalar_mul(std::int64_t w, const AngleTriple<T>& t) {
  if (w == 0) return zero_angle<T>();
  const AngleTriple<T> base = normalize(w > 0 ? t : negate(t));
  AngleTriple<T> result = base;
  const std::uint64_t count = w > 0 ? static_cast<std::uint64_t>(w)
                                    : static_cast<std::uint64_t>(-(w + 1)) + 1;
  for (std::uint64_t k = 1; k < count; ++k) result = add(result, base);
  return result;
}

}  // namespace certilink
