#pragma once

#include <cmath>
#include <concepts>

namespace certilink {

/// A point (or displacement) in R^3 with working scalar T.
template <std::floating_point T>
struct Point3 {
  T x{};
  T y{};
  T z{};

  friend constexpr bool operator==(const Point3&, const Point3&) = default;

  friend constexpr Point3 operator+(const Point3& a, const Point3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr Point3 operator-(const Point3& a, const Point3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend constexpr Point3 operator*(T s, const Point3& a) {
    return {s * a.x, s * a.y, s * a.z};
  }
  friend constexpr Point3 operator/(const Point3& a, T s) {
    return {a.x / s, a.y / s, a.z / s};
  }
};

using Point3d = Point3<double>;
using Point3f = Point3<float>;

// Evaluation order is fixed (left to right); the error analysis assumes it.
template <std::floating_point T>
constexpr T dot(const Point3<T>& a, const Point3<T>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <std::floating_point T>
constexpr Point3<T> cross(const Point3<T>& a, const Point3<T>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <std::floating_point T>
T norm(const Point3<T>& a) {
  return std::sqrt(dot(a, a));
}

template <std::floating_point T>
bool is_finite(const Point3<T>& a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

template <std::floating_point To, std::floating_point From>
constexpr Point3<To> point_cast(const Point3<From>& a) {
  return {static_cast<To>(a.x), static_cast<To>(a.y), static_cast<To>(a.z)};
}

}  // namespace certilink
