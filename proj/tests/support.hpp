#pragma once

// Hand-rolled generators shared by the property tests.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "certilink/oracle.hpp"
#include "certilink/point3.hpp"
#include "certilink/triple_angle.hpp"

namespace certilink::testing {

inline constexpr double u53 = 0x1p-53;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>()(rng_); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  bool coin() { return integer(0, 1) == 1; }

  Point3d point(double half_width) {
    return {uniform(-half_width, half_width), uniform(-half_width, half_width),
            uniform(-half_width, half_width)};
  }

  // Radius in (1/2, 1], arbitrary direction, small turn count.
  AngleTriple<double> normalized_triple() {
    const double r = uniform(0.5, 1.0);
    const double a = uniform(-std::numbers::pi, std::numbers::pi);
    AngleTriple<double> t{r * std::cos(a), r * std::sin(a), integer(-3, 3)};
    if (t.x == 0 && t.y == 0) t.x = 1;
    return normalize(t);
  }

  struct Segments {
    Point3d p, p_next, q, q_next;
  };

  // Disjoint segment pairs; a third of them are close to each other so the
  // radius-dependent part of the bound is exercised.
  Segments disjoint_segments() {
    for (;;) {
      Segments s;
      s.p = point(1);
      s.p_next = point(1);
      const int kind = static_cast<int>(integer(0, 2));
      if (kind == 0) {
        s.q = point(1);
        s.q_next = point(1);
      } else {
        const double t = uniform(0, 1);
        const Point3d mid = s.p + t * (s.p_next - s.p);
        const double gap = std::pow(10.0, uniform(-4, -1));
        const Point3d off = point(1);
        const Point3d dir = point(1);
        const Point3d base = mid + gap * (off / norm(off));
        s.q = base - (kind == 1 ? 0.5 : 0.05) * dir;
        s.q_next = base + (kind == 1 ? 0.5 : 0.05) * dir;
      }
      if (oracle::segment_distance(s.p, s.p_next, s.q, s.q_next) > 1e-6) return s;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// |angle(computed) - reference| in units of u, evaluated in binary128.
inline double error_in_u(oracle::Extended computed, oracle::Extended reference, double u = u53) {
  oracle::Extended d = computed - reference;
  if (d < 0) d = -d;
  return oracle::to_double(d) / u;
}

}  // namespace certilink::testing
