#include "certilink/oracle.hpp"

#include <quadmath.h>

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "certilink/errors.hpp"

namespace certilink::oracle {

namespace {

struct QVec {
  Extended x, y, z;
};

QVec to_ext(const Point3d& p) { return {p.x, p.y, p.z}; }
QVec operator-(const QVec& a, const QVec& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Extended qdot(const QVec& a, const QVec& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
QVec qcross(const QVec& a, const QVec& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
Extended qnorm(const QVec& a) { return sqrtq(qdot(a, a)); }

// Half the solid angle of the triangle (a, b, c) seen from the origin.
Extended theta(const QVec& a, const QVec& b, const QVec& c) {
  const Extended la = qnorm(a), lb = qnorm(b), lc = qnorm(c);
  const Extended x = la * lb * lc + qdot(b, c) * la + qdot(c, a) * lb + qdot(a, b) * lc;
  const Extended y = qdot(a, qcross(b, c));
  return atan2q(y, x);
}

}  // namespace

Extended extended_pi() { return M_PIq; }

double to_double(Extended v) { return static_cast<double>(v); }

Extended atan2_extended(Extended y, Extended x) { return atan2q(y, x); }

Extended segment_pair_angle_extended(const Point3d& p, const Point3d& p_next, const Point3d& q,
                                     const Point3d& q_next) {
  const QVec P = to_ext(p), P1 = to_ext(p_next), Q = to_ext(q), Q1 = to_ext(q_next);
  const QVec alpha = Q - P, beta = Q - P1, gamma = Q1 - P1, omega = Q1 - P;
  return theta(alpha, beta, gamma) - theta(alpha, omega, gamma);
}

double segment_pair_angle_integral(const Point3d& p, const Point3d& p_next, const Point3d& q,
                                   const Point3d& q_next, double tolerance) {
  using boost::math::quadrature::gauss_kronrod;
  const Point3d dp = p_next - p;
  const Point3d dq = q_next - q;
  const Point3d n = cross(dq, dp);
  const Point3d base = q - p;
  auto inner = [&](double t) {
    auto integrand = [&](double s) {
      const Point3d r = base + s * dq - t * dp;
      const double len = norm(r);
      return dot(r, n) / (len * len * len);
    };
    return gauss_kronrod<double, 31>::integrate(integrand, 0.0, 1.0, 15, tolerance);
  };
  return 0.5 * gauss_kronrod<double, 31>::integrate(inner, 0.0, 1.0, 15, tolerance);
}

Extended linking_by_quadrature(const PolygonalCurve& p, const PolygonalCurve& q) {
  Extended sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      sum += segment_pair_angle_extended(p.vertex(i), p.vertex(i + 1), q.vertex(j), q.vertex(j + 1));
    }
  }
  return sum / (2 * extended_pi());
}

Extended writhe_by_quadrature(const PolygonalCurve& p) {
  const std::size_t n = p.size();
  Extended sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      sum += segment_pair_angle_extended(p.vertex(i), p.vertex(i + 1), p.vertex(j), p.vertex(j + 1));
    }
  }
  return 2 * sum / (2 * extended_pi());
}

// ---------------------------------------------------------------------------
// projection

namespace {

struct Projected {
  double u, v, h;  // plane coordinates and height along the view direction
};

struct Frame {
  Point3d e1, e2, dir;  // right-handed: e1 x e2 = dir
};

Frame make_frame(const Point3d& d) {
  const double len = norm(d);
  if (!(len > 0) || !std::isfinite(len)) {
    throw Error(ErrorKind::invalid_input, "projection direction must be a nonzero finite vector");
  }
  const Point3d dir = d / len;
  const Point3d helper = std::abs(dir.x) < 0.9 ? Point3d{1, 0, 0} : Point3d{0, 1, 0};
  Point3d e1 = cross(helper, dir);
  e1 = e1 / norm(e1);
  const Point3d e2 = cross(dir, e1);
  return {e1, e2, dir};
}

std::vector<Projected> project(const PolygonalCurve& c, const Frame& f) {
  std::vector<Projected> out;
  out.reserve(c.size());
  for (const auto& v : c.vertices()) out.push_back({dot(v, f.e1), dot(v, f.e2), dot(v, f.dir)});
  return out;
}

double cross2(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

[[noreturn]] void non_generic(const char* what) {
  throw Error(ErrorKind::non_generic_direction, what);
}

}  // namespace

std::int64_t linking_by_projection(const PolygonalCurve& pc, const PolygonalCurve& qc,
                                   const Point3d& dir) {
  const Frame frame = make_frame(dir);
  const auto p = project(pc, frame);
  const auto q = project(qc, frame);

  double scale = 0;
  for (const auto* c : {&p, &q}) {
    for (const auto& v : *c) scale = std::max({scale, std::abs(v.u), std::abs(v.v), std::abs(v.h)});
  }
  const double eps = 1e-12 * std::max(scale, std::numeric_limits<double>::min());

  std::int64_t p_over = 0;
  std::int64_t q_over = 0;
  const std::size_t n = p.size(), m = q.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Projected& a0 = p[i];
    const Projected& a1 = p[(i + 1) % n];
    const double ax = a1.u - a0.u, ay = a1.v - a0.v;
    const double alen = std::hypot(ax, ay);
    if (alen < eps) non_generic("segment projects to a point");
    const double aminu = std::min(a0.u, a1.u) - eps, amaxu = std::max(a0.u, a1.u) + eps;
    const double aminv = std::min(a0.v, a1.v) - eps, amaxv = std::max(a0.v, a1.v) + eps;
    for (std::size_t j = 0; j < m; ++j) {
      const Projected& b0 = q[j];
      const Projected& b1 = q[(j + 1) % m];
      if (std::max(b0.u, b1.u) < aminu || std::min(b0.u, b1.u) > amaxu ||
          std::max(b0.v, b1.v) < aminv || std::min(b0.v, b1.v) > amaxv) {
        continue;
      }
      const double bx = b1.u - b0.u, by = b1.v - b0.v;
      const double blen = std::hypot(bx, by);
      if (blen < eps) non_generic("segment projects to a point");
      // Signed distances of each endpoint from the other segment's line.
      const double d0 = cross2(ax, ay, b0.u - a0.u, b0.v - a0.v) / alen;
      const double d1 = cross2(ax, ay, b1.u - a0.u, b1.v - a0.v) / alen;
      const double d2 = cross2(bx, by, a0.u - b0.u, a0.v - b0.v) / blen;
      const double d3 = cross2(bx, by, a1.u - b0.u, a1.v - b0.v) / blen;
      if (std::min({std::abs(d0), std::abs(d1), std::abs(d2), std::abs(d3)}) < eps) {
        non_generic("projected vertex lies (nearly) on another projected edge");
      }
      if (!(d0 * d1 < 0 && d2 * d3 < 0)) continue;

      const double t = d2 / (d2 - d3);  // along a
      const double s = d0 / (d0 - d1);  // along b
      const double ha = a0.h + t * (a1.h - a0.h);
      const double hb = b0.h + s * (b1.h - b0.h);
      if (std::abs(ha - hb) < eps) non_generic("curves (nearly) meet above a crossing");
      if (ha > hb) {
        p_over += cross2(ax, ay, bx, by) > 0 ? 1 : -1;
      } else {
        q_over += cross2(bx, by, ax, ay) > 0 ? 1 : -1;
      }
    }
  }
  if (p_over != q_over) non_generic("over and under crossing counts disagree");
  return p_over;
}

std::int64_t linking_by_projection(const PolygonalCurve& p, const PolygonalCurve& q,
                                   std::uint64_t seed, int max_attempts) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const Point3d dir{gauss(rng), gauss(rng), gauss(rng)};
    if (norm(dir) < 1e-6) continue;
    try {
      return linking_by_projection(p, q, dir);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::non_generic_direction) throw;
    }
  }
  throw Error(ErrorKind::non_generic_direction, "no generic projection direction found");
}

// ---------------------------------------------------------------------------
// distances

double segment_distance(const Point3d& a0, const Point3d& a1, const Point3d& b0, const Point3d& b1) {
  // Closest points of two segments (clamped parametric minimization).
  const Point3d d1 = a1 - a0;
  const Point3d d2 = b1 - b0;
  const Point3d r = a0 - b0;
  const double a = dot(d1, d1);
  const double e = dot(d2, d2);
  const double f = dot(d2, r);
  double s = 0, t = 0;
  if (a <= 0 && e <= 0) return norm(r);
  if (a <= 0) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = dot(d1, r);
    if (e <= 0) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = dot(d1, d2);
      const double denom = a * e - b * b;
      s = denom > 0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0) {
        t = 0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1) {
        t = 1;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return norm((a0 + s * d1) - (b0 + t * d2));
}

double min_separation(const PolygonalCurve& p, const PolygonalCurve& q) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      best = std::min(best, segment_distance(p.vertex(i), p.vertex(i + 1), q.vertex(j), q.vertex(j + 1)));
    }
  }
  return best;
}

}  // namespace certilink::oracle
