#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "certilink/point3.hpp"
#include "certilink/segment_pair.hpp"
#include "certilink/triple_angle.hpp"

namespace certilink {

/// Closed polyline. Segment i joins vertex i to vertex i + 1 and the last
/// vertex joins the first; the closing vertex is not repeated.
class PolygonalCurve {
 public:
  /// Throws curve_too_small for fewer than 3 vertices, invalid_input for
  /// non-finite coordinates and degenerate_segments when two consecutive
  /// vertices (including last/first) coincide.
  explicit PolygonalCurve(std::vector<Point3d> vertices);

  std::size_t size() const noexcept { return vertices_.size(); }
  std::span<const Point3d> vertices() const noexcept { return vertices_; }
  const Point3d& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

  PolygonalCurve reversed() const;
  /// Every coordinate multiplied by 2^k (exact barring overflow/underflow).
  PolygonalCurve scaled_pow2(int k) const;
  /// Reflection z -> -z.
  PolygonalCurve mirrored() const;

 private:
  std::vector<Point3d> vertices_;
};

/// Running error bound (int_part + frac_part) * u.
class ErrorBudget {
 public:
  /// Adds an amount (in multiples of u) the way the accumulation loop does:
  /// E = amount + frac; int += floor(E); frac = E - floor(E). Saturates
  /// instead of wrapping when the bound stops being representable.
  void charge(double amount);
  /// Sum of two budgets, for combining partial reductions.
  void merge(const ErrorBudget& other);

  std::uint64_t int_part() const noexcept { return int_part_; }
  double frac_part() const noexcept { return frac_part_; }
  bool saturated() const noexcept { return saturated_; }
  /// (int_part + frac_part), rounded upward; +inf when saturated.
  double total() const;

 private:
  std::uint64_t int_part_ = 0;
  double frac_part_ = 0;
  bool saturated_ = false;
};

template <typename V>
struct CertifiedValue {
  V value{};
  double err_bound_u = 0;  // total bound as a multiple of u
  bool certified = false;
  std::uint64_t pairs = 0;    // segment pairs evaluated
  double residual = 0;        // atan2(Y, X) of the final accumulator
  double unit_roundoff = 0;   // u used for the bound
};

using LinkingResult = CertifiedValue<std::int64_t>;
using WritheResult = CertifiedValue<double>;

enum class Precision { double_precision, single_precision };

enum class LinkMode {
  certified,    // track the error budget (default)
  exact_style,  // plain triple sum, no bound; never certified
};

struct LinkOptions {
  Precision precision = Precision::double_precision;
  LinkMode mode = LinkMode::certified;
  /// Worker threads for the pair loop; 1 runs the sequential reference.
  unsigned threads = 1;
};

double unit_roundoff(Precision precision);

/// Accumulator [X, Y, l] plus the sign S of (X, Y).
template <std::floating_point T>
struct Accumulator {
  AngleTriple<T> total = zero_angle<T>();
  PointSign sign = PointSign::negative;
};

/// One step of the linking loop: (X, Y) is rotated by the pair direction,
/// turns are carried on crossings of the negative x-axis, the result is
/// renormalized, and the budget grows by err_bound + 2.829.
template <std::floating_point T>
void accumulate(Accumulator<T>& acc, const SegmentPairAngle<T>& pair, ErrorBudget& budget) {
  const T x = acc.total.x * pair.triple.x - acc.total.y * pair.triple.y;
  const T y = acc.total.x * pair.triple.y + acc.total.y * pair.triple.x;
  if (x == 0 && y == 0) {
    throw Error(ErrorKind::degenerate_result, "accumulator collapsed to (0, 0)");
  }
  std::int64_t turns = acc.total.turns + pair.triple.turns;
  const PointSign s_new = point_sign(x, y);
  const int a = to_int(acc.sign);
  if (a * to_int(pair.sign) > 0 && a * to_int(s_new) < 0) turns -= to_int(s_new);
  acc.total = normalize(AngleTriple<T>{x, y, turns});
  acc.sign = s_new;
  budget.charge(round_up(pair.err_bound + bound::triple_add));
}

/// Linking number of two disjoint closed polygons with its error bound.
LinkingResult linking_number(const PolygonalCurve& p, const PolygonalCurve& q,
                             const LinkOptions& options = {});

/// Writhe of a closed polygon without self-intersections. Pairs of segments
/// sharing a vertex are skipped.
WritheResult writhe(const PolygonalCurve& p, const LinkOptions& options = {});

/// Certification rule shared by all results: the budget's integer part is
/// below floor(pi / (2u)).
bool is_certified(const ErrorBudget& budget, double u);

}  // namespace certilink
