#include "certilink/linking.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "certilink/detail/fold.hpp"

namespace certilink {

std::uint64_t max_budget_int(double u) {
  return static_cast<std::uint64_t>(std::floor(std::numbers::pi_v<long double> /
                                               (2.0L * static_cast<long double>(u))));
}

double unit_roundoff(Precision precision) {
  return precision == Precision::single_precision ? unit_roundoff<float>() : unit_roundoff<double>();
}

// ---------------------------------------------------------------------------
// PolygonalCurve

PolygonalCurve::PolygonalCurve(std::vector<Point3d> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) {
    throw Error(ErrorKind::curve_too_small,
                "a closed curve needs at least 3 vertices, got " + std::to_string(vertices_.size()));
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!is_finite(vertices_[i])) {
      throw Error(ErrorKind::invalid_input, "vertex " + std::to_string(i) + " is not finite");
    }
    if (vertices_[i] == vertices_[(i + 1) % vertices_.size()]) {
      throw Error(ErrorKind::degenerate_segments,
                  "vertices " + std::to_string(i) + " and " +
                      std::to_string((i + 1) % vertices_.size()) + " coincide");
    }
  }
}

PolygonalCurve PolygonalCurve::reversed() const {
  return PolygonalCurve(std::vector<Point3d>(vertices_.rbegin(), vertices_.rend()));
}

PolygonalCurve PolygonalCurve::scaled_pow2(int k) const {
  std::vector<Point3d> out;
  out.reserve(vertices_.size());
  for (const auto& v : vertices_) {
    out.push_back({std::ldexp(v.x, k), std::ldexp(v.y, k), std::ldexp(v.z, k)});
  }
  return PolygonalCurve(std::move(out));
}

PolygonalCurve PolygonalCurve::mirrored() const {
  std::vector<Point3d> out;
  out.reserve(vertices_.size());
  for (const auto& v : vertices_) out.push_back({v.x, v.y, -v.z});
  return PolygonalCurve(std::move(out));
}

// ---------------------------------------------------------------------------
// ErrorBudget

namespace {

constexpr double kTwo63 = 9223372036854775808.0;

}  // namespace

void ErrorBudget::charge(double amount) {
  if (saturated_) return;
  const double e = round_up(amount + frac_part_);
  if (!(e < kTwo63)) {  // also catches NaN
    saturated_ = true;
    return;
  }
  const double whole = std::floor(e);
  const auto add = static_cast<std::uint64_t>(whole);
  if (int_part_ > std::numeric_limits<std::uint64_t>::max() - add) {
    saturated_ = true;
    return;
  }
  int_part_ += add;
  frac_part_ = e - whole;
}

void ErrorBudget::merge(const ErrorBudget& other) {
  if (other.saturated_) saturated_ = true;
  if (saturated_) return;
  if (int_part_ > std::numeric_limits<std::uint64_t>::max() - other.int_part_) {
    saturated_ = true;
    return;
  }
  int_part_ += other.int_part_;
  charge(other.frac_part_);
}

double ErrorBudget::total() const {
  if (saturated_) return std::numeric_limits<double>::infinity();
  const double whole = static_cast<double>(int_part_);
  const double sum = whole + frac_part_;
  const bool exact = static_cast<std::uint64_t>(whole) == int_part_ && sum - whole == frac_part_;
  return exact ? sum : round_up(sum);
}

bool is_certified(const ErrorBudget& budget, double u) {
  return !budget.saturated() && budget.int_part() < max_budget_int(u);
}

// ---------------------------------------------------------------------------
// linking number and writhe

namespace {

template <std::floating_point T>
std::vector<Point3<T>> working_vertices(const PolygonalCurve& c) {
  std::vector<Point3<T>> out;
  out.reserve(c.size());
  for (const auto& v : c.vertices()) out.push_back(point_cast<T>(v));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] == out[(i + 1) % out.size()]) {
      throw Error(ErrorKind::degenerate_segments,
                  "consecutive vertices coincide after rounding to the working precision");
    }
  }
  return out;
}

template <std::floating_point T>
LinkingResult linking_impl(const PolygonalCurve& pc, const PolygonalCurve& qc,
                           const LinkOptions& options) {
  const auto p = working_vertices<T>(pc);
  const auto q = working_vertices<T>(qc);
  const std::size_t n = p.size();
  const std::size_t m = q.size();
  const std::uint64_t count = static_cast<std::uint64_t>(n) * m;

  auto pair_at = [&](std::uint64_t k) {
    const std::size_t i = static_cast<std::size_t>(k / m);
    const std::size_t j = static_cast<std::size_t>(k % m);
    return build_angle(p[i], p[(i + 1) % n], q[j], q[(j + 1) % m]);
  };
  const auto state = detail::fold_pairs<T>(count, options.threads, pair_at);

  LinkingResult r;
  r.value = state.acc.total.turns;
  r.pairs = count;
  r.residual = std::atan2(static_cast<double>(state.acc.total.y),
                          static_cast<double>(state.acc.total.x));
  r.unit_roundoff = unit_roundoff<T>();
  if (options.mode == LinkMode::certified) {
    r.err_bound_u = state.budget.total();
    r.certified = is_certified(state.budget, r.unit_roundoff);
  }
  return r;
}

template <std::floating_point T>
WritheResult writhe_impl(const PolygonalCurve& pc, const LinkOptions& options) {
  const auto p = working_vertices<T>(pc);
  const std::size_t n = p.size();

  // Unordered pairs of segments that share no vertex.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      pairs.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    }
  }
  auto pair_at = [&](std::uint64_t k) {
    const auto [i, j] = pairs[k];
    return build_angle(p[i], p[(i + 1) % n], p[j], p[(j + 1) % n]);
  };
  const auto state = detail::fold_pairs<T>(pairs.size(), options.threads, pair_at);

  // Each unordered pair stands for two ordered ones.
  const double residual = std::atan2(static_cast<double>(state.acc.total.y),
                                     static_cast<double>(state.acc.total.x));
  WritheResult r;
  r.value = 2.0 * (static_cast<double>(state.acc.total.turns) + residual / (2.0 * std::numbers::pi));
  r.pairs = pairs.size();
  r.residual = residual;
  r.unit_roundoff = unit_roundoff<T>();
  if (options.mode == LinkMode::certified) {
    ErrorBudget doubled = state.budget;
    doubled.merge(state.budget);
    r.err_bound_u = doubled.total();
    r.certified = is_certified(doubled, r.unit_roundoff);
  }
  return r;
}

}  // namespace

LinkingResult linking_number(const PolygonalCurve& p, const PolygonalCurve& q,
                             const LinkOptions& options) {
  if (options.precision == Precision::single_precision) return linking_impl<float>(p, q, options);
  return linking_impl<double>(p, q, options);
}

WritheResult writhe(const PolygonalCurve& p, const LinkOptions& options) {
  if (options.precision == Precision::single_precision) return writhe_impl<float>(p, options);
  return writhe_impl<double>(p, options);
}

}  // namespace certilink
