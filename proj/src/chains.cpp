#include "certilink/chains.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#include "certilink/detail/fold.hpp"

namespace certilink {

void ZeroChain::add(std::size_t point, std::int64_t coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = coefficients_.try_emplace(point, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) coefficients_.erase(it);
  }
}

std::int64_t ZeroChain::coefficient(std::size_t point) const {
  const auto it = coefficients_.find(point);
  return it == coefficients_.end() ? 0 : it->second;
}

ZeroChain operator+(ZeroChain a, const ZeroChain& b) {
  for (const auto& [point, c] : b.coefficients_) a.add(point, c);
  return a;
}

Chain::Chain(std::vector<Point3d> points, std::vector<Edge> edges) : points_(std::move(points)) {
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (!is_finite(points_[k])) {
      throw Error(ErrorKind::invalid_input, "chain point " + std::to_string(k) + " is not finite");
    }
  }
  edges_.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.from >= points_.size() || e.to >= points_.size()) {
      throw Error(ErrorKind::invalid_input, "chain edge index out of range");
    }
    if (e.from == e.to) {
      throw Error(ErrorKind::invalid_input, "chain edge joins point " + std::to_string(e.from) + " to itself");
    }
    if (e.weight != 0) edges_.push_back(e);
  }
}

Chain Chain::from_curve(const PolygonalCurve& curve) {
  const std::size_t n = curve.size();
  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1});
  return Chain({curve.vertices().begin(), curve.vertices().end()}, std::move(edges));
}

Chain Chain::scaled(std::int64_t factor) const {
  std::vector<Edge> edges = edges_;
  for (auto& e : edges) e.weight *= factor;
  return Chain(points_, std::move(edges));
}

Chain operator+(const Chain& a, const Chain& b) {
  if (a.points_ != b.points_) {
    throw Error(ErrorKind::invalid_input, "chains must share their point list to be added");
  }
  std::vector<Edge> edges = a.edges_;
  edges.insert(edges.end(), b.edges_.begin(), b.edges_.end());
  return Chain(a.points_, std::move(edges));
}

ZeroChain boundary(const Chain& c) {
  ZeroChain d;
  for (const auto& e : c.edges()) {
    d.add(e.from, e.weight);
    d.add(e.to, -e.weight);
  }
  return d;
}

bool is_closed(const Chain& c) { return boundary(c).is_zero(); }

namespace {

template <std::floating_point T>
std::vector<Point3<T>> working_points(const Chain& c) {
  std::vector<Point3<T>> out;
  out.reserve(c.points().size());
  for (const auto& v : c.points()) out.push_back(point_cast<T>(v));
  return out;
}

template <std::floating_point T>
LinkingResult chain_linking_impl(const Chain& a, const Chain& b, const LinkOptions& options) {
  const auto pa = working_points<T>(a);
  const auto pb = working_points<T>(b);
  const auto ea = a.edges();
  const auto eb = b.edges();
  const std::uint64_t count = static_cast<std::uint64_t>(ea.size()) * eb.size();

  auto pair_at = [&](std::uint64_t k) {
    const Edge& e1 = ea[k / eb.size()];
    const Edge& e2 = eb[k % eb.size()];
    SegmentPairAngle<T> pair = build_angle(pa[e1.from], pa[e1.to], pb[e2.from], pb[e2.to]);
    const std::int64_t w = e1.weight * e2.weight;
    if (w == 1) return pair;
    // |w| copies of the pair error plus |w| - 1 additions inside scalar_mul;
    // accumulate() charges the final addition.
    const double copies = std::abs(static_cast<double>(w));
    pair.triple = scalar_mul(w, pair.triple);
    pair.sign = point_sign(pair.triple);
    pair.err_bound = round_up(round_up(copies * pair.err_bound) +
                              round_up((copies - 1) * round_up(bound::triple_add)));
    return pair;
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

}  // namespace

LinkingResult chain_linking(const Chain& a, const Chain& b, const LinkOptions& options) {
  if (!is_closed(a) || !is_closed(b)) {
    throw Error(ErrorKind::not_closed, "linking number needs two chains with zero boundary");
  }
  if (options.precision == Precision::single_precision) return chain_linking_impl<float>(a, b, options);
  return chain_linking_impl<double>(a, b, options);
}

}  // namespace certilink
