#pragma once

// Integer-weighted chains of directed segments over a shared point list.
// A chain with zero boundary is a generalized closed loop and has a linking
// number with any other such loop.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "certilink/linking.hpp"
#include "certilink/point3.hpp"

namespace certilink {

struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::int64_t weight = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Formal integer combination of points (a 0-chain). Only nonzero
/// coefficients are stored.
class ZeroChain {
 public:
  void add(std::size_t point, std::int64_t coefficient);
  std::int64_t coefficient(std::size_t point) const;
  bool is_zero() const noexcept { return coefficients_.empty(); }
  const std::map<std::size_t, std::int64_t>& coefficients() const noexcept { return coefficients_; }

  friend ZeroChain operator+(ZeroChain a, const ZeroChain& b);
  friend bool operator==(const ZeroChain&, const ZeroChain&) = default;

 private:
  std::map<std::size_t, std::int64_t> coefficients_;
};

class Chain {
 public:
  /// Throws invalid_input for out-of-range indices, from == to, or
  /// non-finite points. Zero-weight edges are dropped.
  Chain(std::vector<Point3d> points, std::vector<Edge> edges);

  /// Weight-1 chain along a closed polygon.
  static Chain from_curve(const PolygonalCurve& curve);

  std::span<const Point3d> points() const noexcept { return points_; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Every weight multiplied by factor (factor 0 gives the empty chain).
  Chain scaled(std::int64_t factor) const;

  /// Edge-wise sum of two chains over the same point list.
  friend Chain operator+(const Chain& a, const Chain& b);

 private:
  std::vector<Point3d> points_;
  std::vector<Edge> edges_;
};

/// D c: each edge (i, j, w) contributes +w at i and -w at j.
ZeroChain boundary(const Chain& c);

bool is_closed(const Chain& c);

/// Linking number of two closed chains: the triple of every edge pair is
/// multiplied by the product of the weights before it is folded in. The
/// budget of a pair with combined weight w is |w| (e + 2.829).
/// Throws not_closed when either chain has a boundary.
LinkingResult chain_linking(const Chain& a, const Chain& b, const LinkOptions& options = {});

}  // namespace certilink
