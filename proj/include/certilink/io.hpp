#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "certilink/chains.hpp"
#include "certilink/linking.hpp"

namespace certilink::io {

struct NamedCurve {
  std::string name;
  PolygonalCurve curve;
};

/// {"curves": [{"name": ..., "vertices": [[x, y, z], ...]}, ...]}
/// The closing vertex is implicit and never repeated.
using CurveSet = std::vector<NamedCurve>;

struct NamedChain {
  std::string name;
  Chain chain;
};

/// {"points": [[x, y, z], ...], "chains": [{"name": ..., "edges": [[i, j, w], ...]}]}
/// with 0-based point indices.
struct ChainSet {
  std::vector<Point3d> points;
  std::vector<NamedChain> chains;
};

/// Throws Error(invalid_input) on malformed documents, plus the curve and
/// chain constructors' own errors.
CurveSet parse_curves(std::string_view json_text);
std::string write_curves(const CurveSet& curves);
CurveSet read_curve_file(const std::string& path);

ChainSet parse_chains(std::string_view json_text);
std::string write_chains(const ChainSet& chains);
ChainSet read_chain_file(const std::string& path);

const PolygonalCurve& find_curve(const CurveSet& set, const std::string& name);
const Chain& find_chain(const ChainSet& set, const std::string& name);

// ---------------------------------------------------------------------------
// generators. All are deterministic in their parameters.

/// Unit circle in the xy-plane at the origin and unit circle in the
/// xz-plane centred at (1, 0, 0), oriented to link with +1.
CurveSet hopf_link(std::size_t segments);

/// Two unit circles in parallel planes, far apart.
CurveSet unlink(std::size_t segments);

/// The two components of the torus link T(2, 2k) on the torus with major
/// radius 2 and minor radius 1; each wraps once longitudinally and k times
/// meridionally, offset by half a meridian. Linking number +k.
CurveSet torus_link(int k, std::size_t segments);

/// Trefoil (sin t + 2 sin 2t, cos t - 2 cos 2t, -sin 3t).
CurveSet trefoil(std::size_t segments);

/// Two closed curves, each a random trigonometric polynomial of degree at
/// most 5, the second shifted by a random offset.
CurveSet random_link(std::uint64_t seed, std::size_t segments);

/// Regular polygon of radius 1 in the plane z = 0.
PolygonalCurve regular_polygon(std::size_t sides);

// ---------------------------------------------------------------------------
// benchmark harness

struct BenchRow {
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t pairs = 0;
  std::int64_t value = 0;
  double bound_u = 0;
  bool certified = false;
  double elapsed_ms = 0;
};

struct BenchConfig {
  std::string family = "hopf";  // hopf | torus
  int torus_k = 3;
  std::size_t min_n = 8;
  std::size_t max_n = 1024;
  LinkOptions options;
};

/// Runs N = M over powers of two from min_n to max_n.
std::vector<BenchRow> run_bench(const BenchConfig& config);

inline constexpr std::string_view bench_csv_header = "n,m,pairs,value,bound_u,certified,elapsed_ms";
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace certilink::io
