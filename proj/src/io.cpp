#include "certilink/io.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "certilink/errors.hpp"

namespace certilink::io {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::invalid_input, what); }

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

double finite_number(const json& v, const std::string& where) {
  if (!v.is_number()) bad(where + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad(where + ": number is not finite");
  return d;
}

Point3d parse_point(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3) bad(where + ": expected [x, y, z]");
  return {finite_number(v[0], where), finite_number(v[1], where), finite_number(v[2], where)};
}

json point_json(const Point3d& p) { return json::array({p.x, p.y, p.z}); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// curve files

CurveSet parse_curves(std::string_view json_text) {
  const json doc = parse_document(json_text);
  if (!doc.is_object() || !doc.contains("curves") || !doc["curves"].is_array()) {
    bad("curve file needs a \"curves\" array");
  }
  CurveSet out;
  for (const auto& c : doc["curves"]) {
    if (!c.is_object() || !c.contains("name") || !c["name"].is_string()) bad("curve needs a string \"name\"");
    const std::string name = c["name"].get<std::string>();
    if (!c.contains("vertices") || !c["vertices"].is_array()) bad("curve " + name + " needs \"vertices\"");
    std::vector<Point3d> vertices;
    vertices.reserve(c["vertices"].size());
    for (const auto& v : c["vertices"]) vertices.push_back(parse_point(v, "curve " + name));
    out.push_back({name, PolygonalCurve(std::move(vertices))});
  }
  return out;
}

std::string write_curves(const CurveSet& curves) {
  json arr = json::array();
  for (const auto& c : curves) {
    json verts = json::array();
    for (const auto& v : c.curve.vertices()) verts.push_back(point_json(v));
    arr.push_back({{"name", c.name}, {"vertices", std::move(verts)}});
  }
  return json{{"curves", std::move(arr)}}.dump() + "\n";
}

CurveSet read_curve_file(const std::string& path) { return parse_curves(read_file(path)); }

const PolygonalCurve& find_curve(const CurveSet& set, const std::string& name) {
  for (const auto& c : set) {
    if (c.name == name) return c.curve;
  }
  bad("no curve named \"" + name + "\"");
}

// ---------------------------------------------------------------------------
// chain files

ChainSet parse_chains(std::string_view json_text) {
  const json doc = parse_document(json_text);
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array()) {
    bad("chain file needs a \"points\" array");
  }
  if (!doc.contains("chains") || !doc["chains"].is_array()) bad("chain file needs a \"chains\" array");
  ChainSet out;
  for (const auto& p : doc["points"]) out.points.push_back(parse_point(p, "points"));
  for (const auto& c : doc["chains"]) {
    if (!c.is_object() || !c.contains("name") || !c["name"].is_string()) bad("chain needs a string \"name\"");
    const std::string name = c["name"].get<std::string>();
    if (!c.contains("edges") || !c["edges"].is_array()) bad("chain " + name + " needs \"edges\"");
    std::vector<Edge> edges;
    for (const auto& e : c["edges"]) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned() ||
          !e[2].is_number_integer()) {
        bad("chain " + name + ": edges are [i, j, w] with integer entries and i, j >= 0");
      }
      edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(), e[2].get<std::int64_t>()});
    }
    out.chains.push_back({name, Chain(out.points, std::move(edges))});
  }
  return out;
}

std::string write_chains(const ChainSet& chains) {
  json points = json::array();
  for (const auto& p : chains.points) points.push_back(point_json(p));
  json arr = json::array();
  for (const auto& c : chains.chains) {
    json edges = json::array();
    for (const auto& e : c.chain.edges()) edges.push_back(json::array({e.from, e.to, e.weight}));
    arr.push_back({{"name", c.name}, {"edges", std::move(edges)}});
  }
  return json{{"points", std::move(points)}, {"chains", std::move(arr)}}.dump() + "\n";
}

ChainSet read_chain_file(const std::string& path) { return parse_chains(read_file(path)); }

const Chain& find_chain(const ChainSet& set, const std::string& name) {
  for (const auto& c : set.chains) {
    if (c.name == name) return c.chain;
  }
  bad("no chain named \"" + name + "\"");
}

// ---------------------------------------------------------------------------
// generators

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

template <typename F>
PolygonalCurve sample(std::size_t segments, F&& f) {
  if (segments < 3) throw Error(ErrorKind::curve_too_small, "need at least 3 segments");
  std::vector<Point3d> v;
  v.reserve(segments);
  for (std::size_t i = 0; i < segments; ++i) {
    v.push_back(f(kTwoPi * static_cast<double>(i) / static_cast<double>(segments)));
  }
  return PolygonalCurve(std::move(v));
}

}  // namespace

CurveSet hopf_link(std::size_t segments) {
  return {
      {"a", sample(segments, [](double t) { return Point3d{std::cos(t), std::sin(t), 0}; })},
      {"b", sample(segments, [](double t) { return Point3d{1 + std::cos(t), 0, -std::sin(t)}; })},
  };
}

CurveSet unlink(std::size_t segments) {
  return {
      {"a", sample(segments, [](double t) { return Point3d{std::cos(t), std::sin(t), 0}; })},
      {"b", sample(segments, [](double t) { return Point3d{std::cos(t), std::sin(t), 5}; })},
  };
}

CurveSet torus_link(int k, std::size_t segments) {
  if (k < 1) throw Error(ErrorKind::invalid_input, "torus link needs k >= 1");
  constexpr double major = 2.0, minor = 1.0;
  auto component = [k](double offset) {
    return [k, offset](double t) {
      const double phi = static_cast<double>(k) * t + offset;
      const double rho = major + minor * std::cos(phi);
      return Point3d{rho * std::cos(t), rho * std::sin(t), -minor * std::sin(phi)};
    };
  };
  return {
      {"a", sample(segments, component(0.0))},
      {"b", sample(segments, component(std::numbers::pi))},
  };
}

CurveSet trefoil(std::size_t segments) {
  return {{"trefoil", sample(segments, [](double t) {
             return Point3d{std::sin(t) + 2 * std::sin(2 * t), std::cos(t) - 2 * std::cos(2 * t),
                            -std::sin(3 * t)};
           })}};
}

CurveSet random_link(std::uint64_t seed, std::size_t segments) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<int> degree_dist(1, 5);
  std::uniform_real_distribution<double> offset_dist(-1.0, 1.0);

  auto make = [&](const Point3d& offset) {
    const int degree = degree_dist(rng);
    std::vector<Point3d> cos_coef, sin_coef;
    for (int d = 1; d <= degree; ++d) {
      const double damp = 1.0 / d;
      cos_coef.push_back(damp * Point3d{gauss(rng), gauss(rng), gauss(rng)});
      sin_coef.push_back(damp * Point3d{gauss(rng), gauss(rng), gauss(rng)});
    }
    return sample(segments, [&](double t) {
      Point3d r = offset;
      for (int d = 1; d <= degree; ++d) {
        r = r + std::cos(d * t) * cos_coef[d - 1] + std::sin(d * t) * sin_coef[d - 1];
      }
      return r;
    });
  };
  PolygonalCurve a = make({0, 0, 0});
  const Point3d offset{offset_dist(rng), offset_dist(rng), offset_dist(rng)};
  PolygonalCurve b = make(offset);
  return {{"a", std::move(a)}, {"b", std::move(b)}};
}

PolygonalCurve regular_polygon(std::size_t sides) {
  return sample(sides, [](double t) { return Point3d{std::cos(t), std::sin(t), 0}; });
}

// ---------------------------------------------------------------------------
// bench

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  if (config.min_n < 3 || config.min_n > config.max_n) {
    throw Error(ErrorKind::invalid_input, "bench needs 3 <= min_n <= max_n");
  }
  std::vector<BenchRow> rows;
  for (std::size_t n = config.min_n; n <= config.max_n; n *= 2) {
    const CurveSet link = config.family == "torus" ? torus_link(config.torus_k, n) : hopf_link(n);
    const auto start = std::chrono::steady_clock::now();
    const LinkingResult r = linking_number(link[0].curve, link[1].curve, config.options);
    const auto stop = std::chrono::steady_clock::now();
    rows.push_back({n, n, r.pairs, r.value, r.err_bound_u, r.certified,
                    std::chrono::duration<double, std::milli>(stop - start).count()});
    if (n > config.max_n / 2) break;
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << bench_csv_header << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << r.m << ',' << r.pairs << ',' << r.value << ',' << r.bound_u << ','
        << (r.certified ? "true" : "false") << ',' << r.elapsed_ms << '\n';
  }
}

}  // namespace certilink::io
