#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "certilink/errors.hpp"
#include "certilink/io.hpp"
#include "certilink/oracle.hpp"

using namespace certilink;

namespace {

int error_kind(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return static_cast<int>(e.kind());
  }
  return -1;
}

constexpr int invalid = static_cast<int>(ErrorKind::invalid_input);

}  // namespace

TEST_SUITE("io") {

TEST_CASE("curve files round-trip exactly") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto set = io::random_link(seed, 33);
    const auto back = io::parse_curves(io::write_curves(set));
    REQUIRE(back.size() == set.size());
    for (std::size_t c = 0; c < set.size(); ++c) {
      CHECK(back[c].name == set[c].name);
      REQUIRE(back[c].curve.size() == set[c].curve.size());
      for (std::size_t i = 0; i < set[c].curve.size(); ++i) {
        CHECK(back[c].curve.vertex(i) == set[c].curve.vertex(i));
      }
    }
    CHECK(io::write_curves(back) == io::write_curves(set));
  }
}

TEST_CASE("curve file errors") {
  CHECK(error_kind([] { io::parse_curves("{\"curves\": [}"); }) == invalid);
  CHECK(error_kind([] { io::parse_curves("[]"); }) == invalid);
  CHECK(error_kind([] { io::parse_curves(R"({"curves": [{"vertices": []}]})"); }) == invalid);
  CHECK(error_kind([] { io::parse_curves(R"({"curves": [{"name": "a", "vertices": [[0,0]]}]})"); }) == invalid);
  CHECK(error_kind([] { io::parse_curves(R"({"curves": [{"name": "a", "vertices": [[0,0,"x"]]}]})"); }) ==
        invalid);
  CHECK(error_kind([] { io::parse_curves(R"({"curves": [{"name": "a", "vertices": [[0,0,0],[1,0,0]]}]})"); }) ==
        static_cast<int>(ErrorKind::curve_too_small));
  CHECK(error_kind([] { io::read_curve_file("/nonexistent/curves.json"); }) == invalid);

  const auto set = io::parse_curves(R"({"curves": [{"name": "t", "vertices": [[0,0,0],[1,0,0],[0,1e300,0]]}]})");
  CHECK(io::find_curve(set, "t").size() == 3);
  CHECK(error_kind([&] { io::find_curve(set, "missing"); }) == invalid);
}

TEST_CASE("chain files") {
  const std::string text =
      R"({"points": [[0,0,0],[1,0,0],[0,1,0]], "chains": [{"name": "tri", "edges": [[0,1,2],[1,2,2],[2,0,2]]}]})";
  const auto set = io::parse_chains(text);
  REQUIRE(set.chains.size() == 1);
  CHECK(set.points.size() == 3);
  CHECK(is_closed(io::find_chain(set, "tri")));
  CHECK(io::find_chain(set, "tri").edges()[1] == Edge{1, 2, 2});

  const auto again = io::parse_chains(io::write_chains(set));
  CHECK(io::write_chains(again) == io::write_chains(set));

  CHECK(error_kind([] { io::parse_chains(R"({"points": [[0,0,0]], "chains": [{"name": "x", "edges": [[0,5,1]]}]})"); }) ==
        invalid);
  CHECK(error_kind([] { io::parse_chains(R"({"points": [[0,0,0],[1,1,1]], "chains": [{"name": "x", "edges": [[0,1,1.5]]}]})"); }) ==
        invalid);
  CHECK(error_kind([] { io::parse_chains(R"({"points": [[0,0,0],[1,1,1]], "chains": [{"name": "x", "edges": [[-1,1,1]]}]})"); }) ==
        invalid);
  CHECK(error_kind([] { io::parse_chains(R"({"chains": []})"); }) == invalid);
  CHECK(error_kind([&] { io::find_chain(set, "nope"); }) == invalid);
}

TEST_CASE("generators") {
  const auto hopf = io::hopf_link(64);
  REQUIRE(hopf.size() == 2);
  CHECK(hopf[0].curve.size() == 64);
  CHECK(hopf[0].curve.vertex(16).y == doctest::Approx(1.0));
  CHECK(hopf[1].curve.vertex(0) == Point3d{2, 0, 0});
  CHECK(hopf[1].curve.vertex(32).x == doctest::Approx(0.0));

  CHECK(io::write_curves(io::random_link(1, 50)) == io::write_curves(io::random_link(1, 50)));
  CHECK(io::write_curves(io::random_link(1, 50)) != io::write_curves(io::random_link(2, 50)));

  const auto torus = io::torus_link(3, 60);
  for (const auto& c : torus) {
    for (const auto& v : c.curve.vertices()) {
      const double rho = std::hypot(v.x, v.y);
      CHECK(std::hypot(rho - 2, v.z) == doctest::Approx(1.0));
    }
  }
  CHECK(oracle::linking_by_projection(torus[0].curve, torus[1].curve) == 3);

  const auto tre = io::trefoil(12);
  CHECK(tre[0].name == "trefoil");
  CHECK(error_kind([] { io::hopf_link(2); }) == static_cast<int>(ErrorKind::curve_too_small));
  CHECK(error_kind([] { io::torus_link(0, 10); }) == invalid);
}

TEST_CASE("bench rows and CSV") {
  io::BenchConfig config;
  config.min_n = 8;
  config.max_n = 64;
  const auto rows = io::run_bench(config);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    CHECK(r.value == 1);
    CHECK(r.certified);
    CHECK(r.pairs == r.n * r.m);
    CHECK(r.bound_u <= static_cast<double>(r.pairs) * 120.690);
  }
  // Roughly linear growth: the per-pair budget settles.
  const double early = rows[2].bound_u / static_cast<double>(rows[2].pairs);
  const double late = rows[3].bound_u / static_cast<double>(rows[3].pairs);
  CHECK(std::abs(late / early - 1) < 0.05);

  std::ostringstream out;
  io::write_bench_csv(out, rows);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,m,pairs,value,bound_u,certified,elapsed_ms");
  int lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
  }
  CHECK(lines == 4);
}

}  // TEST_SUITE
