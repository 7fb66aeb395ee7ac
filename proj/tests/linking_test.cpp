#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "certilink/detail/fold.hpp"
#include "certilink/errors.hpp"
#include "certilink/io.hpp"
#include "certilink/linking.hpp"
#include "certilink/oracle.hpp"
#include "support.hpp"

using namespace certilink;
using certilink::testing::Gen;
using certilink::testing::u53;

namespace {

const PolygonalCurve& curve(const io::CurveSet& set, std::size_t i) { return set[i].curve; }

std::vector<SegmentPairAngle<double>> all_pairs(const PolygonalCurve& p, const PolygonalCurve& q) {
  std::vector<SegmentPairAngle<double>> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      out.push_back(build_angle(p.vertex(i), p.vertex(i + 1), q.vertex(j), q.vertex(j + 1)));
    }
  }
  return out;
}

int error_kind(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return static_cast<int>(e.kind());
  }
  return -1;
}

}  // namespace

TEST_SUITE("linking") {

TEST_CASE("curve construction") {
  CHECK(error_kind([] { PolygonalCurve({{0, 0, 0}, {1, 0, 0}}); }) ==
        static_cast<int>(ErrorKind::curve_too_small));
  CHECK(error_kind([] { PolygonalCurve({{0, 0, 0}, {1, 0, 0}, {1, 0, 0}}); }) ==
        static_cast<int>(ErrorKind::degenerate_segments));
  CHECK(error_kind([] { PolygonalCurve({{0, 0, 0}, {1, 0, 0}, {0, 0, 0}}); }) ==
        static_cast<int>(ErrorKind::degenerate_segments));
  CHECK(error_kind([] { PolygonalCurve({{0, 0, 0}, {1, 0, 0}, {0, NAN, 0}}); }) ==
        static_cast<int>(ErrorKind::invalid_input));

  const PolygonalCurve c({{0, 0, 0}, {1, 0, 0}, {0, 1, 2}});
  CHECK(c.size() == 3);
  CHECK(c.vertex(3) == c.vertex(0));
  CHECK(c.reversed().vertex(0) == Point3d{0, 1, 2});
  CHECK(c.scaled_pow2(3).vertex(2) == Point3d{0, 8, 16});
  CHECK(c.mirrored().vertex(2) == Point3d{0, 1, -2});
}

TEST_CASE("error budget bookkeeping") {
  ErrorBudget b;
  b.charge(120.5);
  CHECK(b.int_part() == 120);
  CHECK(b.frac_part() == doctest::Approx(0.5));
  CHECK(b.frac_part() >= 0.5);
  b.charge(0.75);
  CHECK(b.int_part() == 121);
  CHECK(b.frac_part() == doctest::Approx(0.25));
  ErrorBudget c;
  c.charge(2.5);
  b.merge(c);
  CHECK(b.int_part() == 123);
  CHECK(b.frac_part() == doctest::Approx(0.75));
  CHECK(b.total() >= 123.75);
  CHECK(ErrorBudget{}.total() == 0.0);
  CHECK_FALSE(b.saturated());

  ErrorBudget big;
  big.charge(1e300);
  CHECK(big.saturated());
  CHECK(std::isinf(big.total()));
  CHECK_FALSE(is_certified(big, u53));

  ErrorBudget edge;
  const auto limit = static_cast<double>(std::floor(3.14159265358979323846 / (2 * u53)));
  edge.charge(limit - 1024);
  CHECK(is_certified(edge, u53));
  edge.charge(2048);
  CHECK_FALSE(is_certified(edge, u53));
}

TEST_CASE("accumulate follows the hand trace") {
  Accumulator<double> acc;
  ErrorBudget budget;
  SegmentPairAngle<double> pair;
  pair.triple = {0, 1, 0};
  pair.sign = PointSign::positive;
  pair.err_bound = 2.829 + 115.032;
  accumulate(acc, pair, budget);
  CHECK(acc.total == AngleTriple<double>{0, 1, 0});
  CHECK(acc.sign == PointSign::positive);
  CHECK(budget.int_part() == 120);
  CHECK(budget.frac_part() == doctest::Approx(0.69).epsilon(1e-9));
}

TEST_CASE("folding k copies of a k-th of a turn gives one turn") {
  for (int k : {3, 4, 5, 7, 16, 100, 1000}) {
    const double a = 2 * std::numbers::pi / k;
    SegmentPairAngle<double> pair;
    pair.triple = normalize(AngleTriple<double>{std::cos(a), std::sin(a), 0});
    pair.sign = point_sign(pair.triple);
    pair.err_bound = bound::triple_add;
    Accumulator<double> acc;
    ErrorBudget budget;
    for (int i = 0; i < k; ++i) accumulate(acc, pair, budget);
    CHECK(acc.total.turns == 1);
    CHECK(std::abs(std::atan2(acc.total.y, acc.total.x)) <= budget.total() * u53);
  }
}

TEST_CASE("empty fold") {
  const auto state = detail::fold_sequential<double>(0, 0, [](std::uint64_t) -> SegmentPairAngle<double> {
    throw std::logic_error("unused");
  });
  CHECK(state.acc.total == zero_angle<double>());
  CHECK(state.acc.total.turns == 0);
  CHECK(state.budget.total() == 0.0);
}

TEST_CASE("known links") {
  const auto unlink = io::unlink(32);
  const auto r0 = linking_number(curve(unlink, 0), curve(unlink, 1));
  CHECK(r0.value == 0);
  CHECK(r0.certified);
  CHECK(r0.pairs == 32 * 32);

  const auto hopf = io::hopf_link(64);
  const auto r1 = linking_number(curve(hopf, 0), curve(hopf, 1));
  CHECK(r1.value == 1);
  CHECK(r1.certified);
  CHECK(std::abs(r1.residual) <= r1.err_bound_u * u53);
  // Every Hopf pair is a-priori admissible.
  CHECK(r1.err_bound_u <= 4096 * bound::a_priori_per_pair);

  const auto torus = io::torus_link(3, 256);
  const auto r3 = linking_number(curve(torus, 0), curve(torus, 1));
  CHECK(r3.value == 3);
  CHECK(r3.certified);
}

TEST_CASE("orientation, symmetry and scaling") {
  const auto torus = io::torus_link(2, 48);
  const auto& a = curve(torus, 0);
  const auto& b = curve(torus, 1);
  const auto base = linking_number(a, b);
  REQUIRE(base.value == 2);
  CHECK(linking_number(b, a).value == 2);
  CHECK(linking_number(a.reversed(), b).value == -2);
  CHECK(linking_number(a, b.reversed()).value == -2);
  CHECK(linking_number(a.reversed(), b.reversed()).value == 2);
  CHECK(linking_number(a.mirrored(), b.mirrored()).value == -2);
  for (int k = -20; k <= 20; k += 4) {
    const auto s = linking_number(a.scaled_pow2(k), b.scaled_pow2(k));
    CHECK(s.value == base.value);
    CHECK(s.err_bound_u == base.err_bound_u);
  }
}

TEST_CASE("pair order does not change the certified value") {
  const auto hopf = io::hopf_link(24);
  auto pairs = all_pairs(curve(hopf, 0), curve(hopf, 1));
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(pairs.begin(), pairs.end(), rng);
    const auto state =
        detail::fold_sequential<double>(0, pairs.size(), [&](std::uint64_t k) { return pairs[k]; });
    CHECK(is_certified(state.budget, u53));
    CHECK(state.acc.total.turns == 1);
  }
}

TEST_CASE("parallel folding matches the sequential reference") {
  const auto torus = io::torus_link(4, 96);
  const auto seq = linking_number(curve(torus, 0), curve(torus, 1));
  for (unsigned threads : {2u, 3u, 8u}) {
    LinkOptions opts;
    opts.threads = threads;
    const auto par = linking_number(curve(torus, 0), curve(torus, 1), opts);
    CHECK(par.value == seq.value);
    CHECK(par.certified);
    // Each extra chunk costs one more triple addition.
    CHECK(par.err_bound_u <= seq.err_bound_u + threads * (bound::triple_add + 1));
  }
}

TEST_CASE("single precision and exact-style modes") {
  const auto hopf = io::hopf_link(32);
  LinkOptions single;
  single.precision = Precision::single_precision;
  const auto r = linking_number(curve(hopf, 0), curve(hopf, 1), single);
  CHECK(r.value == 1);
  CHECK(r.certified);
  CHECK(r.unit_roundoff == 0x1p-24);

  LinkOptions exact;
  exact.mode = LinkMode::exact_style;
  const auto e = linking_number(curve(hopf, 0), curve(hopf, 1), exact);
  CHECK(e.value == 1);
  CHECK_FALSE(e.certified);
  CHECK(e.err_bound_u == 0.0);
}

TEST_CASE("intersecting curves are reported") {
  const PolygonalCurve a({{0, 0, 0}, {2, 0, 0}, {2, 2, 0}, {0, 2, 0}});
  const PolygonalCurve b({{1, 0, 0}, {1, -1, 1}, {1, -1, -1}});
  CHECK(error_kind([&] { linking_number(a, b); }) == static_cast<int>(ErrorKind::intersection_detected));
  const PolygonalCurve c({{0, 0, 0}, {-1, 0, 1}, {-1, 0, -1}});
  CHECK(error_kind([&] { linking_number(a, c); }) == static_cast<int>(ErrorKind::degenerate_segments));
}

TEST_CASE("writhe of planar polygons is zero") {
  for (std::size_t n : {8u, 64u, 256u}) {
    const auto w = writhe(io::regular_polygon(n));
    CHECK(std::abs(w.value) <= w.err_bound_u * u53);
    CHECK(w.err_bound_u * u53 < 1e-9);
    CHECK(w.certified);
    CHECK(w.pairs == n * (n - 3) / 2);
  }
}

TEST_CASE("writhe of the twelve-segment trefoil") {
  const auto t = io::trefoil(12)[0].curve;
  const auto w = writhe(t);
  // Independent 50-digit evaluation of the pair sum.
  const double frozen = -3.3606224801367389;
  CHECK(std::abs(w.value - frozen) <= w.err_bound_u * u53 + 1e-15);
  const double quad = oracle::to_double(oracle::writhe_by_quadrature(t));
  CHECK(std::abs(w.value - quad) <= w.err_bound_u * u53 + 1e-15);

  const auto m = writhe(t.mirrored());
  CHECK(std::abs(m.value + w.value) <= (w.err_bound_u + m.err_bound_u) * u53);
  const auto r = writhe(t.reversed());
  CHECK(std::abs(r.value - w.value) <= (w.err_bound_u + r.err_bound_u) * u53);
  const auto s = writhe(t.scaled_pow2(-7));
  CHECK(s.value == w.value);
  CHECK(s.err_bound_u == w.err_bound_u);

  LinkOptions opts;
  opts.threads = 3;
  const auto par = writhe(t, opts);
  CHECK(std::abs(par.value - w.value) <= (w.err_bound_u + par.err_bound_u) * u53);
}

}  // TEST_SUITE
