#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "risplace/errors.hpp"
#include "risplace/placement.hpp"

using namespace risplace;
using namespace risplace::placement;
using geometry::LinkGeometry;
using geometry::RisSpec;

namespace {

const antenna::RadioConfig kRadio;
const double kLambda = kRadio.wavelength();
const antenna::AntennaSpec kTx;
const antenna::AntennaSpec kRx{0.03, 0.7};
const RisSpec kSmall = RisSpec::square(0.012, kLambda / 2.0);
const RisSpec kLarge{kLambda / 2.0, kLambda / 2.0, 8000, 3000, 0.9};

LinkGeometry street(double rh, double ys, double ht, double hr) {
  LinkGeometry g;
  g.tx_rx_horizontal = rh;
  g.lateral_offset = ys;
  g.tx_height = ht;
  g.rx_height = hr;
  return g;
}

// d/dx of r1^2 r2^2 divided by 2, written directly from the distances.
double stationarity(const LinkGeometry& g, double x) {
  const double ys2 = g.lateral_offset * g.lateral_offset;
  const double dt = g.ris_height - g.tx_height;
  const double dr = g.ris_height - g.rx_height;
  const double r1sq = x * x + dt * dt + ys2;
  const double r2sq = (g.tx_rx_horizontal - x) * (g.tx_rx_horizontal - x) + dr * dr + ys2;
  return x * r2sq - (g.tx_rx_horizontal - x) * r1sq;
}

}  // namespace

TEST_CASE("small-surface cubic is the stationarity condition of the distance product") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const auto g = street(10 + 90 * u(rng), 1 + 30 * u(rng), 1 + 10 * u(rng), 1 + 10 * u(rng));
    const auto k = small_ris_cubic(g);
    for (double x : {0.0, 0.3 * g.tx_rx_horizontal, 1.7 * g.tx_rx_horizontal}) {
      CHECK(k(x) == doctest::Approx(3.0 * stationarity(g, x)).epsilon(1e-10).scale(1.0));
    }
    CHECK(k.a > 0.0);
    CHECK(k.d < 0.0);
  }
}

TEST_CASE("equal heights put a root at mid-span") {
  for (double ys : {1.0, 5.0, 20.0}) {
    const auto g = street(80, ys, 4, 4);
    const auto k = small_ris_cubic(g);
    const auto r = numerics::solve_cubic(k.a, k.b, k.c, k.d);
    const bool found = std::any_of(r.roots.begin(), r.roots.end(),
                                   [](double x) { return std::abs(x - 40.0) <= 1e-9 * 80.0; });
    CHECK(found);
  }
}

TEST_CASE("discriminant flips sign once as the offset grows") {
  const auto g = street(80, 5, 6, 3);
  std::vector<double> offsets;
  for (double ys = 1.0; ys <= 40.0; ys += 0.05) offsets.push_back(ys);
  const auto sweep = discriminant_sweep(g, offsets);
  int changes = 0;
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    changes += (sweep[i].discriminant > 0.0) != (sweep[i - 1].discriminant > 0.0) ? 1 : 0;
  }
  CHECK(changes == 1);
  CHECK(sweep.front().discriminant > 0.0);
  CHECK(sweep.back().discriminant < 0.0);
  CHECK_THROWS_AS(discriminant_sweep(g, std::vector<double>{}), ArgumentError);
}

TEST_CASE("root count follows the discriminant for placement cubics") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const auto g = street(10 + 90 * u(rng), 1 + 30 * u(rng), 1 + 10 * u(rng), 1 + 10 * u(rng));
    const auto k = small_ris_cubic(g);
    const auto r = numerics::solve_cubic(k.a, k.b, k.c, k.d);
    CHECK(r.roots.size() == (k.discriminant() > 0.0 ? 3u : 1u));
  }
}

TEST_CASE("close to the street the taller end wins") {
  const auto s = solve_small(street(80, 5, 6, 3), kSmall, kRadio, kTx, kRx);
  REQUIRE(s.stationary.size() == 3);
  CHECK(s.stationary[0].kind == Stationary::LocalMax);
  CHECK(s.stationary[1].kind == Stationary::LocalMin);
  CHECK(s.stationary[2].kind == Stationary::LocalMax);
  CHECK(s.r1h == s.stationary[0].r1h);
  CHECK(s.r1h < 40.0);
  CHECK_FALSE(s.endpoint_optimum);
  CHECK(s.discriminant.value() > 0.0);

  const auto m = solve_small(street(80, 5, 3, 6), kSmall, kRadio, kTx, kRx);
  CHECK(m.r1h == doctest::Approx(80.0 - s.r1h).epsilon(1e-9));
  CHECK(m.snr_db == doctest::Approx(s.snr_db).epsilon(1e-12));
}

TEST_CASE("far from the street the optimum moves to mid-span") {
  const auto s = solve_small(street(80, 45, 6, 3), kSmall, kRadio, kTx, kRx);
  REQUIRE(s.stationary.size() == 1);
  CHECK(s.stationary[0].kind == Stationary::LocalMax);
  CHECK(s.discriminant.value() < 0.0);
  CHECK(std::abs(s.r1h - 40.0) < 5.0);
}

TEST_CASE("equal heights give two equal maxima and the nearer one is reported") {
  const auto s = solve_small(street(80, 5, 3, 3), kSmall, kRadio, kTx, kRx);
  REQUIRE(s.stationary.size() == 3);
  CHECK(s.stationary[1].r1h == doctest::Approx(40.0).epsilon(1e-12));
  CHECK(s.stationary[0].snr_db == doctest::Approx(s.stationary[2].snr_db).epsilon(1e-9));
  CHECK(s.r1h == s.stationary[0].r1h);
}

TEST_CASE("a domain that excludes every root gives an endpoint optimum") {
  const auto s = solve_small(street(80, 5, 6, 3), kSmall, kRadio, kTx, kRx, Domain{30.0, 35.0});
  CHECK(s.endpoint_optimum);
  CHECK((s.r1h == 30.0 || s.r1h == 35.0));
  CHECK_THROWS_AS(solve_small(street(80, 5, 6, 3), kSmall, kRadio, kTx, kRx, Domain{3.0, 3.0}),
                  ArgumentError);
}

TEST_CASE("regime violation when the surface is not small against the footprint") {
  const auto ok = solve_small(street(30, 15, 6, 3), kSmall, kRadio, kTx, kRx);
  CHECK_FALSE(ok.regime_violation);
  const auto big = RisSpec::square(0.3, kLambda / 2.0);
  const auto bad = solve_small(street(30, 5, 6, 3), big, kRadio, kTx, kRx);
  CHECK(bad.regime_violation);
  CHECK(bad.area_ratio > geometry::kDefaultSmallRisRatio);
}

TEST_CASE("analytic small-surface optimum is never beaten by the oracle") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 30; ++i) {
    const auto g = street(20 + 60 * u(rng), 2 + 25 * u(rng), 2 + 8 * u(rng), 2 + 8 * u(rng));
    const auto s = solve_small(g, kSmall, kRadio, kTx, kRx);
    const auto o = solve_numeric(g, kSmall, kRadio, kTx, kRx, linkbudget::Mode::Small, {},
                                 {500, 1e-6, 1});
    CHECK(s.snr_db >= o.value - 0.05);
  }
}

TEST_CASE("large-surface quadratic") {
  const auto g = street(20, 10, 6, 3);
  const double r = solve_large(g);
  CHECK(r == doctest::Approx(27.24224619778453).epsilon(1e-12));
  // Independent closed form of the larger root.
  const double rh = 20.0;
  const double b = 36.0 - rh * rh - 81.0;
  const double c = -rh * (100.0 + 36.0);
  CHECK(r == doctest::Approx((-b + std::sqrt(b * b - 4.0 * rh * c)) / (2.0 * rh)).epsilon(1e-12));
  const auto roots = large_ris_roots(g);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] < 0.0);
  CHECK(rh * r * r + b * r + c == doctest::Approx(0.0).scale(rh * r * r));
}

TEST_CASE("large-surface root maximises the distance-ratio objective") {
  const auto g = street(20, 10, 6, 3);
  const auto o = solve_numeric([&](double x) { return large_ris_objective_db(g, x); },
                               default_domain(g), {2000, 1e-9, 1});
  CHECK(o.argmax == doctest::Approx(solve_large(g)).epsilon(1e-6));
}

TEST_CASE("large-surface placement record") {
  const auto g = street(20, 10, 6, 3);
  const auto p = solve_large_placement(g, kLarge, kRadio, kTx, {0.01, 0.7});
  CHECK(p.r1h == solve_large(g));
  CHECK(p.regime == geometry::Regime::LargeRis);
  CHECK_FALSE(p.regime_violation);
  CHECK(p.area_ratio > 1.0);
  CHECK(p.stationary.size() == 2);
  CHECK_FALSE(p.stationary[0].in_domain);
  CHECK(p.stationary[1].kind == Stationary::LocalMax);
  const auto clipped = solve_large_placement(g, kLarge, kRadio, kTx, {0.01, 0.7}, Domain{0, 20});
  CHECK(clipped.endpoint_optimum);
  CHECK(clipped.r1h == 20.0);
}

TEST_CASE("numeric oracle recovers an injected maximum") {
  const auto m = solve_numeric([](double x) { return 5.0 - (x - 12.345) * (x - 12.345); },
                               Domain{0.0, 40.0}, {500, 1e-6, 1});
  CHECK(std::abs(m.argmax - 12.345) < 1e-6);
  CHECK(m.value == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("numeric oracle skips points where the model is undefined") {
  const auto m = solve_numeric(
      [](double x) {
        if (x < 10.0) throw DomainError("undefined here");
        return -x;
      },
      Domain{0.0, 40.0}, {401, 1e-6, 1});
  CHECK(m.argmax == doctest::Approx(10.0).epsilon(1e-6));
}

TEST_CASE("numeric oracle over the link models") {
  const auto g = street(80, 30, 6, 3);
  const auto small = solve_numeric(g, kSmall, kRadio, kTx, kRx, linkbudget::Mode::Small);
  CHECK(small.argmax ==
        doctest::Approx(solve_small(g, kSmall, kRadio, kTx, kRx).r1h).epsilon(1e-6));
  CHECK_THROWS_AS(solve_numeric(g, kSmall, kRadio, kTx, kRx, linkbudget::Mode::Auto),
                  ArgumentError);
  const auto exact = solve_numeric(g, kSmall, kRadio, kTx, kRx, linkbudget::Mode::Exact,
                                   Domain{0.0, 80.0}, {41, 1e-3, 1});
  CHECK(std::abs(exact.argmax - small.argmax) < 0.02 * 80.0);
}
