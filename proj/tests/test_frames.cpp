#include <cmath>
#include <random>

#include <doctest.h>

#include "gathersim/frames.hpp"

using namespace gathersim;

TEST_CASE("to_local translates, rotates by the inverse deviation, and scales") {
  // Frozen: origin (1,1), deviation pi/2, scale 2 sees (2,1) at local (0,-2).
  const LocalFrame frame{GlobalPoint{1.0, 1.0}, 0.5 * kPi, 2.0};
  const LocalPoint q = to_local(frame, GlobalPoint{2.0, 1.0});
  CHECK(std::abs(q.x - 0.0) <= 1e-12);
  CHECK(q.y == doctest::Approx(-2.0).epsilon(1e-12));

  // A robot always sees itself at its local origin.
  const LocalPoint self = to_local(frame, frame.origin);
  CHECK(self.x == 0.0);
  CHECK(self.y == 0.0);
}

TEST_CASE("to_global inverts to_local within 1e-12") {
  std::mt19937_64 rng(42u);
  std::uniform_real_distribution<double> coord(-100.0, 100.0);
  std::uniform_real_distribution<double> dev(-kPi, kPi);
  std::uniform_real_distribution<double> scale(0.5, 2.0);
  for (int i = 0; i < 10000; ++i) {
    const LocalFrame frame{GlobalPoint{coord(rng), coord(rng)}, dev(rng), scale(rng)};
    const GlobalPoint p{coord(rng), coord(rng)};
    const GlobalPoint back = to_global(frame, to_local(frame, p));
    CHECK(std::abs(back.x - p.x) <= 1e-12);
    CHECK(std::abs(back.y - p.y) <= 1e-12);
  }
}

TEST_CASE("local observations: direction shifts by -deviation, length scales") {
  std::mt19937_64 rng(43u);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  std::uniform_real_distribution<double> dev(-kPi, kPi);
  std::uniform_real_distribution<double> scale(0.5, 2.0);
  for (int i = 0; i < 2000; ++i) {
    const LocalFrame frame{GlobalPoint{coord(rng), coord(rng)}, dev(rng), scale(rng)};
    GlobalPoint p{coord(rng), coord(rng)};
    if (p == frame.origin) {
      continue;
    }
    const LocalPoint q = to_local(frame, p);
    const double want = normalize_angle(argum(p - frame.origin).value() - frame.deviation);
    const double got = argum(q).value();
    CHECK(std::abs(normalize_signed_angle(got - want)) <= 1e-9);
    CHECK(norm(q) == doctest::Approx(frame.scale * norm(p - frame.origin)).epsilon(1e-12));
  }
}

TEST_CASE("deviation_range is the closed symmetric interval") {
  const AngularInterval arc = deviation_range({CompassMode::Dynamic, kPi / 6.0});
  CHECK(arc.contains(Angle(kPi / 6.0)));
  CHECK(arc.contains(Angle(-kPi / 6.0)));
  CHECK(arc.contains(Angle(0.0)));
  CHECK_FALSE(arc.contains(Angle(kPi / 6.0 + 1e-6)));
  CHECK_FALSE(arc.contains(Angle(-kPi / 6.0 - 1e-6)));
  CHECK(arc.span() == doctest::Approx(kPi / 3.0));

  SUBCASE("bound zero is the single perfect compass") {
    const AngularInterval zero = deviation_range({CompassMode::Static, 0.0});
    CHECK(zero.contains(Angle(0.0)));
    CHECK_FALSE(zero.contains(Angle(1e-6)));
    CHECK_FALSE(zero.empty());
  }

  SUBCASE("bound pi is the full circle") {
    const AngularInterval full = deviation_range({CompassMode::Dynamic, kPi});
    CHECK(full.is_full());
    CHECK(full.contains(Angle(2.5)));
  }

  SUBCASE("bounds outside [0, pi] are rejected") {
    CHECK_THROWS_AS(deviation_range({CompassMode::Static, -0.1}), std::invalid_argument);
    CHECK_THROWS_AS(deviation_range({CompassMode::Static, kPi + 0.1}), std::invalid_argument);
  }
}
