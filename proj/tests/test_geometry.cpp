#include <cmath>
#include <random>

#include <doctest.h>

#include "gathersim/geometry.hpp"

using namespace gathersim;

TEST_CASE("normalize_angle reduces into [0, 2pi)") {
  CHECK(normalize_angle(0.0) == 0.0);
  CHECK(normalize_angle(kTau) == 0.0);
  CHECK(normalize_angle(2.5 * kPi) == doctest::Approx(0.5 * kPi).epsilon(1e-15));
  CHECK(normalize_angle(-0.5 * kPi) == doctest::Approx(1.5 * kPi).epsilon(1e-15));
  CHECK(normalize_angle(-5.0 * kTau) == 0.0);
  // A tiny negative input must not round up to exactly 2*pi.
  CHECK(normalize_angle(-1e-18) < kTau);
  CHECK(normalize_angle(1e300) >= 0.0);
  CHECK(normalize_angle(1e300) < kTau);
}

TEST_CASE("normalize_signed_angle reduces into (-pi, pi]") {
  CHECK(normalize_signed_angle(kPi) == doctest::Approx(kPi));
  CHECK(normalize_signed_angle(-kPi) == doctest::Approx(kPi));
  CHECK(normalize_signed_angle(1.5 * kPi) == doctest::Approx(-0.5 * kPi));
  CHECK(normalize_signed_angle(0.25 * kPi) == doctest::Approx(0.25 * kPi));
}

TEST_CASE("argum gives the direction of nonzero vectors") {
  CHECK(argum(GlobalPoint{1.0, 0.0}).value() == 0.0);
  CHECK(argum(GlobalPoint{0.0, 1.0}).value() == doctest::Approx(0.5 * kPi));
  CHECK(argum(GlobalPoint{-1.0, 0.0}).value() == doctest::Approx(kPi));
  CHECK(argum(GlobalPoint{0.0, -1.0}).value() == doctest::Approx(1.5 * kPi));
  CHECK(argum(LocalPoint{1.0, 1.0}).value() == doctest::Approx(0.25 * kPi));
  CHECK_THROWS_AS(argum(GlobalPoint{0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("rotate is a counterclockwise rotation") {
  const GlobalPoint e1{1.0, 0.0};
  const GlobalPoint up = rotate(e1, 0.5 * kPi);
  CHECK(std::abs(up.x) <= 1e-15);
  CHECK(up.y == doctest::Approx(1.0));

  // Frozen: rotating (0, 1) by 5*pi/8.
  const LocalPoint r = rotate(LocalPoint{0.0, 1.0}, 5.0 * kPi / 8.0);
  CHECK(r.x == doctest::Approx(-0.9238795325112867).epsilon(1e-12));
  CHECK(r.y == doctest::Approx(-0.3826834323650898).epsilon(1e-12));
}

TEST_CASE("rotate composes additively and preserves norms") {
  std::mt19937_64 rng(20260824u);
  std::uniform_real_distribution<double> coord(-50.0, 50.0);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  for (int i = 0; i < 2000; ++i) {
    const GlobalPoint p{coord(rng), coord(rng)};
    const double a = angle(rng), b = angle(rng);
    const GlobalPoint once = rotate(p, a + b);
    const GlobalPoint twice = rotate(rotate(p, a), b);
    CHECK(std::abs(once.x - twice.x) <= 1e-9);
    CHECK(std::abs(once.y - twice.y) <= 1e-9);
    CHECK(norm(rotate(p, a)) == doctest::Approx(norm(p)).epsilon(1e-12));
  }
}

TEST_CASE("angular interval membership honors open and closed endpoints") {
  const AngularInterval arc(Angle(kPi), Angle(1.5 * kPi), false, true);
  CHECK_FALSE(arc.contains(Angle(kPi)));
  CHECK(arc.contains(Angle(1.25 * kPi)));
  CHECK(arc.contains(Angle(1.5 * kPi)));
  CHECK_FALSE(arc.contains(Angle(1.5 * kPi + 1e-6)));
  CHECK(arc.span() == doctest::Approx(0.5 * kPi));

  SUBCASE("angles within the tolerance snap onto the endpoints") {
    CHECK_FALSE(arc.contains(Angle(kPi + 1e-13)));      // snapped to the open end
    CHECK(arc.contains(Angle(1.5 * kPi + 1e-13)));      // snapped to the closed end
    CHECK_FALSE(arc.contains(Angle(kPi - 1e-13)));      // snapped from below
    CHECK(arc.contains(Angle(kPi + 1e-9)));             // outside the tolerance
  }
}

TEST_CASE("angular intervals wrap through zero") {
  // (7*pi/4, 2*pi]: the upper endpoint normalizes to angle 0.
  const AngularInterval arc(Angle(1.75 * kPi), Angle(kTau), false, true);
  CHECK(arc.span() == doctest::Approx(0.25 * kPi));
  CHECK(arc.contains(Angle(1.9 * kPi)));
  CHECK(arc.contains(Angle(0.0)));
  CHECK_FALSE(arc.contains(Angle(0.1)));
  CHECK_FALSE(arc.contains(Angle(1.75 * kPi)));

  const AngularInterval wide(Angle(1.5 * kPi), Angle(0.5 * kPi), true, true);
  CHECK(wide.span() == doctest::Approx(kPi));
  CHECK(wide.contains(Angle(0.0)));
  CHECK(wide.contains(Angle(1.5 * kPi)));
  CHECK(wide.contains(Angle(0.5 * kPi)));
  CHECK_FALSE(wide.contains(Angle(kPi)));
}

TEST_CASE("degenerate intervals: points, empty sets, the full circle") {
  const AngularInterval point(Angle(1.0), Angle(1.0), true, true);
  CHECK_FALSE(point.empty());
  CHECK(point.span() == 0.0);
  CHECK(point.contains(Angle(1.0)));
  CHECK_FALSE(point.contains(Angle(1.0 + 1e-6)));

  const AngularInterval none(Angle(1.0), Angle(1.0), false, true);
  CHECK(none.empty());
  CHECK_FALSE(none.contains(Angle(1.0)));

  const AngularInterval full = AngularInterval::full_circle();
  CHECK(full.is_full());
  CHECK(full.span() == doctest::Approx(kTau));
  CHECK(full.contains(Angle(0.0)));
  CHECK(full.contains(Angle(3.0)));
}

TEST_CASE("line_intersection solves the generic case") {
  // Frozen: x-axis and the 45-degree line through (0, 1) meet at (-1, 0).
  const auto hit = line_intersection(GlobalPoint{0.0, 0.0}, 0.0, GlobalPoint{0.0, 1.0}, 0.25 * kPi);
  REQUIRE(hit.has_value());
  CHECK(hit->x == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(hit->y) <= 1e-12);
}

TEST_CASE("line_intersection reports parallel directions") {
  CHECK_FALSE(line_intersection(GlobalPoint{0.0, 0.0}, 0.0, GlobalPoint{0.0, 1.0}, 0.0).has_value());
  CHECK_FALSE(line_intersection(GlobalPoint{0.0, 0.0}, 0.3, GlobalPoint{2.0, 1.0}, 0.3 + kPi).has_value());
  // Coincident lines count as parallel.
  CHECK_FALSE(line_intersection(GlobalPoint{0.0, 0.0}, 0.25 * kPi, GlobalPoint{1.0, 1.0}, 0.25 * kPi).has_value());
}

TEST_CASE("line_intersection points lie on both lines") {
  std::mt19937_64 rng(7u);
  std::uniform_real_distribution<double> coord(-20.0, 20.0);
  std::uniform_real_distribution<double> dir(0.0, kTau);
  int produced = 0;
  for (int i = 0; i < 2000; ++i) {
    const GlobalPoint p1{coord(rng), coord(rng)};
    const GlobalPoint p2{coord(rng), coord(rng)};
    const double d1 = dir(rng), d2 = dir(rng);
    const auto hit = line_intersection(p1, d1, p2, d2);
    if (!hit.has_value()) {
      continue;
    }
    ++produced;
    // Signed distance of the point from each line through p_i with direction d_i.
    const double off1 = -(hit->x - p1.x) * std::sin(d1) + (hit->y - p1.y) * std::cos(d1);
    const double off2 = -(hit->x - p2.x) * std::sin(d2) + (hit->y - p2.y) * std::cos(d2);
    CHECK(std::abs(off1) <= 1e-7);
    CHECK(std::abs(off2) <= 1e-7);
  }
  CHECK(produced > 1900);
}
