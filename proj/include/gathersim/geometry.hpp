// Planar primitives shared by every other module: strongly tagged 2-D points,
// angles normalized to [0, 2*pi), half-open/closed angular intervals with
// epsilon snapping at their endpoints, rotations, and line intersection.
#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace gathersim {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTau = 2.0 * std::numbers::pi;

// Snapping tolerance applied to angular comparisons at interval endpoints and
// to the parallel test in line_intersection.  Angles closer than this to a
// boundary are treated as exactly on it.
inline constexpr double kAngleEps = 1e-12;

// Points carry a frame tag so global and local coordinates cannot be mixed by
// accident; conversion goes through the frames module only.
template <class Tag>
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  friend bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(Point2 a, Point2 b) { return !(a == b); }
};

template <class Tag>
double norm(Point2<Tag> p) {
  return std::hypot(p.x, p.y);
}

struct GlobalTag;
struct LocalTag;
using GlobalPoint = Point2<GlobalTag>;
using LocalPoint = Point2<LocalTag>;

// Global snapshot at one tick: the positions of the two robots.
struct Configuration {
  GlobalPoint r0;
  GlobalPoint r1;
  GlobalPoint robot(int i) const { return i == 0 ? r0 : r1; }
  friend bool operator==(Configuration a, Configuration b) { return a.r0 == b.r0 && a.r1 == b.r1; }
  friend bool operator!=(Configuration a, Configuration b) { return !(a == b); }
};

// Reduces any radian value into [0, 2*pi).
double normalize_angle(double radians);

// Reduces any radian value into (-pi, pi] (used for compass deviations).
double normalize_signed_angle(double radians);

// An angle normalized to [0, 2*pi).  Plain double inside; the wrapper exists
// so interfaces say which doubles are normalized angles.
class Angle {
 public:
  Angle() = default;
  explicit Angle(double radians) : radians_(normalize_angle(radians)) {}
  double value() const { return radians_; }

  friend bool operator==(Angle a, Angle b) { return a.radians_ == b.radians_; }
  friend bool operator!=(Angle a, Angle b) { return !(a == b); }

 private:
  double radians_ = 0.0;
};

// Direction angle of a nonzero vector, in [0, 2*pi).  The zero vector has no
// direction; passing it throws std::invalid_argument.
template <class Tag>
Angle argum(Point2<Tag> p);

// Counterclockwise rotation of p by omega radians about the origin.
template <class Tag>
Point2<Tag> rotate(Point2<Tag> p, double omega);

// A counterclockwise arc from lower to upper with independently open or
// closed endpoints.  lower == upper denotes a single point when both ends are
// closed and the empty set otherwise; the full circle needs the dedicated
// factory because the endpoint representation cannot express a 2*pi span.
class AngularInterval {
 public:
  AngularInterval(Angle lower, Angle upper, bool lower_closed, bool upper_closed)
      : lower_(lower), upper_(upper), lower_closed_(lower_closed), upper_closed_(upper_closed) {}

  static AngularInterval full_circle() {
    AngularInterval arc(Angle(0.0), Angle(0.0), true, true);
    arc.full_ = true;
    return arc;
  }

  Angle lower() const { return lower_; }
  Angle upper() const { return upper_; }
  bool lower_closed() const { return lower_closed_; }
  bool upper_closed() const { return upper_closed_; }
  bool is_full() const { return full_; }

  // Arc length from lower counterclockwise to upper; 0 for points and the
  // empty set, 2*pi for the full circle.
  double span() const;
  bool empty() const;

  // Membership with kAngleEps snapping: angles within the tolerance of an
  // endpoint are treated as exactly that endpoint before the open/closed
  // flags are consulted.
  bool contains(Angle a) const;

 private:
  Angle lower_;
  Angle upper_;
  bool lower_closed_ = true;
  bool upper_closed_ = true;
  bool full_ = false;
};

// Intersection of the line through p1 with direction angle dir1 and the line
// through p2 with direction dir2.  Directions equal modulo pi (within
// kAngleEps) are parallel -- including coincident lines -- and yield nullopt.
std::optional<GlobalPoint> line_intersection(GlobalPoint p1, double dir1, GlobalPoint p2,
                                             double dir2);

// --- template definitions ---

template <class Tag>
Angle argum(Point2<Tag> p) {
  if (p.x == 0.0 && p.y == 0.0) {
    throw std::invalid_argument("argum: zero vector has no direction");
  }
  return Angle(std::atan2(p.y, p.x));
}

template <class Tag>
Point2<Tag> rotate(Point2<Tag> p, double omega) {
  const double c = std::cos(omega);
  const double s = std::sin(omega);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

}  // namespace gathersim
