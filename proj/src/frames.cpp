#include "gathersim/frames.hpp"

#include <cmath>
#include <stdexcept>

namespace gathersim {

LocalPoint to_local(const LocalFrame& frame, GlobalPoint p) {
  const double dx = p.x - frame.origin.x;
  const double dy = p.y - frame.origin.y;
  const double c = std::cos(frame.deviation);
  const double s = std::sin(frame.deviation);
  return {frame.scale * (c * dx + s * dy), frame.scale * (-s * dx + c * dy)};
}

GlobalPoint to_global(const LocalFrame& frame, LocalPoint q) {
  const double c = std::cos(frame.deviation);
  const double s = std::sin(frame.deviation);
  const double inv = 1.0 / frame.scale;
  return {frame.origin.x + inv * (c * q.x - s * q.y),
          frame.origin.y + inv * (s * q.x + c * q.y)};
}

AngularInterval deviation_range(const CompassSpec& spec) {
  if (!(spec.bound >= 0.0 && spec.bound <= kPi)) {
    throw std::invalid_argument("deviation_range: bound must lie in [0, pi]");
  }
  if (spec.bound == kPi) {
    return AngularInterval::full_circle();
  }
  return AngularInterval(Angle(-spec.bound), Angle(spec.bound), true, true);
}

}  // namespace gathersim
