// Local coordinate frames: each robot observes the world translated to its
// own position, rotated by the inverse of its compass deviation, and scaled
// by a private unit length.  The adversary controls deviation and scale.
#pragma once

#include "gathersim/geometry.hpp"

namespace gathersim {

// Static compasses fix each robot's deviation once at the start of a run;
// dynamic compasses let the adversary redraw it at every activation, before
// the robot looks.
enum class CompassMode { Static, Dynamic };

struct CompassSpec {
  CompassMode mode = CompassMode::Static;
  double bound = 0.0;  // admissible |deviation|, in [0, pi]
};

// Snapshot of one robot's frame for a single look-compute-move cycle.
struct LocalFrame {
  GlobalPoint origin;      // the robot's position when the frame was taken
  double deviation = 0.0;  // compass deviation in (-pi, pi]
  double scale = 1.0;      // private unit length, > 0
};

// Global -> local: translate by -origin, rotate by -deviation, then scale.
LocalPoint to_local(const LocalFrame& frame, GlobalPoint p);

// Local -> global: exact inverse of to_local.
GlobalPoint to_global(const LocalFrame& frame, LocalPoint q);

// The closed set of deviations the adversary may draw from: [-bound, bound]
// as an angular interval, or the full circle when bound == pi.
AngularInterval deviation_range(const CompassSpec& spec);

}  // namespace gathersim
