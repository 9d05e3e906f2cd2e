// The three gathering decision rules, expressed as angular region tables over
// the direction of the observed peer in the local frame.  Each rule maps the
// observation to a state (Gathered / Approach / Rotate / Wait / Terminated)
// and a local target point; the tables partition [0, 2*pi) exactly.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gathersim/geometry.hpp"

namespace gathersim {

// Named after the scheduler/compass pairing each rule is built for:
// semi-synchronous with static compasses, semi-synchronous with dynamic
// compasses, and asynchronous with dynamic compasses.
enum class AlgorithmId { SemiSyncStatic, SemiSyncDynamic, AsyncDynamic };

// Largest compass bound each rule is designed to tolerate (exclusive).
double validity_bound(AlgorithmId id);

// Short lowercase tag used in traces and on the command line: ss / sd / ad.
const char* algorithm_tag(AlgorithmId id);
std::optional<AlgorithmId> parse_algorithm_tag(const std::string& tag);

enum class RobotState : char {
  Gathered = 'G',
  Approach = 'A',
  Rotate = 'R',
  Wait = 'W',
  Terminated = 'T',
};

char state_letter(RobotState s);
std::optional<RobotState> parse_state_letter(char c);

struct StatePair {
  RobotState first = RobotState::Wait;
  RobotState second = RobotState::Wait;
  friend bool operator==(StatePair a, StatePair b) {
    return a.first == b.first && a.second == b.second;
  }
  friend bool operator!=(StatePair a, StatePair b) { return !(a == b); }
};

enum class ActionKind {
  MoveToObserved,      // head to the observed peer position
  MoveOppositeOnAxis,  // head to (-|p|, 0) on the own x-axis
  RotateBy,            // head to the observation rotated by rotate_angle
  Stay,                // do not move
};

struct Region {
  AngularInterval arc;
  RobotState state = RobotState::Wait;
  ActionKind action = ActionKind::Stay;
  double rotate_angle = 0.0;  // used by RotateBy only
};

struct AlgorithmSpec {
  AlgorithmId id = AlgorithmId::SemiSyncStatic;
  double phi = 0.0;
  bool terminate_variant = false;  // co-location decides Terminated instead of Gathered
  std::vector<Region> regions;
};

// Builds the region table for the rule at compass bound phi.  phi outside
// [0, pi] is always rejected; phi at or beyond the rule's validity bound is
// rejected unless allow_out_of_validity is set.  Construction verifies that
// the regions partition the circle and throws std::logic_error otherwise
// (some out-of-validity phi have no consistent table).
AlgorithmSpec region_table(AlgorithmId id, double phi, bool terminate_variant = false,
                           bool allow_out_of_validity = false);

// Deduplicated endpoints of the non-empty table regions, for boundary-probing
// adversaries and partition audits.
std::vector<Angle> region_boundaries(const AlgorithmSpec& alg);

struct Decision {
  RobotState state = RobotState::Wait;
  ActionKind action = ActionKind::Stay;
  LocalPoint target;          // local-frame move target; origin for Stay
  double rotate_angle = 0.0;  // rotation applied when action == RotateBy
};

// Total, deterministic decision for one observation.  The origin decides
// Gathered (or Terminated under the terminate variant); any other point falls
// in exactly one table region.
Decision decide(const AlgorithmSpec& alg, LocalPoint observed);

// Every state the rule can decide while the observed direction ranges over
// the closed arc [center - halfwidth, center + halfwidth].  Directions within
// the snapping tolerance of a sweep endpoint are treated as exactly on it.
std::vector<RobotState> sweep_states(const AlgorithmSpec& alg, Angle center, double halfwidth);

// The state pair a configuration pins down when it does not depend on which
// admissible deviations (|dev| <= bound) the adversary assigns; nullopt when
// some robot's state varies across the deviation sweep.  Co-located robots
// yield the absorbing pair.
std::optional<StatePair> stable_state(const AlgorithmSpec& alg, const Configuration& config,
                                      double bound);

}  // namespace gathersim
