#include "gathersim/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gathersim {

namespace {

// Strict-interior membership for a closed sweep [start, start + span]; an
// angle snapped onto either sweep endpoint does not count.
bool sweep_interior_contains(Angle start, double span, Angle a) {
  double off = normalize_angle(a.value() - start.value());
  if (off >= kTau - kAngleEps) {
    off = 0.0;
  }
  if (off <= kAngleEps || std::abs(off - span) <= kAngleEps) {
    return false;
  }
  return off < span;
}

// Whether a table region and a closed sweep arc share at least one angle.
// Either a sweep endpoint lies in the region, or a region endpoint lies in
// the sweep's interior (in which case a neighborhood just inside the region
// is shared); disjoint arcs satisfy neither.
bool region_meets_sweep(const Region& region, Angle start, double span) {
  const AngularInterval& arc = region.arc;
  if (arc.empty()) {
    return false;
  }
  if (arc.is_full() || span >= kTau) {
    return true;
  }
  const Angle end(start.value() + span);
  if (arc.contains(start) || arc.contains(end)) {
    return true;
  }
  return sweep_interior_contains(start, span, arc.lower()) ||
         sweep_interior_contains(start, span, arc.upper());
}

void append_region(AlgorithmSpec& alg, double lo, double hi, bool lo_closed, bool hi_closed,
                   RobotState state, ActionKind action, double rotate_angle = 0.0) {
  alg.regions.push_back(
      {AngularInterval(Angle(lo), Angle(hi), lo_closed, hi_closed), state, action, rotate_angle});
}

// Partition audit: every probe angle must fall in exactly one region.  Probes
// are all region endpoints, all region midpoints, and a coarse grid offset by
// an irrational constant so it never sits on a boundary by accident.
void verify_partition(const AlgorithmSpec& alg) {
  std::vector<Angle> probes;
  for (const Region& region : alg.regions) {
    probes.push_back(region.arc.lower());
    probes.push_back(region.arc.upper());
    if (!region.arc.empty()) {
      probes.push_back(Angle(region.arc.lower().value() + 0.5 * region.arc.span()));
    }
  }
  constexpr int kGrid = 256;
  for (int i = 0; i < kGrid; ++i) {
    probes.push_back(Angle(kTau * i / kGrid + 0.1234567891));
  }
  for (Angle probe : probes) {
    int hits = 0;
    for (const Region& region : alg.regions) {
      hits += region.arc.contains(probe) ? 1 : 0;
    }
    if (hits != 1) {
      throw std::logic_error("region_table: regions do not partition the circle at phi=" +
                             std::to_string(alg.phi));
    }
  }
}

}  // namespace

double validity_bound(AlgorithmId id) {
  switch (id) {
    case AlgorithmId::SemiSyncStatic:
      return kPi / 2.0;
    case AlgorithmId::SemiSyncDynamic:
      return kPi / 4.0;
    case AlgorithmId::AsyncDynamic:
      return kPi / 6.0;
  }
  throw std::logic_error("validity_bound: unknown algorithm");
}

const char* algorithm_tag(AlgorithmId id) {
  switch (id) {
    case AlgorithmId::SemiSyncStatic:
      return "ss";
    case AlgorithmId::SemiSyncDynamic:
      return "sd";
    case AlgorithmId::AsyncDynamic:
      return "ad";
  }
  throw std::logic_error("algorithm_tag: unknown algorithm");
}

std::optional<AlgorithmId> parse_algorithm_tag(const std::string& tag) {
  if (tag == "ss") return AlgorithmId::SemiSyncStatic;
  if (tag == "sd") return AlgorithmId::SemiSyncDynamic;
  if (tag == "ad") return AlgorithmId::AsyncDynamic;
  return std::nullopt;
}

char state_letter(RobotState s) { return static_cast<char>(s); }

std::optional<RobotState> parse_state_letter(char c) {
  switch (c) {
    case 'G':
      return RobotState::Gathered;
    case 'A':
      return RobotState::Approach;
    case 'R':
      return RobotState::Rotate;
    case 'W':
      return RobotState::Wait;
    case 'T':
      return RobotState::Terminated;
    default:
      return std::nullopt;
  }
}

AlgorithmSpec region_table(AlgorithmId id, double phi, bool terminate_variant,
                           bool allow_out_of_validity) {
  if (!(phi >= 0.0 && phi <= kPi)) {
    throw std::invalid_argument("region_table: phi must lie in [0, pi]");
  }
  if (phi >= validity_bound(id) && !allow_out_of_validity) {
    throw std::invalid_argument("region_table: phi is outside the rule's validity range");
  }
  AlgorithmSpec alg;
  alg.id = id;
  alg.phi = phi;
  alg.terminate_variant = terminate_variant;
  switch (id) {
    case AlgorithmId::SemiSyncStatic:
      append_region(alg, 0.0, kPi, false, true, RobotState::Approach, ActionKind::MoveToObserved);
      append_region(alg, kPi, 1.5 * kPi + phi, false, true, RobotState::Rotate,
                    ActionKind::MoveOppositeOnAxis);
      append_region(alg, 1.5 * kPi + phi, kTau, false, true, RobotState::Wait, ActionKind::Stay);
      break;
    case AlgorithmId::SemiSyncDynamic: {
      const double turn = 0.5 * kPi + phi;
      append_region(alg, 0.5 * kPi + phi, 1.5 * kPi - phi, false, true, RobotState::Approach,
                    ActionKind::MoveToObserved);
      append_region(alg, 1.5 * kPi + phi, 0.5 * kPi - phi, false, true, RobotState::Wait,
                    ActionKind::Stay);
      append_region(alg, 0.5 * kPi - phi, 0.5 * kPi + phi, false, true, RobotState::Rotate,
                    ActionKind::RotateBy, turn);
      append_region(alg, 1.5 * kPi - phi, 1.5 * kPi + phi, false, true, RobotState::Rotate,
                    ActionKind::RotateBy, turn);
      break;
    }
    case AlgorithmId::AsyncDynamic: {
      const double turn = 2.0 * kPi / 3.0 + 2.0 * phi;
      append_region(alg, 2.0 * kPi / 3.0 + phi, 1.5 * kPi, true, false, RobotState::Approach,
                    ActionKind::MoveToObserved);
      append_region(alg, 1.5 * kPi, kPi / 3.0 - phi, true, true, RobotState::Wait,
                    ActionKind::Stay);
      append_region(alg, kPi / 3.0 - phi, 2.0 * kPi / 3.0 + phi, false, false, RobotState::Rotate,
                    ActionKind::RotateBy, turn);
      break;
    }
  }
  verify_partition(alg);
  return alg;
}

std::vector<Angle> region_boundaries(const AlgorithmSpec& alg) {
  std::vector<Angle> out;
  for (const Region& region : alg.regions) {
    if (region.arc.empty() || region.arc.is_full()) {
      continue;
    }
    for (Angle a : {region.arc.lower(), region.arc.upper()}) {
      bool seen = false;
      for (Angle b : out) {
        if (std::abs(normalize_signed_angle(a.value() - b.value())) <= kAngleEps) {
          seen = true;
          break;
        }
      }
      if (!seen) {
        out.push_back(a);
      }
    }
  }
  return out;
}

Decision decide(const AlgorithmSpec& alg, LocalPoint observed) {
  Decision d;
  if (observed.x == 0.0 && observed.y == 0.0) {
    d.state = alg.terminate_variant ? RobotState::Terminated : RobotState::Gathered;
    d.action = ActionKind::Stay;
    d.target = LocalPoint{0.0, 0.0};
    return d;
  }
  const Angle direction = argum(observed);
  for (const Region& region : alg.regions) {
    if (!region.arc.contains(direction)) {
      continue;
    }
    d.state = region.state;
    d.action = region.action;
    d.rotate_angle = region.rotate_angle;
    switch (region.action) {
      case ActionKind::MoveToObserved:
        d.target = observed;
        break;
      case ActionKind::MoveOppositeOnAxis:
        d.target = LocalPoint{-norm(observed), 0.0};
        break;
      case ActionKind::RotateBy:
        d.target = rotate(observed, region.rotate_angle);
        break;
      case ActionKind::Stay:
        d.target = LocalPoint{0.0, 0.0};
        break;
    }
    return d;
  }
  throw std::logic_error("decide: observation direction missed every region");
}

std::vector<RobotState> sweep_states(const AlgorithmSpec& alg, Angle center, double halfwidth) {
  if (halfwidth < 0.0) {
    throw std::invalid_argument("sweep_states: negative halfwidth");
  }
  const Angle start(center.value() - halfwidth);
  const double span = std::min(2.0 * halfwidth, kTau);
  std::vector<RobotState> states;
  for (const Region& region : alg.regions) {
    if (!region_meets_sweep(region, start, span)) {
      continue;
    }
    if (std::find(states.begin(), states.end(), region.state) == states.end()) {
      states.push_back(region.state);
    }
  }
  return states;
}

std::optional<StatePair> stable_state(const AlgorithmSpec& alg, const Configuration& config,
                                      double bound) {
  if (!(bound >= 0.0 && bound <= kPi)) {
    throw std::invalid_argument("stable_state: bound must lie in [0, pi]");
  }
  if (config.r0 == config.r1) {
    const RobotState s = decide(alg, LocalPoint{0.0, 0.0}).state;
    return StatePair{s, s};
  }
  StatePair pair;
  for (int i = 0; i < 2; ++i) {
    const GlobalPoint delta = config.robot(1 - i) - config.robot(i);
    // Observed direction is argum(delta) - deviation, so the sweep over
    // admissible deviations is centered on argum(delta).
    const std::vector<RobotState> states = sweep_states(alg, argum(delta), bound);
    if (states.size() != 1) {
      return std::nullopt;
    }
    (i == 0 ? pair.first : pair.second) = states.front();
  }
  return pair;
}

}  // namespace gathersim
