#include "gathersim/engine.hpp"

#include <algorithm>
#include <cmath>

namespace gathersim {

namespace {

// Progress choices within this distance of an endpoint snap onto it, so
// reaching the target is an exact assignment rather than an accumulation.
constexpr double kProgressSnap = 1e-12;

std::string robot_label(int robot) { return "robot " + std::to_string(robot); }

}  // namespace

const char* scheduler_tag(SchedulerMode mode) {
  return mode == SchedulerMode::SemiSynchronous ? "semisync" : "async";
}

std::optional<SchedulerMode> parse_scheduler_tag(const std::string& tag) {
  if (tag == "semisync") return SchedulerMode::SemiSynchronous;
  if (tag == "async") return SchedulerMode::Asynchronous;
  return std::nullopt;
}

const char* event_kind_tag(EventKind kind) {
  switch (kind) {
    case EventKind::Activate:
      return "activate";
    case EventKind::Look:
      return "look";
    case EventKind::Progress:
      return "progress";
    case EventKind::CycleEnd:
      return "cycle_end";
    case EventKind::Terminate:
      return "terminate";
  }
  return "?";
}

std::optional<EventKind> parse_event_kind_tag(const std::string& tag) {
  if (tag == "activate") return EventKind::Activate;
  if (tag == "look") return EventKind::Look;
  if (tag == "progress") return EventKind::Progress;
  if (tag == "cycle_end") return EventKind::CycleEnd;
  if (tag == "terminate") return EventKind::Terminate;
  return std::nullopt;
}

const char* run_status_tag(RunStatus status) {
  switch (status) {
    case RunStatus::Gathered:
      return "gathered";
    case RunStatus::Stuck:
      return "stuck";
    case RunStatus::HorizonReached:
      return "horizon";
  }
  return "?";
}

std::optional<RunStatus> parse_run_status_tag(const std::string& tag) {
  if (tag == "gathered") return RunStatus::Gathered;
  if (tag == "stuck") return RunStatus::Stuck;
  if (tag == "horizon") return RunStatus::HorizonReached;
  return std::nullopt;
}

Engine::Engine(const AlgorithmSpec& alg, const CompassSpec& compass, const EngineConfig& cfg,
               const Configuration& initial, AdversaryPolicy& policy, unsigned long long seed_info)
    : alg_(alg), compass_(compass), cfg_(cfg), policy_(policy) {
  if (!(cfg_.delta > 0.0)) {
    throw std::invalid_argument("engine: delta must be positive");
  }
  if (cfg_.fairness_bound < 1) {
    throw std::invalid_argument("engine: fairness bound must be at least 1");
  }
  if (cfg_.max_cycle_ticks < 1) {
    throw std::invalid_argument("engine: max_cycle_ticks must be at least 1");
  }
  if (cfg_.horizon < 0) {
    throw std::invalid_argument("engine: horizon must be nonnegative");
  }
  if (!(cfg_.scale_min > 0.0 && cfg_.scale_min <= cfg_.scale_max)) {
    throw std::invalid_argument("engine: scale range must satisfy 0 < min <= max");
  }
  deviation_range(compass_);  // validates the bound

  execution_.setup.algorithm = alg_.id;
  execution_.setup.phi = alg_.phi;
  execution_.setup.terminate_variant = alg_.terminate_variant;
  execution_.setup.allow_out_of_validity = alg_.phi >= validity_bound(alg_.id);
  execution_.setup.compass = compass_;
  execution_.setup.engine = cfg_;
  execution_.setup.initial = initial;
  execution_.setup.seed = seed_info;

  pos_ = {initial.r0, initial.r1};
  execution_.configs.push_back(initial);

  if (compass_.mode == CompassMode::Static) {
    for (int i = 0; i < 2; ++i) {
      const double dev = normalize_signed_angle(policy_.choose_deviation(i, view()));
      if (std::abs(dev) > compass_.bound) {
        throw EngineContractError("static deviation for " + robot_label(i) +
                                  " exceeds the compass bound");
      }
      execution_.setup.static_deviations[i] = dev;
    }
  }
}

EngineView Engine::view() const {
  EngineView v;
  v.tick = tick_;
  v.config = {pos_[0], pos_[1]};
  for (int i = 0; i < 2; ++i) {
    RobotView& r = v.robots[i];
    r.position = pos_[i];
    r.terminated = terminated_[i];
    r.idle = !terminated_[i] && !cycle_[i].has_value();
    r.idle_since = idle_since_[i];
    r.last_activation = last_activation_[i];
    if (cycle_[i]) {
      r.cycle = cycle_view(i);
    }
  }
  v.algorithm = &alg_;
  v.compass = &compass_;
  v.engine = &cfg_;
  v.static_deviations = execution_.setup.static_deviations;
  return v;
}

CycleView Engine::cycle_view(int robot) const {
  const OpenCycle& c = *cycle_[robot];
  CycleView cv;
  cv.robot = robot;
  cv.start_tick = c.start_tick;
  cv.frame = c.frame;
  cv.observed = c.observed;
  cv.state = c.state;
  cv.start = c.start;
  cv.target = c.target;
  cv.full_distance = c.full_distance;
  cv.displaced = c.displaced;
  return cv;
}

bool Engine::certified_gathered() const {
  if (pos_[0] != pos_[1]) {
    return false;
  }
  for (int i = 0; i < 2; ++i) {
    if (cycle_[i] && cycle_[i]->displaced < cycle_[i]->full_distance) {
      return false;
    }
  }
  return true;
}

bool Engine::forced_wait(int robot) const {
  const GlobalPoint delta = pos_[1 - robot] - pos_[robot];
  if (delta == GlobalPoint{0.0, 0.0}) {
    return false;
  }
  std::vector<RobotState> states;
  if (compass_.mode == CompassMode::Static) {
    const double seen =
        argum(delta).value() - execution_.setup.static_deviations[robot];
    states = sweep_states(alg_, Angle(seen), 0.0);
  } else {
    states = sweep_states(alg_, argum(delta), compass_.bound);
  }
  return states.size() == 1 && states[0] == RobotState::Wait;
}

bool Engine::stuck_now() const {
  for (int i = 0; i < 2; ++i) {
    if (terminated_[i]) {
      continue;
    }
    if (cycle_[i].has_value() || !forced_wait(i)) {
      return false;
    }
  }
  return true;
}

void Engine::record_settled() {
  std::array<bool, 2> s;
  for (int i = 0; i < 2; ++i) {
    s[i] = !cycle_[i] || cycle_[i]->displaced >= cycle_[i]->full_distance;
  }
  execution_.settled.push_back(s);
}

void Engine::end(RunStatus status) {
  execution_.status = status;
  execution_.end_tick = tick_;
  while (execution_.settled.size() < execution_.configs.size()) {
    record_settled();
  }
  finished_ = true;
}

void Engine::activate(int robot) {
  last_activation_[robot] = tick_;
  double deviation;
  if (compass_.mode == CompassMode::Static) {
    deviation = execution_.setup.static_deviations[robot];
  } else {
    deviation = normalize_signed_angle(policy_.choose_deviation(robot, view()));
    if (std::abs(deviation) > compass_.bound) {
      throw EngineContractError("deviation for " + robot_label(robot) +
                                " exceeds the compass bound at tick " + std::to_string(tick_));
    }
  }
  const double scale = policy_.choose_scale(robot, view());
  if (!(scale >= cfg_.scale_min && scale <= cfg_.scale_max)) {
    throw EngineContractError("scale for " + robot_label(robot) +
                              " outside the admissible range at tick " + std::to_string(tick_));
  }

  const LocalFrame frame{pos_[robot], deviation, scale};
  TraceEvent activate_ev;
  activate_ev.tick = tick_;
  activate_ev.robot = robot;
  activate_ev.kind = EventKind::Activate;
  activate_ev.deviation = deviation;
  activate_ev.scale = scale;
  execution_.events.push_back(activate_ev);

  const GlobalPoint peer = pos_[1 - robot];
  if (!std::isfinite(peer.x - pos_[robot].x) || !std::isfinite(peer.y - pos_[robot].y)) {
    throw EngineContractError("positions left the finite range at tick " +
                              std::to_string(tick_) +
                              "; the adversary grew the configuration past double precision");
  }
  const LocalPoint observed = to_local(frame, peer);
  const Decision d = decide(alg_, observed);

  // The global move target in closed form: the decision's local target mapped
  // back through the frame, but computed directly from global quantities so
  // the result is independent of the private scale by construction.
  GlobalPoint target = pos_[robot];
  switch (d.action) {
    case ActionKind::MoveToObserved:
      target = peer;
      break;
    case ActionKind::MoveOppositeOnAxis: {
      const double len = norm(peer - pos_[robot]);
      target = pos_[robot] +
               GlobalPoint{-len * std::cos(deviation), -len * std::sin(deviation)};
      break;
    }
    case ActionKind::RotateBy:
      target = pos_[robot] + rotate(peer - pos_[robot], d.rotate_angle);
      break;
    case ActionKind::Stay:
      break;
  }

  TraceEvent look_ev;
  look_ev.tick = tick_;
  look_ev.robot = robot;
  look_ev.kind = EventKind::Look;
  look_ev.observed = observed;
  look_ev.state = d.state;
  look_ev.target = target;
  execution_.events.push_back(look_ev);

  if (d.state == RobotState::Terminated) {
    terminated_[robot] = true;
    idle_since_[robot] = tick_ + 1;
    TraceEvent term_ev;
    term_ev.tick = tick_;
    term_ev.robot = robot;
    term_ev.kind = EventKind::Terminate;
    execution_.events.push_back(term_ev);
    return;
  }

  OpenCycle c;
  c.start_tick = tick_;
  c.frame = frame;
  c.observed = observed;
  c.state = d.state;
  c.start = pos_[robot];
  c.target = target;
  c.full_distance = norm(target - pos_[robot]);
  cycle_[robot] = c;
  if (c.full_distance == 0.0) {
    // Wait and absorbed cycles involve no motion and complete instantly.
    close_cycle(robot);
  }
}

void Engine::advance_cycle(int robot, double amount) {
  OpenCycle& c = *cycle_[robot];
  const double applied = std::min(amount, c.full_distance - c.displaced);
  if (applied >= c.full_distance - c.displaced - kProgressSnap) {
    c.displaced = c.full_distance;
    pos_[robot] = c.target;
  } else {
    c.displaced += applied;
    const double f = c.displaced / c.full_distance;
    pos_[robot] = GlobalPoint{c.start.x + f * (c.target.x - c.start.x),
                              c.start.y + f * (c.target.y - c.start.y)};
  }
  TraceEvent ev;
  ev.tick = tick_;
  ev.robot = robot;
  ev.kind = EventKind::Progress;
  ev.moved = applied;
  ev.position = pos_[robot];
  execution_.events.push_back(ev);
}

void Engine::close_cycle(int robot) {
  const OpenCycle& c = *cycle_[robot];
  TraceEvent ev;
  ev.tick = tick_;
  ev.robot = robot;
  ev.kind = EventKind::CycleEnd;
  ev.displaced = c.displaced;
  ev.position = pos_[robot];
  execution_.events.push_back(ev);
  idle_since_[robot] = tick_ + 1;
  cycle_[robot].reset();
}

void Engine::check_fairness() const {
  for (int i = 0; i < 2; ++i) {
    if (terminated_[i] || cycle_[i].has_value()) {
      continue;
    }
    if (tick_ + 1 - idle_since_[i] >= cfg_.fairness_bound) {
      throw EngineContractError(robot_label(i) + " idle since tick " +
                                std::to_string(idle_since_[i]) +
                                " was not activated within the fairness bound");
    }
  }
}

bool Engine::step() {
  if (finished_) {
    return false;
  }
  if (certified_gathered()) {
    execution_.gathered_tick = tick_;
    end(RunStatus::Gathered);
    return false;
  }
  if (tick_ >= cfg_.horizon) {
    end(RunStatus::HorizonReached);
    return false;
  }

  std::vector<int> acts = policy_.choose_activations(view());
  std::sort(acts.begin(), acts.end());
  if (std::adjacent_find(acts.begin(), acts.end()) != acts.end()) {
    throw EngineContractError("duplicate robot in the activation set at tick " +
                              std::to_string(tick_));
  }
  for (int robot : acts) {
    if (robot < 0 || robot > 1) {
      throw EngineContractError("activation names an unknown robot");
    }
    if (terminated_[robot]) {
      throw EngineContractError("activating terminated " + robot_label(robot) + " at tick " +
                                std::to_string(tick_));
    }
    if (cycle_[robot].has_value()) {
      throw EngineContractError("activating " + robot_label(robot) +
                                " while its cycle is open at tick " + std::to_string(tick_));
    }
  }
  if (acts.empty()) {
    if (stuck_now()) {
      end(RunStatus::Stuck);
      return false;
    }
    if (cfg_.mode == SchedulerMode::SemiSynchronous) {
      throw EngineContractError("semi-synchronous tick " + std::to_string(tick_) +
                                " activated no robot");
    }
  }

  for (int robot : acts) {
    activate(robot);
  }
  record_settled();

  // All movement choices see the positions of the current instant.
  const EngineView frozen = view();

  if (cfg_.mode == SchedulerMode::SemiSynchronous) {
    for (int i = 0; i < 2; ++i) {
      if (!cycle_[i]) {
        continue;  // not activated, instantly closed, or terminated
      }
      const OpenCycle& c = *cycle_[i];
      const double floor = std::min(cfg_.delta, c.full_distance);
      const double p = policy_.choose_progress(cycle_view(i), frozen);
      if (p < floor - kProgressSnap) {
        throw EngineContractError("progress for " + robot_label(i) +
                                  " below the displacement floor at tick " +
                                  std::to_string(tick_));
      }
      if (p > c.full_distance + kProgressSnap) {
        throw EngineContractError("progress for " + robot_label(i) +
                                  " overshoots the target at tick " + std::to_string(tick_));
      }
      advance_cycle(i, p);
      close_cycle(i);
    }
  } else {
    for (int i = 0; i < 2; ++i) {
      if (!cycle_[i]) {
        continue;
      }
      const double remaining = cycle_[i]->full_distance - cycle_[i]->displaced;
      const double p = policy_.choose_progress(cycle_view(i), frozen);
      if (p < -kProgressSnap) {
        throw EngineContractError("negative progress for " + robot_label(i) + " at tick " +
                                  std::to_string(tick_));
      }
      if (p > remaining + kProgressSnap) {
        throw EngineContractError("progress for " + robot_label(i) +
                                  " overshoots the target at tick " + std::to_string(tick_));
      }
      advance_cycle(i, std::max(p, 0.0));
    }
    for (int i = 0; i < 2; ++i) {
      if (!cycle_[i]) {
        continue;
      }
      const OpenCycle& c = *cycle_[i];
      if (policy_.choose_close(cycle_view(i), frozen)) {
        const double floor = std::min(cfg_.delta, c.full_distance);
        if (c.displaced + kProgressSnap < floor) {
          throw EngineContractError("cycle of " + robot_label(i) +
                                    " closed under the displacement floor at tick " +
                                    std::to_string(tick_));
        }
        close_cycle(i);
      } else if (tick_ + 1 - c.start_tick >= cfg_.max_cycle_ticks) {
        throw EngineContractError("cycle of " + robot_label(i) + " started at tick " +
                                  std::to_string(c.start_tick) +
                                  " stayed open past max_cycle_ticks");
      }
    }
  }

  check_fairness();
  execution_.configs.push_back({pos_[0], pos_[1]});
  ++tick_;
  return true;
}

Execution run(const AlgorithmSpec& alg, const CompassSpec& compass, const EngineConfig& cfg,
              const Configuration& initial, AdversaryPolicy& policy,
              unsigned long long seed_info) {
  Engine engine(alg, compass, cfg, initial, policy, seed_info);
  while (engine.step()) {
  }
  return std::move(engine).take();
}

bool is_settled(const Execution& ex, int robot, long tick) {
  return ex.settled.at(static_cast<size_t>(tick))[static_cast<size_t>(robot)];
}

GatheringStatus gathering_status(const Execution& ex) {
  GatheringStatus g;
  for (size_t t = 0; t < ex.configs.size(); ++t) {
    if (ex.configs[t].r0 == ex.configs[t].r1 &&
        !(ex.settled[t][0] && ex.settled[t][1])) {
      g.pseudo_gathered_ticks.push_back(static_cast<long>(t));
    }
  }
  if (ex.status == RunStatus::Gathered) {
    g.kind = GatheringStatus::Kind::Gathered;
    g.gathered_tick = ex.gathered_tick;
  } else if (!g.pseudo_gathered_ticks.empty()) {
    g.kind = GatheringStatus::Kind::PseudoGathered;
  } else {
    g.kind = GatheringStatus::Kind::Inconclusive;
  }
  return g;
}

}  // namespace gathersim
