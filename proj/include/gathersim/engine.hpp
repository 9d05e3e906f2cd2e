// Execution engine for two-robot look-compute-move runs.  The engine owns
// the clock, positions, and cycle state; an adversary policy supplies every
// free choice (activations, compass deviations, unit scales, per-tick
// progress, and asynchronous cycle closes) through callbacks and the engine
// validates each choice against the model contracts.
//
// Callback order per tick, which scripted and replaying policies rely on:
//   choose_activations once, then per newly activated robot in ascending
//   index: choose_deviation (dynamic compasses only) then choose_scale; then
//   choose_progress for every robot with an open cycle in ascending index;
//   then (asynchronous only) choose_close for every still-open cycle in
//   ascending index.  Static compasses trigger one choose_deviation per robot
//   before tick 0.
#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gathersim/algorithms.hpp"
#include "gathersim/frames.hpp"

namespace gathersim {

enum class SchedulerMode { SemiSynchronous, Asynchronous };

const char* scheduler_tag(SchedulerMode mode);
std::optional<SchedulerMode> parse_scheduler_tag(const std::string& tag);

struct EngineConfig {
  SchedulerMode mode = SchedulerMode::SemiSynchronous;
  double delta = 0.01;     // minimum displacement per cycle unless the target is nearer
  int fairness_bound = 4;  // each idle robot must be activated within this many ticks
  int max_cycle_ticks = 8; // asynchronous cycles must close within this many ticks
  long horizon = 100000;   // last tick the run may reach
  double scale_min = 0.5;  // admissible local unit lengths
  double scale_max = 2.0;
};

// A choice that violates the model contracts (fairness, displacement floor,
// cycle length, admissible deviation or scale, malformed activation sets).
struct EngineContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class EventKind { Activate, Look, Progress, CycleEnd, Terminate };

const char* event_kind_tag(EventKind kind);
std::optional<EventKind> parse_event_kind_tag(const std::string& tag);

// One entry of the totally ordered event log.  Which fields carry meaning
// depends on the kind: Activate has deviation and scale; Look has the local
// observation, decided state, and global target; Progress has the distance
// moved this tick and the position reached; CycleEnd has the cycle's total
// displacement; Terminate has no payload.
struct TraceEvent {
  long tick = 0;
  int robot = 0;
  EventKind kind = EventKind::Activate;
  double deviation = 0.0;
  double scale = 1.0;
  LocalPoint observed;
  RobotState state = RobotState::Wait;
  GlobalPoint target;
  double moved = 0.0;
  GlobalPoint position;
  double displaced = 0.0;
};

enum class RunStatus { Gathered, Stuck, HorizonReached };

const char* run_status_tag(RunStatus status);
std::optional<RunStatus> parse_run_status_tag(const std::string& tag);

// Everything needed to reproduce a run up to the adversary's choices.
struct RunSetup {
  AlgorithmId algorithm = AlgorithmId::SemiSyncStatic;
  double phi = 0.0;
  bool terminate_variant = false;
  bool allow_out_of_validity = false;
  CompassSpec compass;
  EngineConfig engine;
  Configuration initial;
  unsigned long long seed = 0;  // informational: seed the adversary ran with
  std::array<double, 2> static_deviations = {0.0, 0.0};  // filled for static compasses
};

struct Execution {
  RunSetup setup;
  std::vector<Configuration> configs;            // configs[t] is the snapshot at tick t
  std::vector<std::array<bool, 2>> settled;      // settled[t][i]: no pending displacement at t
  std::vector<TraceEvent> events;
  RunStatus status = RunStatus::HorizonReached;
  long end_tick = 0;                             // tick of the last recorded configuration
  std::optional<long> gathered_tick;
};

// Read-only view of one open look-compute-move cycle.
struct CycleView {
  int robot = 0;
  long start_tick = 0;
  LocalFrame frame;
  LocalPoint observed;
  RobotState state = RobotState::Wait;
  GlobalPoint start;
  GlobalPoint target;
  double full_distance = 0.0;
  double displaced = 0.0;
  double remaining() const { return full_distance - displaced; }
};

struct RobotView {
  GlobalPoint position;
  bool terminated = false;
  bool idle = true;
  long idle_since = 0;        // instant at which the robot last became idle
  long last_activation = -1;  // -1 before the first activation
  std::optional<CycleView> cycle;
};

// Snapshot handed to every policy callback; positions are those of the
// current instant even while cycles advance during the tick.
struct EngineView {
  long tick = 0;
  Configuration config;
  std::array<RobotView, 2> robots;
  const AlgorithmSpec* algorithm = nullptr;
  const CompassSpec* compass = nullptr;
  const EngineConfig* engine = nullptr;
  std::array<double, 2> static_deviations = {0.0, 0.0};
};

// Supplies the adversary's choices.  Implementations must be deterministic
// functions of their construction parameters (seed, script) and the views
// they are shown.
class AdversaryPolicy {
 public:
  virtual ~AdversaryPolicy() = default;

  // Robots to activate at this instant, drawn from the idle non-terminated
  // ones.  Semi-synchronous ticks need a nonempty set unless the run is
  // stuck; asynchronous ticks may activate nobody.
  virtual std::vector<int> choose_activations(const EngineView& view) = 0;

  // Compass deviation for an activation (dynamic mode) or for the whole run
  // (static mode, asked once per robot before tick 0).  Must normalize into
  // [-bound, bound].
  virtual double choose_deviation(int robot, const EngineView& view) = 0;

  // Local unit length for an activation, in [scale_min, scale_max].
  virtual double choose_scale(int robot, const EngineView& view) = 0;

  // Semi-synchronous: the cycle's total displacement, in [min(delta, full),
  // full].  Asynchronous: the displacement for this tick, in [0, remaining].
  // Values within 1e-12 of the upper end snap onto the target exactly.
  virtual double choose_progress(const CycleView& cycle, const EngineView& view) = 0;

  // Asynchronous only: close the cycle at the end of this tick.  Legal once
  // the displacement floor is met or the target is reached; mandatory before
  // the cycle's age exceeds max_cycle_ticks.
  virtual bool choose_close(const CycleView& cycle, const EngineView& view) = 0;
};

// Step-by-step driver.  step() processes one tick; it returns false once the
// run has ended (gathered, stuck, or horizon reached), after which the
// execution can be taken.
class Engine {
 public:
  Engine(const AlgorithmSpec& alg, const CompassSpec& compass, const EngineConfig& cfg,
         const Configuration& initial, AdversaryPolicy& policy, unsigned long long seed_info = 0);

  bool step();
  bool finished() const { return finished_; }
  long tick() const { return tick_; }
  const Execution& execution() const { return execution_; }
  Execution take() && { return std::move(execution_); }

  EngineView view() const;

 private:
  struct OpenCycle {
    long start_tick = 0;
    LocalFrame frame;
    LocalPoint observed;
    RobotState state = RobotState::Wait;
    GlobalPoint start;
    GlobalPoint target;
    double full_distance = 0.0;
    double displaced = 0.0;
  };

  void activate(int robot);
  void advance_cycle(int robot, double amount);
  void close_cycle(int robot);
  void record_settled();
  bool certified_gathered() const;
  bool stuck_now() const;
  bool forced_wait(int robot) const;
  void check_fairness() const;
  void end(RunStatus status);
  CycleView cycle_view(int robot) const;

  AlgorithmSpec alg_;
  CompassSpec compass_;
  EngineConfig cfg_;
  AdversaryPolicy& policy_;
  Execution execution_;
  long tick_ = 0;
  bool finished_ = false;
  std::array<GlobalPoint, 2> pos_;
  std::array<bool, 2> terminated_ = {false, false};
  std::array<std::optional<OpenCycle>, 2> cycle_;
  std::array<long, 2> idle_since_ = {0, 0};
  std::array<long, 2> last_activation_ = {-1, -1};
};

// Runs to completion.
Execution run(const AlgorithmSpec& alg, const CompassSpec& compass, const EngineConfig& cfg,
              const Configuration& initial, AdversaryPolicy& policy,
              unsigned long long seed_info = 0);

// Whether the robot had no pending displacement at the given tick.
bool is_settled(const Execution& ex, int robot, long tick);

struct GatheringStatus {
  enum class Kind { Gathered, PseudoGathered, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::optional<long> gathered_tick;
  // Ticks where the robots were co-located but some robot still had pending
  // displacement, so co-location could not be certified.
  std::vector<long> pseudo_gathered_ticks;
};

GatheringStatus gathering_status(const Execution& ex);

}  // namespace gathersim
