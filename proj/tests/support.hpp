// Shared helpers for engine-facing tests: a hook-based adversary policy and
// small accessors over recorded executions.
#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "gathersim/engine.hpp"

namespace gathersim::testing {

// Configurable policy: defaults activate every idle robot, use deviation 0,
// scale 1, full progress, and close as soon as legal.
struct TestPolicy : AdversaryPolicy {
  std::function<std::vector<int>(const EngineView&)> activations;
  std::function<double(int, const EngineView&)> deviation;
  std::function<double(int, const EngineView&)> scale;
  std::function<double(const CycleView&, const EngineView&)> progress;
  std::function<bool(const CycleView&, const EngineView&)> close;

  std::vector<int> choose_activations(const EngineView& view) override {
    if (activations) return activations(view);
    std::vector<int> out;
    for (int i = 0; i < 2; ++i) {
      if (!view.robots[i].terminated && view.robots[i].idle) out.push_back(i);
    }
    return out;
  }
  double choose_deviation(int robot, const EngineView& view) override {
    return deviation ? deviation(robot, view) : 0.0;
  }
  double choose_scale(int robot, const EngineView& view) override {
    return scale ? scale(robot, view) : 1.0;
  }
  double choose_progress(const CycleView& cycle, const EngineView& view) override {
    return progress ? progress(cycle, view) : cycle.remaining();
  }
  bool choose_close(const CycleView& cycle, const EngineView& view) override {
    return close ? close(cycle, view) : true;
  }
};

inline std::vector<std::pair<EventKind, int>> event_outline(const Execution& ex) {
  std::vector<std::pair<EventKind, int>> out;
  out.reserve(ex.events.size());
  for (const TraceEvent& ev : ex.events) out.emplace_back(ev.kind, ev.robot);
  return out;
}

}  // namespace gathersim::testing
