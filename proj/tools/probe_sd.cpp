// Exploratory probe (not part of the build): drives the engine with a greedy
// avoid-approach adversary against the rotate-based dynamic-compass rule to
// measure how the inter-robot bearing and distance evolve at various bounds.
#include <cstdio>
#include <cmath>
#include <vector>
#include <string>

#include "gathersim/engine.hpp"

using namespace gathersim;

namespace {

// Greedy adversary: activates both robots every tick; picks each robot's
// deviation to produce, in preference order, Wait > Rotate > Approach; full
// progress on rotates, delta-floor progress on forced approaches.
class GreedyAvoidPolicy final : public AdversaryPolicy {
 public:
  std::vector<int> choose_activations(const EngineView& view) override {
    std::vector<int> out;
    for (int i = 0; i < 2; ++i) {
      if (!view.robots[i].terminated) out.push_back(i);
    }
    return out;
  }

  double choose_deviation(int robot, const EngineView& view) override {
    const double phi = view.compass->bound;
    const GlobalPoint delta =
        view.config.robot(1 - robot) - view.config.robot(robot);
    if (delta.x == 0.0 && delta.y == 0.0) return 0.0;
    const double gamma = argum(delta).value();
    const AlgorithmSpec& alg = *view.algorithm;
    // Candidate deviations: extremes, center, and values that place the local
    // direction exactly on each region boundary.
    std::vector<double> candidates = {0.0, phi, -phi, phi / 2, -phi / 2};
    for (const Angle& b : region_boundaries(alg)) {
      for (double nudge : {0.0, 1e-9, -1e-9}) {
        const double dev =
            normalize_signed_angle(gamma - (b.value() + nudge));
        if (std::abs(dev) <= phi) candidates.push_back(dev);
      }
    }
    double best = 0.0;
    int best_rank = -1;
    for (double dev : candidates) {
      if (std::abs(dev) > phi) continue;
      const LocalFrame frame{view.config.robot(robot), dev, 1.0};
      const Decision d = decide(alg, to_local(frame, view.config.robot(1 - robot)));
      int rank = 0;
      switch (d.state) {
        case RobotState::Wait: rank = 3; break;
        case RobotState::Rotate: rank = 2; break;
        case RobotState::Approach: rank = 1; break;
        default: rank = 0; break;
      }
      if (rank > best_rank) {
        best_rank = rank;
        best = dev;
      }
    }
    return best;
  }

  double choose_scale(int, const EngineView&) override { return 1.0; }

  double choose_progress(const CycleView& cycle, const EngineView& view) override {
    if (cycle.state == RobotState::Approach) {
      return std::min(view.engine->delta, cycle.full_distance);
    }
    if (cycle.state != RobotState::Rotate) {
      return cycle.full_distance;
    }
    // Rotate: pick the largest progress fraction whose resulting bearing
    // keeps the rotate window reachable (stays off the no-rotate gap around
    // alpha = 0 mod pi).
    const double phi = view.compass->bound;
    const int self = cycle.robot;
    const GlobalPoint peer = view.config.robot(1 - self);
    const GlobalPoint delta0 = peer - cycle.start;
    const double omega = kPi / 2 + phi;
    const double lo = kPi / 2 - 2 * phi;  // rotate reachable iff alpha mod pi in (lo, hi]
    const double hi = kPi / 2 + 2 * phi;
    const double pad = 0.01;
    const double floor_amount = std::min(view.engine->delta, cycle.full_distance);
    const double floor_frac = floor_amount / cycle.full_distance;
    // Smallest admissible progress first: tiny rotates barely grow the
    // distance, larger fractions hop the no-rotate gap when the drift nears it.
    for (double frac : {floor_frac, 0.25, 0.5, 0.75, 1.0}) {
      const double s = frac;
      // alpha' = alpha + arg(1 - s*e^{i*omega}); fold mod pi and test the window
      const double re = 1.0 - s * std::cos(omega);
      const double im = -s * std::sin(omega);
      const double shift = std::atan2(im, re);
      const double a0 = std::atan2(delta0.y, delta0.x);
      double folded = std::fmod(a0 + shift, kPi);
      if (folded < 0.0) folded += kPi;
      if (folded > lo + pad && folded < hi - pad) {
        return frac * cycle.full_distance;
      }
    }
    return cycle.full_distance;
  }

  bool choose_close(const CycleView&, const EngineView&) override { return true; }
};

}  // namespace

int main(int argc, char** argv) {
  double phi = 0.24 * kPi;
  double alpha0 = 0.9 * kPi;
  double dist0 = 1.0;
  long horizon = 2000;
  if (argc > 1) phi = std::stod(argv[1]) * kPi;
  if (argc > 2) alpha0 = std::stod(argv[2]) * kPi;
  if (argc > 3) dist0 = std::stod(argv[3]);
  if (argc > 4) horizon = std::stol(argv[4]);

  const AlgorithmSpec alg = region_table(AlgorithmId::SemiSyncDynamic, phi);
  const CompassSpec compass{CompassMode::Dynamic, phi};
  EngineConfig cfg;
  cfg.mode = SchedulerMode::SemiSynchronous;
  cfg.horizon = horizon;
  const Configuration initial{GlobalPoint{0.0, 0.0},
                              GlobalPoint{dist0 * std::cos(alpha0),
                                          dist0 * std::sin(alpha0)}};

  GreedyAvoidPolicy policy;
  Execution ex = run(alg, compass, cfg, initial, policy, 1);

  std::printf("phi/pi=%.4f alpha0/pi=%.4f status=%s end_tick=%ld\n", phi / kPi,
              alpha0 / kPi, run_status_tag(ex.status),
              static_cast<long>(ex.end_tick));

  double prev_alpha = 0.0;
  bool have_prev = false;
  double unwrapped = 0.0;
  double min_unwrapped = 1e9;
  int rotates = 0;
  for (std::size_t t = 0; t < ex.configs.size(); ++t) {
    const GlobalPoint d = ex.configs[t].r1 - ex.configs[t].r0;
    const double len = std::hypot(d.x, d.y);
    if (len == 0.0) {
      std::printf("t=%zu co-located\n", t);
      break;
    }
    const double a = argum(d).value();
    if (!have_prev) {
      unwrapped = normalize_signed_angle(a);
      have_prev = true;
    } else {
      const double change = normalize_signed_angle(a - prev_alpha);
      unwrapped += change;
      if (change > 1e-10) {
        std::printf("t=%zu ALPHA INCREASE change=%.3e\n", t, change);
      }
      if (change < -1e-12) ++rotates;
    }
    prev_alpha = a;
    if (unwrapped < min_unwrapped) min_unwrapped = unwrapped;
    if (t < 40 || t % 100 == 0) {
      std::printf("t=%-5zu alpha/pi=%+.4f unwrapped/pi=%+.4f |d|=%.6e\n", t,
                  normalize_signed_angle(a) / kPi, unwrapped / kPi, len);
    }
  }
  std::printf("rotate-like steps=%d unwrapped_final/pi=%.4f min/pi=%.4f\n",
              rotates, unwrapped / kPi, min_unwrapped / kPi);
  const GatheringStatus gs = gathering_status(ex);
  std::printf("gathered=%s\n",
              gs.kind == GatheringStatus::Kind::Gathered ? "yes" : "no");
  return 0;
}
